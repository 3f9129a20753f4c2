//! Element serialization: a JSON document and a two-line text form.
//!
//! JSON:
//! `{"n": 3, "basis": "T", "terms": [{"perm": [2,1,3], "coeff": [[-2, "1"], [0, "-1"]]}]}`.
//! With `"basis": "Ttilde"` the coefficients are coordinates on `T~_w`.
//! Exponents are in `v`, ascending.
//!
//! Text: a header line `n=<n>` followed by the element in the parser grammar.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::coeff::LaurentPoly;
use crate::error::{Error, Result};
use crate::hecke::HeckeElement;
use crate::perm::Permutation;
use crate::text::parse_element;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisTag {
    T,
    Ttilde,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json(BasisTag),
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub n: usize,
    pub basis: BasisTag,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub perm: Vec<usize>,
    pub coeff: Vec<(i32, String)>,
}

pub fn coeff_to_json(c: &LaurentPoly) -> Vec<(i32, String)> {
    c.terms().iter().map(|(e, x)| (*e, x.to_string())).collect()
}

pub fn coeff_from_json(pairs: &[(i32, String)], at: &str) -> Result<LaurentPoly> {
    let terms = pairs
        .iter()
        .enumerate()
        .map(|(k, (e, s))| {
            s.parse::<BigInt>()
                .map(|c| (*e, c))
                .map_err(|_| Error::Malformed(format!("{at}.coeff[{k}]: {s:?} is not an integer")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentPoly::from_terms(terms))
}

impl ElementJson {
    pub fn from_element(h: &HeckeElement, tilde: bool) -> Self {
        let h = if tilde { h.to_normalized() } else { h.clone() };
        ElementJson {
            n: h.degree(),
            basis: if tilde { BasisTag::Ttilde } else { BasisTag::T },
            terms: h.terms().map(|(w, c)| TermJson { perm: w.images(), coeff: coeff_to_json(c) }).collect(),
        }
    }

    pub fn to_element(&self) -> Result<HeckeElement> {
        let terms = self
            .terms
            .iter()
            .enumerate()
            .map(|(k, t)| {
                let at = format!("terms[{k}]");
                let w = Permutation::new(t.perm.clone()).map_err(|e| Error::Malformed(format!("{at}.perm: {e}")))?;
                if w.degree() != self.n {
                    return Err(Error::Malformed(format!("{at}.perm has degree {}, expected {}", w.degree(), self.n)));
                }
                Ok((w, coeff_from_json(&t.coeff, &at)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let h = HeckeElement::from_terms(self.n, terms)?;
        Ok(match self.basis {
            BasisTag::T => h,
            BasisTag::Ttilde => h.from_normalized(),
        })
    }
}

pub fn export_element(h: &HeckeElement, format: Format) -> Vec<u8> {
    match format {
        Format::Json(basis) => {
            let doc = ElementJson::from_element(h, basis == BasisTag::Ttilde);
            let mut out = serde_json::to_vec_pretty(&doc).expect("element serializes");
            out.push(b'\n');
            out
        }
        Format::Text => format!("n={}\n{}\n", h.degree(), h.to_text()).into_bytes(),
    }
}

/// Reads either format; JSON is recognised by a leading `{`.
pub fn import_element(bytes: &[u8]) -> Result<HeckeElement> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Malformed(format!("not UTF-8: {e}")))?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let doc: ElementJson = serde_json::from_str(text)?;
        return doc.to_element();
    }
    let (header, body) = trimmed.split_once('\n').unwrap_or((trimmed, ""));
    let n =
        header.trim().strip_prefix("n=").and_then(|s| s.trim().parse::<usize>().ok()).ok_or_else(|| {
            Error::Malformed(format!("line 1: expected header `n=<degree>`, found {:?}", header.trim()))
        })?;
    parse_element(body, n).map_err(|e| match e {
        Error::Syntax { pos, msg } => Error::Malformed(format!("line 2, byte {pos}: {msg}")),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::AlgebraContext;
    use crate::named::xbar;

    #[test]
    fn json_and_text_round_trips() {
        let ctx = AlgebraContext::new(4).unwrap();
        let h = xbar(&ctx).unwrap().scale(&LaurentPoly::from_pairs([(-3, 2), (1, -5)]));
        for f in [Format::Json(BasisTag::T), Format::Json(BasisTag::Ttilde), Format::Text] {
            assert_eq!(import_element(&export_element(&h, f)).unwrap(), h, "{f:?}");
        }
        let z = HeckeElement::zero(3);
        assert_eq!(import_element(&export_element(&z, Format::Text)).unwrap(), z);
        assert_eq!(import_element(&export_element(&z, Format::Json(BasisTag::T))).unwrap(), z);
    }

    #[test]
    fn json_shape() {
        let h = HeckeElement::generator(2, 1).unwrap().scale(&LaurentPoly::q_pow(-1));
        let v: serde_json::Value = serde_json::from_slice(&export_element(&h, Format::Json(BasisTag::T))).unwrap();
        assert_eq!(v, serde_json::json!({"n": 2, "basis": "T", "terms": [{"perm": [2, 1], "coeff": [[-2, "1"]]}]}));
    }

    #[test]
    fn malformed_inputs() {
        let h = HeckeElement::generator(3, 1).unwrap();
        let full = export_element(&h, Format::Json(BasisTag::T));
        let err = import_element(&full[..full.len() / 2]).unwrap_err();
        assert!(matches!(&err, Error::Malformed(m) if m.contains("line")), "{err}");
        let bad_perm = br#"{"n": 3, "basis": "T", "terms": [{"perm": [1, 1, 3], "coeff": [[0, "1"]]}]}"#;
        assert!(matches!(import_element(bad_perm), Err(Error::Malformed(m)) if m.contains("terms[0].perm")));
        let bad_int = br#"{"n": 2, "basis": "T", "terms": [{"perm": [1, 2], "coeff": [[0, "x"]]}]}"#;
        assert!(matches!(import_element(bad_int), Err(Error::Malformed(m)) if m.contains("coeff[0]")));
        assert!(import_element(b"T[1]").is_err());
        assert!(matches!(import_element(b"n=3\nT[1] +"), Err(Error::Malformed(m)) if m.contains("line 2")));
    }
}
