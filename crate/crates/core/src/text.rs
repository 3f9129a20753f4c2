//! Parser for scalar and element expressions.
//!
//! ```text
//! elem   := sign? term (('+' | '-') term)*
//! term   := factor ('*'? factor)*          exactly one or more element atoms
//! factor := scalar-atom ('^' int)? | atom ('^' nat)?
//! atom   := 'T[' word ']' | 'Tt[' word ']' | '@' name ('(' int (',' int)* ')')? | '@catalog:' name
//! scalar := sign? sterm (('+' | '-') sterm)*
//! sterm  := spow ('*'? spow)*
//! spow   := satom ('^' '-'? int)?
//! satom  := int | 'q' | 'v' | 'xi' | '(' scalar ')'
//! ```
//!
//! `T[i,j,...]` is the product `T_{s_i} T_{s_j} ...` (any word, reduced on
//! parse) and `Tt[...]` its normalised counterpart. Negative powers are only
//! accepted on units `+-v^k`. Whitespace is ignored.

use num_bigint::BigInt;

use crate::coeff::LaurentPoly;
use crate::error::{Error, Result};
use crate::hecke::{AlgebraContext, HeckeElement};
use crate::named::NamedElement;

pub fn parse_scalar(text: &str) -> Result<LaurentPoly> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ctx: None };
    let s = p.scalar()?;
    p.expect_end()?;
    Ok(s)
}

/// Parses an element of `H_n` with default resource caps.
pub fn parse_element(text: &str, n: usize) -> Result<HeckeElement> {
    let ctx = AlgebraContext::new(n)?;
    parse_element_in(&ctx, text)
}

/// Parses an element, resolving `@name` atoms through `ctx` (and its memo).
pub fn parse_element_in(ctx: &AlgebraContext, text: &str) -> Result<HeckeElement> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ctx: Some(ctx) };
    let h = p.element()?;
    p.expect_end()?;
    Ok(h)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: Option<&'a AlgebraContext>,
}

enum Factor {
    Scalar(LaurentPoly),
    Element(HeckeElement),
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", b as char))
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(b) => self.err(format!("unexpected '{}'", b as char)),
        }
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn small_int(&mut self) -> Result<usize> {
        let at = self.pos;
        let d = self.digits()?;
        d.parse().map_err(|_| Error::Syntax { pos: at, msg: format!("integer {d} is too large") })
    }

    fn exponent(&mut self, allow_negative: bool) -> Result<i32> {
        let at = self.pos;
        let neg = self.eat(b'-');
        if neg && !allow_negative {
            return Err(Error::Syntax { pos: at, msg: "negative powers of elements are not supported".into() });
        }
        let d = self.digits()?;
        let k: i32 = d.parse().map_err(|_| Error::Syntax { pos: at, msg: format!("exponent {d} is too large") })?;
        Ok(if neg { -k } else { k })
    }

    fn starts_scalar_atom(&mut self) -> bool {
        matches!(self.peek(), Some(b'0'..=b'9' | b'q' | b'v' | b'x' | b'('))
    }

    fn starts_factor(&mut self) -> bool {
        self.starts_scalar_atom() || matches!(self.peek(), Some(b'T' | b'@'))
    }

    // ---- scalars ----

    fn scalar(&mut self) -> Result<LaurentPoly> {
        let mut acc = if self.eat(b'-') {
            -self.sterm()?
        } else {
            self.eat(b'+');
            self.sterm()?
        };
        loop {
            if self.eat(b'+') {
                acc += &self.sterm()?;
            } else if self.eat(b'-') {
                acc -= &self.sterm()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn sterm(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.spow()?;
        loop {
            if self.eat(b'*') || self.starts_scalar_atom() {
                acc = &acc * &self.spow()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn spow(&mut self) -> Result<LaurentPoly> {
        let base = self.satom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let k = self.exponent(true)?;
        power(&base, k).ok_or(Error::Syntax { pos: at, msg: format!("({base})^{k} is not a Laurent polynomial") })
    }

    fn satom(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let s = self.scalar()?;
                self.expect(b')')?;
                Ok(s)
            }
            Some(b'0'..=b'9') => {
                let d = self.digits()?;
                Ok(LaurentPoly::from_bigint(d.parse::<BigInt>().expect("digits")))
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let at = self.pos;
                match self.ident() {
                    "q" => Ok(LaurentPoly::q()),
                    "v" => Ok(LaurentPoly::v()),
                    "xi" => Ok(LaurentPoly::xi()),
                    other => Err(Error::Syntax { pos: at, msg: format!("unknown scalar symbol {other:?}") }),
                }
            }
            Some(b) => self.err(format!("unexpected '{}'", b as char)),
            None => self.err("unexpected end of input"),
        }
    }

    // ---- elements ----

    fn element(&mut self) -> Result<HeckeElement> {
        let n = self.ctx.expect("element parsing needs a context").n();
        let mut acc = HeckeElement::zero(n);
        let mut sign = if self.eat(b'-') {
            false
        } else {
            self.eat(b'+');
            true
        };
        loop {
            let t = self.term()?;
            acc = if sign { acc + t } else { acc - t };
            if self.eat(b'+') {
                sign = true;
            } else if self.eat(b'-') {
                sign = false;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<HeckeElement> {
        let start = self.pos;
        let mut scalar = LaurentPoly::one();
        let mut element: Option<HeckeElement> = None;
        loop {
            match self.factor()? {
                Factor::Scalar(s) => scalar = &scalar * &s,
                Factor::Element(h) => {
                    element = Some(match element {
                        None => h,
                        Some(prev) => &prev * &h,
                    })
                }
            }
            if !(self.eat(b'*') || self.starts_factor()) {
                break;
            }
        }
        match element {
            Some(h) => Ok(h.scale(&scalar)),
            None => Err(Error::Syntax { pos: start, msg: "term has no basis element (expected T[...])".into() }),
        }
    }

    fn factor(&mut self) -> Result<Factor> {
        match self.peek() {
            Some(b'T') | Some(b'@') => {
                let h = self.atom()?;
                if self.eat(b'^') {
                    let k = self.exponent(false)?;
                    return Ok(Factor::Element(h.pow(k as u32)));
                }
                Ok(Factor::Element(h))
            }
            _ => Ok(Factor::Scalar(self.spow()?)),
        }
    }

    fn atom(&mut self) -> Result<HeckeElement> {
        let ctx = self.ctx.expect("element parsing needs a context");
        let n = ctx.n();
        let at = self.pos;
        if self.eat(b'@') {
            let name = self.ident();
            if name.is_empty() {
                return self.err("expected a name after '@'");
            }
            if name == "catalog" {
                self.expect(b':')?;
                let entry = self.ident();
                return crate::sqrt::catalog_element(n, entry);
            }
            let mut args = Vec::new();
            if self.eat(b'(') && !self.eat(b')') {
                loop {
                    args.push(self.small_int()?);
                    if self.eat(b')') {
                        break;
                    }
                    self.expect(b',')?;
                }
            }
            let id = NamedElement::from_name(name, &args).map_err(|e| match e {
                Error::Malformed(msg) => Error::Syntax { pos: at, msg },
                other => other,
            })?;
            return ctx.memo(id, || id.build(ctx)).map(|h| (*h).clone());
        }
        let name = self.ident();
        let tilde = match name {
            "T" => false,
            "Tt" => true,
            _ => return Err(Error::Syntax { pos: at, msg: format!("expected T[...] or Tt[...], found {name:?}") }),
        };
        self.expect(b'[')?;
        let mut word = Vec::new();
        if !self.eat(b']') {
            loop {
                let idx_at = self.pos;
                let i = self.small_int()?;
                if i == 0 || i >= n {
                    self.pos = idx_at;
                    return Err(Error::IndexOutOfRange {
                        what: "generator",
                        index: i,
                        min: 1,
                        max: n.saturating_sub(1),
                    });
                }
                word.push(i);
                if self.eat(b']') {
                    break;
                }
                self.expect(b',')?;
            }
        }
        let h = HeckeElement::from_word(n, &word)?;
        Ok(if tilde { h.scale(&LaurentPoly::v_pow(-(word.len() as i32))) } else { h })
    }
}

/// `base^k`, with negative `k` only for units.
fn power(base: &LaurentPoly, k: i32) -> Option<LaurentPoly> {
    if k >= 0 {
        return Some(base.pow(k as u32));
    }
    let (e, positive) = base.as_unit()?;
    let sign = if positive || k % 2 == 0 { 1 } else { -1 };
    Some(LaurentPoly::v_pow(e * k).scale(&BigInt::from(sign)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn t(n: usize, word: &[usize]) -> HeckeElement {
        HeckeElement::basis(Permutation::from_word(n, word).unwrap())
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("q^-1").unwrap(), LaurentPoly::q_pow(-1));
        assert_eq!(parse_scalar("xi").unwrap(), LaurentPoly::from_pairs([(1, 1), (-1, -1)]));
        assert_eq!(parse_scalar("-(q - 1)^2 + 3").unwrap(), LaurentPoly::from_pairs([(4, -1), (2, 2), (0, 2)]));
        assert_eq!(parse_scalar("2q v").unwrap(), LaurentPoly::from_pairs([(3, 2)]));
        assert_eq!(parse_scalar("(-v)^-3").unwrap(), LaurentPoly::from_pairs([(-3, -1)]));
        assert!(matches!(parse_scalar("(q-1)^-1"), Err(Error::Syntax { pos: 6, .. })));
        assert!(matches!(parse_scalar("q +"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_scalar("z"), Err(Error::Syntax { pos: 0, .. })));
    }

    #[test]
    fn elements() {
        assert_eq!(parse_element("T[1,2,1]", 3).unwrap(), t(3, &[1, 2, 1]));
        assert_eq!(
            parse_element("(q-1)*T[2] + q^-1*T[]", 3).unwrap(),
            t(3, &[2]).scale(&(LaurentPoly::q() - LaurentPoly::one()))
                + HeckeElement::one(3).scale(&LaurentPoly::q_pow(-1))
        );
        assert_eq!(
            parse_element("T[1,1]", 3).unwrap(),
            HeckeElement::one(3).scale(&LaurentPoly::q()) + t(3, &[1]).scale(&(LaurentPoly::q() - LaurentPoly::one()))
        );
        assert_eq!(parse_element(" - 2 T[ 1 ] ", 2).unwrap(), t(2, &[1]).scale(&LaurentPoly::constant(-2)));
        assert_eq!(
            parse_element("Tt[1]", 2).unwrap(),
            HeckeElement::basis_tilde(Permutation::generator(2, 1).unwrap())
        );
        assert_eq!(parse_element("T[1]*T[2]^2", 3).unwrap(), &t(3, &[1]) * &t(3, &[2]).pow(2));
    }

    #[test]
    fn named_atoms() {
        let ctx = AlgebraContext::new(4).unwrap();
        let l = parse_element_in(&ctx, "@L(3)").unwrap();
        assert_eq!(l, crate::named::murphy(&ctx, 3).unwrap());
        let m = parse_element_in(&ctx, "xi*@Mt(4,3) + Tt[]").unwrap();
        assert!(!m.is_zero());
        assert!(matches!(parse_element_in(&ctx, "@nope"), Err(Error::Syntax { pos: 0, .. })));
        assert!(parse_element_in(&ctx, "@catalog:R6").is_ok());
    }

    #[test]
    fn element_errors() {
        assert!(matches!(parse_element("T[3]", 3), Err(Error::IndexOutOfRange { index: 3, .. })));
        assert!(matches!(parse_element("q", 3), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_element("T[1] T", 3), Err(Error::Syntax { .. })));
        assert!(matches!(parse_element("T[1,]", 3), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_element("T[1]^-1", 3), Err(Error::Syntax { .. })));
    }

    #[test]
    fn text_round_trip() {
        let ctx = AlgebraContext::new(4).unwrap();
        let h = crate::named::ybar(&ctx).unwrap();
        assert_eq!(parse_element(&h.to_text(), 4).unwrap(), h);
        assert_eq!(parse_element(&HeckeElement::zero(3).to_text(), 3).unwrap(), HeckeElement::zero(3));
    }
}
