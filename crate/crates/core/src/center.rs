//! The centre `Z(H_n)` and its minimal class basis `{Gamma_lambda}`.
//!
//! Both are obtained from the linear system `T_s h = h T_s` (one block per
//! generator) in the unknown coefficients of `h`. For the class basis, the
//! system is augmented with one pinning equation per minimal-length element
//! `w` of every class `mu`: the coefficient of `T_w` in `Gamma_lambda` is 1
//! when `mu = lambda` and 0 otherwise. That system has a unique solution with
//! coefficients in `Z[q, q^{-1}]`.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::coeff::LaurentPoly;
use crate::error::{Error, Result};
use crate::hecke::{specialize_q1, AlgebraContext, GroupAlgebraElement, HeckeElement};
use crate::io::ElementJson;
use crate::linalg::{eliminate, SparseRow};
use crate::perm::{Partition, Permutation};

/// A spanning set of the centre over `Q(v)` (one vector per partition).
#[derive(Clone, Debug)]
pub struct CentreBasis {
    pub n: usize,
    pub vectors: Vec<HeckeElement>,
}

/// The minimal basis, in the partition order of [`Partition::all`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaBasis {
    n: usize,
    elements: Vec<(Partition, HeckeElement)>,
}

/// Coefficients of a central element on the class basis, in partition order.
pub type GammaCoefficients = Vec<(Partition, LaurentPoly)>;

struct CommutatorSystem {
    basis: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    rows: Vec<SparseRow>,
}

fn commutator_system(ctx: &AlgebraContext) -> CommutatorSystem {
    let n = ctx.n();
    let basis = Permutation::all(n);
    let index: HashMap<Permutation, usize> = basis.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
    // (generator, output basis index) -> row
    let mut rows: BTreeMap<(usize, usize), SparseRow> = BTreeMap::new();
    for (j, w) in basis.iter().enumerate() {
        let tw = HeckeElement::basis(w.clone());
        for s in 1..n {
            let d = tw.left_mul_generator(s) - tw.right_mul_generator(s);
            for (u, c) in d.terms() {
                rows.entry((s, index[u])).or_default().push((j, c.clone()));
            }
        }
    }
    CommutatorSystem { basis, index, rows: rows.into_values().collect() }
}

fn element_from_vector(n: usize, basis: &[Permutation], coords: &[LaurentPoly]) -> HeckeElement {
    let terms = basis.iter().cloned().zip(coords.iter().cloned());
    HeckeElement::from_terms(n, terms).expect("basis has degree n")
}

/// Basis of the commutant of the generators, by exact elimination.
pub fn centre_basis(ctx: &AlgebraContext) -> Result<CentreBasis> {
    ctx.check_gamma("centre basis")?;
    let n = ctx.n();
    let sys = commutator_system(ctx);
    let ncols = sys.basis.len();
    let ech = eliminate(sys.rows, ncols, ctx.exec());
    let vectors: Vec<HeckeElement> =
        ech.nullspace(ncols).iter().map(|v| element_from_vector(n, &sys.basis, v)).collect();
    let expected = Partition::all(n).len();
    if vectors.len() != expected {
        return Err(Error::Inconsistent(format!(
            "centre has dimension {} but there are {expected} classes",
            vectors.len()
        )));
    }
    Ok(CentreBasis { n, vectors })
}

/// The minimal class basis, solved from the pinned commutator system.
pub fn gamma_basis(ctx: &AlgebraContext) -> Result<GammaBasis> {
    ctx.check_gamma("class basis")?;
    let n = ctx.n();
    let sys = commutator_system(ctx);
    let ncols = sys.basis.len();
    let partitions = Partition::all(n);
    let mut rows = sys.rows;
    for (m, mu) in partitions.iter().enumerate() {
        for w in mu.minimal_class_elements() {
            rows.push(vec![(sys.index[&w], LaurentPoly::one()), (ncols + m, LaurentPoly::one())]);
        }
    }
    let ech = eliminate(rows, ncols, ctx.exec());
    let solutions = ech.unique_solution(partitions.len())?;
    let elements = partitions
        .into_iter()
        .zip(solutions)
        .map(|(lambda, coords)| (lambda, element_from_vector(n, &sys.basis, &coords)))
        .collect();
    let gb = GammaBasis { n, elements };
    gb.check_invariants()?;
    Ok(gb)
}

impl GammaBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[(Partition, HeckeElement)] {
        &self.elements
    }

    pub fn get(&self, lambda: &Partition) -> Option<&HeckeElement> {
        self.elements.iter().find(|(p, _)| p == lambda).map(|(_, h)| h)
    }

    /// `Gamma~_lambda = q^{-l_lambda/2} Gamma_lambda`.
    pub fn normalized(&self, lambda: &Partition) -> Option<HeckeElement> {
        self.get(lambda).map(|h| h.scale(&LaurentPoly::v_pow(-(lambda.min_length() as i32))))
    }

    /// `sum_{l_lambda = i} Gamma_lambda`.
    pub fn sum_with_min_length(&self, i: usize) -> HeckeElement {
        self.elements
            .iter()
            .filter(|(p, _)| p.min_length() == i)
            .fold(HeckeElement::zero(self.n), |acc, (_, h)| acc + h)
    }

    /// `sum_lambda c_lambda Gamma_lambda`.
    pub fn combine<F>(&self, coeff: F) -> HeckeElement
    where
        F: Fn(&Partition) -> LaurentPoly,
    {
        self.elements.iter().fold(HeckeElement::zero(self.n), |acc, (p, h)| acc + h.scale(&coeff(p)))
    }

    /// Checks centrality, the `q = 1` class sums, the minimal-length pinning,
    /// and that all coefficients lie in `Z[q, q^{-1}]`.
    pub fn check_invariants(&self) -> Result<()> {
        let partitions = Partition::all(self.n);
        if self.elements.len() != partitions.len() || self.elements.iter().zip(&partitions).any(|((p, _), q)| p != q) {
            return Err(Error::Inconsistent("class basis is not indexed by the partitions of n".into()));
        }
        let minimal: Vec<(Partition, Vec<Permutation>)> =
            partitions.iter().map(|p| (p.clone(), p.minimal_class_elements())).collect();
        for (lambda, g) in &self.elements {
            if !g.is_central() {
                return Err(Error::Inconsistent(format!("Gamma{lambda} is not central")));
            }
            if specialize_q1(g) != GroupAlgebraElement::class_sum(lambda) {
                return Err(Error::Inconsistent(format!("Gamma{lambda} at q = 1 is not the class sum")));
            }
            for (mu, ws) in &minimal {
                let want = if mu == lambda { LaurentPoly::one() } else { LaurentPoly::zero() };
                if let Some(w) = ws.iter().find(|w| g.coeff(w) != want) {
                    return Err(Error::Inconsistent(format!(
                        "Gamma{lambda} has coefficient {} on minimal {w}",
                        g.coeff(w)
                    )));
                }
            }
            if let Some((w, c)) = g.terms().find(|(_, c)| !c.lies_over_q()) {
                return Err(Error::Inconsistent(format!("Gamma{lambda} has odd v-exponent in coefficient {c} of {w}")));
            }
        }
        Ok(())
    }
}

/// Reads `c_lambda` off the minimal-length elements of each class and checks
/// that `z = sum c_lambda Gamma_lambda` exactly.
pub fn express_in_gamma(z: &HeckeElement, gb: &GammaBasis) -> Result<GammaCoefficients> {
    crate::error::same_degree(z.degree(), gb.n)?;
    if !z.is_central() {
        return Err(Error::NotCentral);
    }
    let mut coeffs = Vec::with_capacity(gb.elements.len());
    for (lambda, _) in &gb.elements {
        let mins = lambda.minimal_class_elements();
        let c = z.coeff(&mins[0]);
        if mins.iter().any(|w| z.coeff(w) != c) {
            return Err(Error::Inconsistent(format!("coefficients on minimal elements of class {lambda} differ")));
        }
        coeffs.push((lambda.clone(), c));
    }
    let rebuilt = gb.combine(|p| coeffs.iter().find(|(q, _)| q == p).unwrap().1.clone());
    if rebuilt != *z {
        return Err(Error::NonzeroResidual);
    }
    Ok(coeffs)
}

pub const GAMMA_CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct GammaCacheFile {
    format_version: u32,
    n: usize,
    elements: Vec<GammaCacheEntry>,
}

#[derive(Serialize, Deserialize)]
struct GammaCacheEntry {
    partition: Partition,
    element: ElementJson,
}

pub fn gamma_cache_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("gamma_n{n}.json"))
}

pub fn save_gamma_cache(dir: &Path, gb: &GammaBasis) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let file = GammaCacheFile {
        format_version: GAMMA_CACHE_FORMAT_VERSION,
        n: gb.n,
        elements: gb
            .elements
            .iter()
            .map(|(p, h)| GammaCacheEntry { partition: p.clone(), element: ElementJson::from_element(h, false) })
            .collect(),
    };
    let path = gamma_cache_path(dir, gb.n);
    std::fs::write(&path, serde_json::to_vec_pretty(&file)?)?;
    Ok(path)
}

/// Loads and re-validates a cached basis; `Ok(None)` when no file exists.
pub fn load_gamma_cache(dir: &Path, n: usize) -> Result<Option<GammaBasis>> {
    let path = gamma_cache_path(dir, n);
    if !path.exists() {
        return Ok(None);
    }
    let file: GammaCacheFile = serde_json::from_slice(&std::fs::read(&path)?)?;
    if file.format_version != GAMMA_CACHE_FORMAT_VERSION {
        return Err(Error::Malformed(format!(
            "cache format version {} (expected {GAMMA_CACHE_FORMAT_VERSION})",
            file.format_version
        )));
    }
    if file.n != n {
        return Err(Error::Malformed(format!("cache is for n = {}, expected {n}", file.n)));
    }
    let elements =
        file.elements.into_iter().map(|e| Ok((e.partition, e.element.to_element()?))).collect::<Result<Vec<_>>>()?;
    if elements.iter().any(|(_, h)| h.degree() != n) {
        return Err(Error::Malformed("cached element has the wrong degree".into()));
    }
    let gb = GammaBasis { n, elements };
    gb.check_invariants()?;
    Ok(Some(gb))
}

/// Class basis, reusing `dir/gamma_n{n}.json` when valid and refreshing it otherwise.
pub fn gamma_basis_cached(ctx: &AlgebraContext, dir: Option<&Path>) -> Result<GammaBasis> {
    let Some(dir) = dir else {
        return gamma_basis(ctx);
    };
    ctx.check_gamma("class basis")?;
    if let Ok(Some(gb)) = load_gamma_cache(dir, ctx.n()) {
        return Ok(gb);
    }
    let gb = gamma_basis(ctx)?;
    save_gamma_cache(dir, &gb)?;
    Ok(gb)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize, word: &[usize]) -> HeckeElement {
        HeckeElement::basis(Permutation::from_word(n, word).unwrap())
    }

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn centre_dimensions() {
        for (n, d) in [(1, 1), (2, 2), (3, 3), (4, 5)] {
            let ctx = AlgebraContext::new(n).unwrap();
            let cb = centre_basis(&ctx).unwrap();
            assert_eq!(cb.vectors.len(), d);
            assert!(cb.vectors.iter().all(|h| h.is_central()));
        }
    }

    #[test]
    fn gamma_h3() {
        let ctx = AlgebraContext::new(3).unwrap();
        let gb = gamma_basis(&ctx).unwrap();
        let q = LaurentPoly::q();
        let qinv = LaurentPoly::q_pow(-1);
        assert_eq!(gb.get(&part(&[1, 1, 1])).unwrap(), &HeckeElement::one(3));
        assert_eq!(gb.get(&part(&[2, 1])).unwrap(), &(t(3, &[1]) + t(3, &[2]) + t(3, &[1, 2, 1]).scale(&qinv)));
        assert_eq!(
            gb.get(&part(&[3])).unwrap(),
            &(t(3, &[1, 2]) + t(3, &[2, 1]) + t(3, &[1, 2, 1]).scale(&(&qinv * &(q - LaurentPoly::one()))))
        );
    }

    #[test]
    fn express_rejects_non_central() {
        let ctx = AlgebraContext::new(3).unwrap();
        let gb = gamma_basis(&ctx).unwrap();
        assert_eq!(express_in_gamma(&t(3, &[1]), &gb), Err(Error::NotCentral));
        let c = express_in_gamma(&HeckeElement::one(3).scale(&LaurentPoly::q()), &gb).unwrap();
        assert_eq!(c[2].1, LaurentPoly::q());
        assert!(c[0].1.is_zero());
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let ctx = AlgebraContext::new(3).unwrap();
        let gb = gamma_basis_cached(&ctx, Some(dir.path())).unwrap();
        assert!(gamma_cache_path(dir.path(), 3).exists());
        let loaded = load_gamma_cache(dir.path(), 3).unwrap().unwrap();
        assert_eq!(loaded, gb);
        assert!(load_gamma_cache(dir.path(), 4).unwrap().is_none());
        std::fs::write(gamma_cache_path(dir.path(), 3), b"{\"format_version\": 99").unwrap();
        assert!(load_gamma_cache(dir.path(), 3).is_err());
        // a corrupt cache is recomputed
        assert_eq!(gamma_basis_cached(&ctx, Some(dir.path())).unwrap(), gb);
    }

    #[test]
    fn gamma_cap() {
        let ctx = AlgebraContext::new(6).unwrap();
        assert!(matches!(gamma_basis(&ctx), Err(Error::ResourceLimit { .. })));
    }
}
