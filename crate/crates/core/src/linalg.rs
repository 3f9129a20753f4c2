//! Exact linear algebra over `Z[v, v^{-1}]`, with answers read off in `Q(v)`.
//!
//! Elimination is fraction-free: a row is combined with a pivot row as
//! `p * row - a * prow`, then divided by the gcd of its entries. When the
//! pivot is a unit `±v^k` the update is simply `row - (a/p) * prow`. Pivots
//! are chosen to prefer unit entries in short rows, which keeps the sparse
//! systems arising from commutator equations nearly triangular. Reduction is
//! Gauss-Jordan, so every pivot column is cleared in every other row.
//!
//! Within one pivot step the row updates are independent and run through
//! [`Exec`].

use std::collections::{BTreeMap, BTreeSet};

use crate::coeff::{LaurentPoly, RationalFn};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::hecke::HeckeElement;
use crate::perm::Permutation;

/// Sparse row: `(column, entry)` pairs, sorted by column, entries nonzero.
pub type SparseRow = Vec<(usize, LaurentPoly)>;

/// Dense row-major matrix over the Laurent ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Malformed("ragged matrix rows".into()));
        }
        let nrows = rows.len();
        Ok(Matrix { rows: nrows, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Clears denominators row by row.
    pub fn from_rational_rows(rows: &[Vec<RationalFn>]) -> Result<Self> {
        let cleared = rows.iter().map(|r| clear_denominators(r)).collect();
        Self::from_rows(cleared)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: LaurentPoly) {
        self.data[r * self.cols + c] = x;
    }

    /// `a * self - b * I` for a square matrix.
    pub fn scaled_minus_identity(&self, a: &LaurentPoly, b: &LaurentPoly) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Malformed("matrix is not square".into()));
        }
        let mut m = self.clone();
        for x in m.data.iter_mut() {
            *x = a * &*x;
        }
        for i in 0..self.rows {
            let d = self.get(i, i) * a - b;
            m.set(i, i, d);
        }
        Ok(m)
    }

    pub fn sparse_rows(&self) -> Vec<SparseRow> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols).filter(|&c| !self.get(r, c).is_zero()).map(|c| (c, self.get(r, c).clone())).collect()
            })
            .collect()
    }

    pub fn rank(&self, exec: Exec) -> usize {
        eliminate(self.sparse_rows(), self.cols, exec).rank()
    }

    /// Basis of `{ x : self * x = 0 }` with Laurent entries.
    pub fn nullspace(&self, exec: Exec) -> Vec<Vec<LaurentPoly>> {
        eliminate(self.sparse_rows(), self.cols, exec).nullspace(self.cols)
    }
}

/// Multiplies a vector of fractions by the lcm of its denominators and strips the content.
pub fn clear_denominators(v: &[RationalFn]) -> Vec<LaurentPoly> {
    let mut l = LaurentPoly::one();
    for x in v {
        if !x.is_zero() {
            let g = l.gcd(x.den());
            l = (&l * x.den()).exact_div(&g).expect("gcd divides");
        }
    }
    let out: Vec<LaurentPoly> =
        v.iter().map(|x| (x.num() * &l).exact_div(x.den()).expect("lcm is divisible")).collect();
    primitive_vector(out)
}

fn primitive_vector(mut v: Vec<LaurentPoly>) -> Vec<LaurentPoly> {
    let mut g = LaurentPoly::zero();
    for x in &v {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return v;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return v;
    }
    for x in v.iter_mut() {
        *x = x.exact_div(&g).expect("gcd divides");
    }
    v
}

fn entry(row: &SparseRow, col: usize) -> Option<&LaurentPoly> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|i| &row[i].1)
}

/// `a * x - b * y` on sparse rows.
fn combine(a: &LaurentPoly, x: &SparseRow, b: &LaurentPoly, y: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (col, val) = match (x.get(i), y.get(j)) {
            (Some(p), Some(r)) if p.0 == r.0 => {
                i += 1;
                j += 1;
                (p.0, a * &p.1 - b * &r.1)
            }
            (Some(p), Some(r)) if p.0 < r.0 => {
                i += 1;
                (p.0, a * &p.1)
            }
            (Some(p), None) => {
                i += 1;
                (p.0, a * &p.1)
            }
            (_, Some(r)) => {
                j += 1;
                (r.0, -(b * &r.1))
            }
            (None, None) => unreachable!(),
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    out
}

fn normalize_row(row: &mut SparseRow) {
    let mut g = LaurentPoly::zero();
    for (_, x) in row.iter() {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, x) in row.iter_mut() {
        *x = x.exact_div(&g).expect("gcd divides");
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    rows: Vec<SparseRow>,
    /// `(column, row index)` for each pivot, in the order chosen.
    pivots: Vec<(usize, usize)>,
    pivot_cols: usize,
}

/// (non-unit, row weight, entry size, column)
type PivotKey = (bool, usize, usize, usize);

/// Reduces `rows`, choosing pivots only in columns `< pivot_cols`; further
/// columns ride along (an augmented right-hand side).
pub fn eliminate(rows: Vec<SparseRow>, pivot_cols: usize, exec: Exec) -> Echelon {
    let mut rows: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut is_pivot = vec![false; rows.len()];
    let mut pivots = Vec::new();
    loop {
        // smallest key wins; see `PivotKey`
        let mut best: Option<(PivotKey, usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            if is_pivot[r] {
                continue;
            }
            let weight = row.iter().filter(|e| e.0 < pivot_cols).count();
            if weight == 0 {
                continue;
            }
            for (c, a) in row.iter().filter(|e| e.0 < pivot_cols) {
                let key = (a.as_unit().is_none(), weight, a.terms().len(), *c);
                if best.as_ref().is_none_or(|b| key < b.0) {
                    best = Some((key, r, *c));
                }
            }
        }
        let Some((_, r, c)) = best else { break };
        is_pivot[r] = true;
        pivots.push((c, r));
        let mut prow = std::mem::take(&mut rows[r]);
        if entry(&prow, c).unwrap().as_unit().is_none() {
            normalize_row(&mut prow);
        }
        let p = entry(&prow, c).unwrap().clone();
        let unit = p.as_unit();
        exec.for_each_mut(&mut rows, |row| {
            let Some(a) = entry(row, c) else { return };
            if let Some((k, positive)) = unit {
                let f = if positive { a.shift(-k) } else { -a.shift(-k) };
                *row = combine(&LaurentPoly::one(), row, &f, &prow);
            } else {
                let a = a.clone();
                *row = combine(&p, row, &a, &prow);
                normalize_row(row);
            }
        });
        rows[r] = prow;
    }
    Echelon { rows, pivots, pivot_cols }
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> BTreeSet<usize> {
        self.pivots.iter().map(|p| p.0).collect()
    }

    /// Rows with no pivot that still carry augmented entries.
    fn inconsistent(&self) -> bool {
        let pivot_rows: BTreeSet<usize> = self.pivots.iter().map(|p| p.1).collect();
        self.rows.iter().enumerate().any(|(r, row)| !pivot_rows.contains(&r) && !row.is_empty())
    }

    /// Nullspace basis of the first `ncols` columns (assumes no augmented part).
    pub fn nullspace(&self, ncols: usize) -> Vec<Vec<LaurentPoly>> {
        let pivot_cols = self.pivot_columns();
        (0..ncols)
            .filter(|c| !pivot_cols.contains(c))
            .map(|f| {
                let mut x = vec![RationalFn::zero(); ncols];
                x[f] = RationalFn::one();
                for &(c, r) in &self.pivots {
                    let row = &self.rows[r];
                    if let Some(a) = entry(row, f) {
                        let p = entry(row, c).unwrap();
                        x[c] = RationalFn::new(-a, p.clone()).expect("pivot is nonzero");
                    }
                }
                clear_denominators(&x)
            })
            .collect()
    }

    /// Unique solution of `A x = B`, where `B` occupies the columns
    /// `pivot_cols..pivot_cols + rhs_cols`. Returns one Laurent vector per
    /// right-hand side.
    pub fn unique_solution(&self, rhs_cols: usize) -> Result<Vec<Vec<LaurentPoly>>> {
        if self.inconsistent() {
            return Err(Error::Inconsistent("a reduced row has no pivot but a nonzero right-hand side".into()));
        }
        if self.rank() < self.pivot_cols {
            return Err(Error::Inconsistent(format!(
                "solution is not unique: rank {} < {} unknowns",
                self.rank(),
                self.pivot_cols
            )));
        }
        let mut sol = vec![vec![LaurentPoly::zero(); self.pivot_cols]; rhs_cols];
        for &(c, r) in &self.pivots {
            let row = &self.rows[r];
            let p = entry(row, c).unwrap();
            for (j, s) in sol.iter_mut().enumerate() {
                if let Some(b) = entry(row, self.pivot_cols + j) {
                    s[c] = b.exact_div(p).ok_or_else(|| Error::NonIntegral(format!("({b}) / ({p}) in unknown {c}")))?;
                }
            }
        }
        Ok(sol)
    }
}

/// Coordinates of elements over the union of their supports.
pub fn coordinate_rows(elems: &[HeckeElement]) -> (Vec<Permutation>, Vec<SparseRow>) {
    let support: BTreeSet<Permutation> = elems.iter().flat_map(|h| h.terms().map(|(w, _)| w.clone())).collect();
    let index: BTreeMap<&Permutation, usize> = support.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let rows = elems
        .iter()
        .map(|h| {
            let mut row: SparseRow = h.terms().map(|(w, c)| (index[w], c.clone())).collect();
            row.sort_by_key(|e| e.0);
            row
        })
        .collect();
    let support = support.into_iter().collect();
    (support, rows)
}

/// Rank over `Q(v)` of a family of elements.
pub fn rank_of_elements(elems: &[HeckeElement], exec: Exec) -> usize {
    let (support, rows) = coordinate_rows(elems);
    eliminate(rows, support.len(), exec).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(pairs: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_pairs(pairs.iter().copied())
    }

    fn c(k: i64) -> LaurentPoly {
        LaurentPoly::constant(k)
    }

    #[test]
    fn rank_of_small_matrices() {
        let q = LaurentPoly::q();
        let m = Matrix::from_rows(vec![
            vec![q.clone(), c(1), c(0)],
            vec![q.pow(2), q.clone(), c(0)],
            vec![c(0), c(0), lp(&[(2, 1), (0, -1)])],
        ])
        .unwrap();
        assert_eq!(m.rank(Exec::Sequential), 2);
        assert_eq!(m.rank(Exec::Parallel), 2);
        assert_eq!(Matrix::identity(4).rank(Exec::Sequential), 4);
        assert_eq!(Matrix::zeros(3, 3).rank(Exec::Sequential), 0);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let q = LaurentPoly::q();
        let m = Matrix::from_rows(vec![vec![q.clone() + c(1), c(2), q.clone()], vec![c(3), q.clone() - c(1), c(1)]])
            .unwrap();
        let ns = m.nullspace(Exec::Sequential);
        assert_eq!(ns.len(), 1);
        for r in 0..2 {
            let dot = (0..3).fold(LaurentPoly::zero(), |acc, k| acc + m.get(r, k) * &ns[0][k]);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn unique_solution_and_failures() {
        // x + y = 3, x - q y = 2 - q  =>  x = 2, y = 1
        let q = LaurentPoly::q();
        let rows = vec![vec![(0, c(1)), (1, c(1)), (2, c(3))], vec![(0, c(1)), (1, -q.clone()), (2, c(2) - q.clone())]];
        let sol = eliminate(rows, 2, Exec::Sequential).unique_solution(1).unwrap();
        assert_eq!(sol[0], vec![c(2), c(1)]);

        let under = vec![vec![(0, c(1)), (1, c(1)), (2, c(1))]];
        assert!(matches!(eliminate(under, 2, Exec::Sequential).unique_solution(1), Err(Error::Inconsistent(_))));

        let bad = vec![vec![(0, c(1)), (1, c(1))], vec![(0, c(2)), (1, c(3))]];
        assert!(matches!(eliminate(bad, 1, Exec::Sequential).unique_solution(1), Err(Error::Inconsistent(_))));

        let frac = vec![vec![(0, c(2)), (1, c(1))]];
        assert!(matches!(eliminate(frac, 1, Exec::Sequential).unique_solution(1), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn clearing_denominators() {
        let q = LaurentPoly::q();
        let v =
            vec![RationalFn::new(c(1), q.clone() - c(1)).unwrap(), RationalFn::new(c(1), q.clone() + c(1)).unwrap()];
        let cleared = clear_denominators(&v);
        assert_eq!(cleared, vec![q.clone() + c(1), q - c(1)]);
    }
}
