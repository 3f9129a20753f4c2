use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::LaurentPoly;
use crate::error::{same_degree, Result};
use crate::exec::Exec;
use crate::perm::Permutation;

/// An element of `H_n` in the standard basis `{T_w}`.
///
/// Coefficients are integer Laurent polynomials in `v = q^{1/2}`; zero
/// coefficients are never stored. Products follow
/// `T_x T_s = T_{xs}` if `l(xs) > l(x)`, else `q T_{xs} + (q-1) T_x`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HeckeElement {
    n: usize,
    terms: BTreeMap<Permutation, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero(n: usize) -> Self {
        HeckeElement { n, terms: BTreeMap::new() }
    }

    /// `T_1`.
    pub fn one(n: usize) -> Self {
        Self::basis(Permutation::identity(n))
    }

    /// `T_w`.
    pub fn basis(w: Permutation) -> Self {
        let n = w.degree();
        let mut terms = BTreeMap::new();
        terms.insert(w, LaurentPoly::one());
        HeckeElement { n, terms }
    }

    /// `T~_w = v^{-l(w)} T_w`.
    pub fn basis_tilde(w: Permutation) -> Self {
        let l = w.length() as i32;
        Self::monomial(w, LaurentPoly::v_pow(-l))
    }

    pub fn monomial(w: Permutation, c: LaurentPoly) -> Self {
        let mut h = Self::zero(w.degree());
        h.add_term(w, &c);
        h
    }

    /// `T_{s_i}`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        Ok(Self::basis(Permutation::generator(n, i)?))
    }

    /// `T_{s_{i_1}} ... T_{s_{i_k}}` for an arbitrary (possibly non-reduced) word.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut h = Self::one(n);
        for &i in word {
            Permutation::generator(n, i)?;
            h = h.right_mul_generator(i);
        }
        Ok(h)
    }

    /// Builds from `(w, c)` pairs, summing repeats. All `w` must have degree `n`.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Permutation, LaurentPoly)>,
    {
        let mut h = Self::zero(n);
        for (w, c) in terms {
            same_degree(n, w.degree())?;
            h.add_term(w, &c);
        }
        Ok(h)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Permutation) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, w: Permutation, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn try_add(&self, rhs: &HeckeElement) -> Result<Self> {
        same_degree(self.n, rhs.n)?;
        let mut out = self.clone();
        out.add_assign_unchecked(rhs);
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &HeckeElement) -> Result<Self> {
        self.try_add(&-rhs)
    }

    fn add_assign_unchecked(&mut self, rhs: &HeckeElement) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c);
        }
    }

    /// `c * self`.
    pub fn scale(&self, c: &LaurentPoly) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        HeckeElement { n: self.n, terms: self.terms.iter().map(|(w, x)| (w.clone(), c * x)).collect() }
    }

    /// Maps every coefficient through `f`, dropping zeros.
    pub fn map_coeffs<F>(&self, f: F) -> Self
    where
        F: Fn(&Permutation, &LaurentPoly) -> LaurentPoly,
    {
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), f(w, c))).filter(|(_, c)| !c.is_zero()).collect();
        HeckeElement { n: self.n, terms }
    }

    /// `self * T_{s_i}`.
    pub fn right_mul_generator(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (x, c) in &self.terms {
            let xs = x.times_generator(i);
            if x.has_right_descent(i) {
                let qc = c.shift(2);
                out.add_term(x.clone(), &(&qc - c));
                out.add_term(xs, &qc);
            } else {
                out.add_term(xs, c);
            }
        }
        out
    }

    /// `T_{s_i} * self`.
    pub fn left_mul_generator(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (x, c) in &self.terms {
            let sx = x.generator_times(i);
            if x.has_left_descent(i) {
                let qc = c.shift(2);
                out.add_term(x.clone(), &(&qc - c));
                out.add_term(sx, &qc);
            } else {
                out.add_term(sx, c);
            }
        }
        out
    }

    /// `self * T_w`, folding over the canonical reduced word of `w`.
    pub fn mul_basis_right(&self, w: &Permutation) -> Self {
        w.reduced_word().into_iter().fold(self.clone(), |acc, i| acc.right_mul_generator(i))
    }

    /// `T_u * self`.
    pub fn mul_basis_left(&self, u: &Permutation) -> Self {
        u.reduced_word().into_iter().rev().fold(self.clone(), |acc, i| acc.left_mul_generator(i))
    }

    pub fn try_mul(&self, rhs: &HeckeElement) -> Result<Self> {
        self.mul_with(rhs, Exec::default())
    }

    /// Product with an explicit execution strategy.
    ///
    /// The factor whose support carries fewer generator steps is the one folded
    /// over; each support element of it contributes an independent partial
    /// product, and the partials are summed.
    pub fn mul_with(&self, rhs: &HeckeElement, exec: Exec) -> Result<Self> {
        same_degree(self.n, rhs.n)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.n));
        }
        let weight = |h: &HeckeElement| h.terms.keys().map(|w| w.length()).sum::<usize>();
        let right_cost = weight(rhs) * self.len();
        let left_cost = weight(self) * rhs.len();
        let n = self.n;
        let add = |mut a: HeckeElement, b: HeckeElement| {
            if a.len() < b.len() {
                let mut b = b;
                b.add_assign_unchecked(&a);
                return b;
            }
            a.add_assign_unchecked(&b);
            a
        };
        let out = if right_cost <= left_cost {
            let support: Vec<(&Permutation, &LaurentPoly)> = rhs.terms.iter().collect();
            exec.map_reduce(&support, |(w, c)| self.mul_basis_right(w).scale(c), || HeckeElement::zero(n), add)
        } else {
            let support: Vec<(&Permutation, &LaurentPoly)> = self.terms.iter().collect();
            exec.map_reduce(&support, |(u, c)| rhs.mul_basis_left(u).scale(c), || HeckeElement::zero(n), add)
        };
        Ok(out)
    }

    /// `self^k`, `k >= 0`.
    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.n), |acc, _| &acc * self)
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, rhs: &HeckeElement) -> Result<Self> {
        self.try_mul(rhs)?.try_sub(&rhs.try_mul(self)?)
    }

    pub fn commutes_with(&self, rhs: &HeckeElement) -> Result<bool> {
        Ok(self.try_mul(rhs)? == rhs.try_mul(self)?)
    }

    /// Centrality, decided against the generators `T_{s_1}, ..., T_{s_{n-1}}`.
    pub fn is_central(&self) -> bool {
        (1..self.n).all(|i| self.left_mul_generator(i) == self.right_mul_generator(i))
    }

    /// Coordinates in the normalised basis: `sum a_w T_w = sum (v^{l(w)} a_w) T~_w`.
    pub fn to_normalized(&self) -> Self {
        self.map_coeffs(|w, c| c.shift(w.length() as i32))
    }

    /// Inverse of [`to_normalized`](Self::to_normalized): reads the coefficients
    /// as `T~`-coordinates and returns the element in the `T` basis.
    pub fn from_normalized(&self) -> Self {
        self.map_coeffs(|w, c| c.shift(-(w.length() as i32)))
    }

    /// The algebra automorphism `T_w -> T_{rho_n(w)}`.
    pub fn apply_rho(&self) -> Self {
        HeckeElement { n: self.n, terms: self.terms.iter().map(|(w, c)| (w.rho(), c.clone())).collect() }
    }

    /// The same element in `H_m`, `m >= n`, via `S_n < S_m`.
    pub fn embed(&self, m: usize) -> Result<Self> {
        let mut out = Self::zero(m);
        for (w, c) in &self.terms {
            out.add_term(w.embed(m)?, c);
        }
        Ok(out)
    }

    /// Terms sorted by length, then by canonical reduced word.
    pub fn sorted_terms(&self) -> Vec<(Vec<usize>, &Permutation, &LaurentPoly)> {
        let mut v: Vec<_> = self.terms.iter().map(|(w, c)| (w.reduced_word(), w, c)).collect();
        v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        v
    }

    /// Text form in the element grammar, e.g. `(q - 1)*T[1] + T[1,2]`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0*T[]".to_string();
        }
        let mut s = String::new();
        for (k, (word, _, c)) in self.sorted_terms().into_iter().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            let word: Vec<String> = word.iter().map(|i| i.to_string()).collect();
            let word = word.join(",");
            if c.is_one() {
                s.push_str(&format!("T[{word}]"));
            } else {
                s.push_str(&format!("({c})*T[{word}]"));
            }
        }
        s
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{}[{}]", self.n, self.to_text())
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

// Operator forms panic on degree mismatch; the `try_*` methods report it.

impl Add for &HeckeElement {
    type Output = HeckeElement;
    fn add(self, rhs: &HeckeElement) -> HeckeElement {
        self.try_add(rhs).expect("degree mismatch in Hecke addition")
    }
}

impl Sub for &HeckeElement {
    type Output = HeckeElement;
    fn sub(self, rhs: &HeckeElement) -> HeckeElement {
        self.try_sub(rhs).expect("degree mismatch in Hecke subtraction")
    }
}

impl Mul for &HeckeElement {
    type Output = HeckeElement;
    fn mul(self, rhs: &HeckeElement) -> HeckeElement {
        self.try_mul(rhs).expect("degree mismatch in Hecke product")
    }
}

impl Neg for &HeckeElement {
    type Output = HeckeElement;
    fn neg(self) -> HeckeElement {
        self.map_coeffs(|_, c| -c)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for HeckeElement {
            type Output = HeckeElement;
            fn $m(self, rhs: HeckeElement) -> HeckeElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&HeckeElement> for HeckeElement {
            type Output = HeckeElement;
            fn $m(self, rhs: &HeckeElement) -> HeckeElement {
                (&self).$m(rhs)
            }
        }
        impl $tr<HeckeElement> for &HeckeElement {
            type Output = HeckeElement;
            fn $m(self, rhs: HeckeElement) -> HeckeElement {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for HeckeElement {
    type Output = HeckeElement;
    fn neg(self) -> HeckeElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn q() -> LaurentPoly {
        LaurentPoly::q()
    }

    fn t(n: usize, word: &[usize]) -> HeckeElement {
        HeckeElement::basis(Permutation::from_word(n, word).unwrap())
    }

    #[test]
    fn quadratic_relation() {
        let s1 = t(3, &[1]);
        let expected = HeckeElement::one(3).scale(&q()) + s1.scale(&(q() - LaurentPoly::one()));
        assert_eq!(&s1 * &s1, expected);
    }

    #[test]
    fn module_operations() {
        let s1 = t(3, &[1]);
        assert!((&s1 + &s1.scale(&LaurentPoly::constant(-1))).is_zero());
        let one = HeckeElement::one(3);
        let sum = one.scale(&(q() - LaurentPoly::one())) + &one;
        assert_eq!(sum, one.scale(&q()));
    }

    #[test]
    fn braid_relations() {
        for n in 3..6 {
            for i in 1..n - 1 {
                assert_eq!(t(n, &[i]) * t(n, &[i + 1]) * t(n, &[i]), t(n, &[i + 1]) * t(n, &[i]) * t(n, &[i + 1]));
            }
            for i in 1..n {
                for j in i + 2..n {
                    assert_eq!(t(n, &[i]) * t(n, &[j]), t(n, &[j]) * t(n, &[i]));
                }
            }
        }
    }

    #[test]
    fn reduced_words_give_basis_elements() {
        for w in Permutation::all(4) {
            let h = HeckeElement::from_word(4, &w.reduced_word()).unwrap();
            assert_eq!(h, HeckeElement::basis(w));
        }
    }

    #[test]
    fn longest_square_identity_coefficient() {
        let tw = HeckeElement::basis(Permutation::longest(3));
        let sq = &tw * &tw;
        assert_eq!(sq.coeff(&Permutation::identity(3)), q().pow(3));
    }

    #[test]
    fn normalized_generator_square() {
        let ts = HeckeElement::basis_tilde(Permutation::generator(3, 1).unwrap());
        let sq = &ts * &ts;
        let expected = HeckeElement::one(3) + ts.scale(&LaurentPoly::xi());
        assert_eq!(sq, expected);
        // in T~ coordinates: 1 * T~_1 + xi * T~_{s_1}
        let coords = sq.to_normalized();
        assert_eq!(coords.coeff(&Permutation::generator(3, 1).unwrap()), LaurentPoly::xi());
        assert_eq!(coords.from_normalized(), sq);
    }

    #[test]
    fn rho_on_generators() {
        assert_eq!(t(4, &[1]).apply_rho(), t(4, &[3]));
        let tw = HeckeElement::basis(Permutation::longest(4));
        assert_eq!(tw.apply_rho(), tw);
    }

    #[test]
    fn centrality() {
        assert!(!t(3, &[1]).is_central());
        assert!(HeckeElement::one(3).scale(&q()).is_central());
        assert!(t(2, &[1]).is_central());
    }

    #[test]
    fn degree_mismatch() {
        assert_eq!(t(3, &[1]).try_mul(&t(4, &[1])), Err(Error::DegreeMismatch { left: 3, right: 4 }));
        assert!(t(3, &[1]).try_add(&t(4, &[1])).is_err());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let x: HeckeElement =
            Permutation::all(4).into_iter().map(HeckeElement::basis).fold(HeckeElement::zero(4), |a, b| a + b);
        let y = t(4, &[1, 2, 3]) + t(4, &[2]).scale(&q());
        assert_eq!(x.mul_with(&y, Exec::Sequential).unwrap(), x.mul_with(&y, Exec::Parallel).unwrap());
        assert_eq!(y.mul_with(&x, Exec::Sequential).unwrap(), y.mul_with(&x, Exec::Parallel).unwrap());
    }

    #[test]
    fn text_form() {
        let h = t(3, &[2]).scale(&(q() - LaurentPoly::one())) + HeckeElement::one(3).scale(&LaurentPoly::q_pow(-1));
        assert_eq!(h.to_text(), "(q^-1)*T[] + (q - 1)*T[2]");
    }
}
