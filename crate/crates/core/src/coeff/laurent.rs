use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An integer Laurent polynomial in `v = q^{1/2}`.
///
/// Terms are kept sorted by ascending exponent with no zero coefficients, so
/// structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i32, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        Self::monomial(0, c)
    }

    /// `coeff * v^exp`.
    pub fn monomial(exp: i32, coeff: BigInt) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(exp, coeff)] }
        }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i32) -> Self {
        Self::monomial(exp, BigInt::one())
    }

    /// `v = q^{1/2}`.
    pub fn v() -> Self {
        Self::v_pow(1)
    }

    /// `q^k = v^{2k}`.
    pub fn q_pow(k: i32) -> Self {
        Self::v_pow(2 * k)
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `xi = v - v^{-1}`.
    pub fn xi() -> Self {
        Self::from_pairs([(1, 1), (-1, -1)])
    }

    /// Builds from `(exponent, coefficient)` pairs in any order; repeated
    /// exponents are summed.
    pub fn from_pairs<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i32, i64)>,
    {
        Self::from_terms(pairs.into_iter().map(|(e, c)| (e, BigInt::from(c))))
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, BigInt)>,
    {
        let mut v: Vec<(i32, BigInt)> = terms.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        LaurentPoly { terms: out }
    }

    pub fn terms(&self) -> &[(i32, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.last().map(|t| &t.1)
    }

    /// True iff every exponent of `v` is even, i.e. the value lies in `Z[q, q^{-1}]`.
    pub fn lies_over_q(&self) -> bool {
        self.terms.iter().all(|(e, _)| e % 2 == 0)
    }

    /// If this is a unit `±v^k` of the Laurent ring, returns `(k, sign)`.
    pub fn as_unit(&self) -> Option<(i32, bool)> {
        match self.terms.as_slice() {
            [(e, c)] if c.abs().is_one() => Some((*e, c.is_positive())),
            _ => None,
        }
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact value at `v = v0`.
    pub fn eval(&self, v0: &BigRational) -> Result<BigRational> {
        if v0.is_zero() {
            return Err(Error::ZeroEvaluationPoint);
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                num_traits::pow(v0.clone(), *e as usize)
            } else {
                num_traits::pow(v0.recip(), (-*e) as usize)
            };
            acc += p * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }

    /// Value at `v = 1` (equivalently `q = 1`): the sum of the coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.iter().map(|t| &t.1).sum()
    }

    /// Gcd of the integer coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Dense coefficients of `self * v^{-min_exp}`, lowest degree first.
    fn to_dense(&self) -> (i32, Vec<BigInt>) {
        let Some(lo) = self.min_exp() else {
            return (0, Vec::new());
        };
        let hi = self.max_exp().unwrap();
        let mut dense = vec![BigInt::zero(); (hi - lo) as usize + 1];
        for (e, c) in &self.terms {
            dense[(e - lo) as usize] = c.clone();
        }
        (lo, dense)
    }

    fn from_dense(lo: i32, dense: Vec<BigInt>) -> Self {
        let terms =
            dense.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (lo + i as i32, c)).collect();
        LaurentPoly { terms }
    }

    /// Exact quotient in the Laurent ring, or `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((k, positive)) = divisor.as_unit() {
            let q = self.shift(-k);
            return Some(if positive { q } else { -q });
        }
        let (alo, a) = self.to_dense();
        let (blo, b) = divisor.to_dense();
        let (quot, rem) = dense_divrem_exact(&a, &b)?;
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(alo - blo, quot))
    }

    /// Gcd in the Laurent ring, normalised to minimal exponent zero and a positive
    /// leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.normalize_unit();
        }
        if other.is_zero() {
            return self.normalize_unit();
        }
        if self.as_unit().is_some() || other.as_unit().is_some() {
            return Self::one();
        }
        let (_, a) = self.to_dense();
        let (_, b) = other.to_dense();
        Self::from_dense(0, dense_gcd(a, b))
    }

    /// Associate with minimal exponent zero and positive leading coefficient.
    pub fn normalize_unit(&self) -> LaurentPoly {
        let Some(lo) = self.min_exp() else {
            return Self::zero();
        };
        let s = self.shift(-lo);
        if s.leading_coeff().unwrap().is_negative() {
            -s
        } else {
            s
        }
    }

    /// Renders in the scalar grammar, as a polynomial in `q` when every exponent
    /// is even and in `v` otherwise.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Division over Z that fails if any leading-coefficient division is inexact.
fn dense_divrem_exact(a: &[BigInt], b: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let mut r: Vec<BigInt> = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    if r.len() < b.len() {
        return Some((Vec::new(), r));
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let (qc, rem) = r[dr].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &qc * bc;
        }
        q[shift] = qc;
        trim(&mut r);
    }
    Some((q, r))
}

/// Pseudo-remainder of `a` by `b` (both non-empty, trimmed, deg a >= deg b).
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

fn dense_content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    let c = dense_content(&p);
    if !c.is_zero() && !c.is_one() {
        for x in p.iter_mut() {
            *x = &*x / &c;
        }
    }
    p
}

/// Gcd over Z[v] of two nonzero dense polynomials via the primitive PRS.
/// Leading powers of `v` are stripped first, so the result has nonzero
/// constant term.
fn dense_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    let strip = |p: &mut Vec<BigInt>| {
        let lead_zeros = p.iter().take_while(|c| c.is_zero()).count();
        p.drain(..lead_zeros);
        trim(p);
    };
    strip(&mut a);
    strip(&mut b);
    let content = dense_content(&a).gcd(&dense_content(&b));
    let mut a = primitive(a);
    let mut b = primitive(b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            a = vec![BigInt::one()];
            break;
        }
        let r = prem(&a, &b);
        a = b;
        b = primitive(r);
    }
    let mut g = primitive(a);
    if g.last().is_some_and(|c| c.is_negative()) {
        for c in g.iter_mut() {
            *c = -&*c;
        }
    }
    g.into_iter().map(|c| c * &content).collect()
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let in_q = self.lies_over_q();
        let (var, div) = if in_q { ("q", 2) } else { ("v", 1) };
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let e = e / div;
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "{var}")?,
                (1, false) => write!(f, "{mag}*{var}")?,
                (_, true) => write!(f, "{var}^{e}")?,
                (_, false) => write!(f, "{mag}*{var}^{e}")?,
            }
        }
        Ok(())
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary total order, used only for deterministic sorting.
impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.cmp(&other.terms)
    }
}

fn merge(a: &[(i32, BigInt)], b: &[(i32, BigInt)], negate_b: bool) -> Vec<(i32, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => unreachable!(),
        };
        match take {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let (e, c) = &b[j];
                out.push((*e, if negate_b { -c } else { c.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly { terms: merge(&self.terms, &rhs.terms, false) }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly { terms: merge(&self.terms, &rhs.terms, true) }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return LaurentPoly { terms: rhs.terms.iter().map(|(f, d)| (e + f, c * d)).collect() };
        }
        if rhs.terms.len() == 1 {
            return rhs * self;
        }
        let lo = self.terms[0].0 + rhs.terms[0].0;
        let hi = self.terms.last().unwrap().0 + rhs.terms.last().unwrap().0;
        let mut dense = vec![BigInt::zero(); (hi - lo) as usize + 1];
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                dense[(e + f - lo) as usize] += c * d;
            }
        }
        LaurentPoly::from_dense(lo, dense)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for (_, c) in self.terms.iter_mut() {
            *c = -&*c;
        }
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        self.terms = merge(&self.terms, &rhs.terms, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        self.terms = merge(&self.terms, &rhs.terms, true);
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LaurentPoly {
        LaurentPoly::q()
    }

    #[test]
    fn xi_squared() {
        let xi = LaurentPoly::xi();
        assert_eq!(&xi * &xi, LaurentPoly::from_pairs([(2, 1), (0, -2), (-2, 1)]));
    }

    #[test]
    fn q_times_q_inverse() {
        assert!((q() * LaurentPoly::q_pow(-1)).is_one());
    }

    #[test]
    fn cube_of_q_minus_one() {
        let p = (q() - LaurentPoly::one()).pow(3);
        let expected = LaurentPoly::from_pairs([(6, 1), (4, -3), (2, 3), (0, -1)]);
        assert_eq!(p, expected);
        // q = 4 at v = 2, so (q - 1)^3 = 27
        let at2 = p.eval(&BigRational::from_integer(2.into())).unwrap();
        assert_eq!(at2, BigRational::from_integer(27.into()));
    }

    #[test]
    fn evaluation_points() {
        let one = BigRational::one();
        assert!(LaurentPoly::xi().eval(&one).unwrap().is_zero());
        let p = LaurentPoly::one() + q();
        assert_eq!(p.eval(&one).unwrap(), BigRational::from_integer(2.into()));
        let r = (LaurentPoly::one() - LaurentPoly::q_pow(-1)).pow(2);
        let two = BigRational::from_integer(2.into());
        assert_eq!(r.eval(&two).unwrap(), BigRational::new(9.into(), 16.into()));
        assert_eq!(r.eval(&BigRational::zero()), Err(Error::ZeroEvaluationPoint));
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let p = LaurentPoly::from_pairs([(1, 2), (1, -2), (3, 0)]);
        assert!(p.is_zero());
        assert!(p.terms().is_empty());
    }

    #[test]
    fn exact_division() {
        let q2m1 = q() * q() - LaurentPoly::one();
        let qm1 = q() - LaurentPoly::one();
        assert_eq!(q2m1.exact_div(&qm1).unwrap(), q() + LaurentPoly::one());
        assert!(q().exact_div(&qm1).is_none());
        let shifted = q2m1.shift(-7);
        assert_eq!(shifted.exact_div(&qm1).unwrap(), (q() + LaurentPoly::one()).shift(-7));
        assert!(LaurentPoly::constant(3).exact_div(&LaurentPoly::constant(2)).is_none());
    }

    #[test]
    fn gcd_ignores_unit_powers_of_v() {
        let a = (q() - LaurentPoly::one()).shift(-5) * LaurentPoly::constant(6);
        let b = (q() * q() - LaurentPoly::one()).shift(3) * LaurentPoly::constant(4);
        let g = a.gcd(&b);
        assert_eq!(g, (q() - LaurentPoly::one()) * LaurentPoly::constant(2));
    }

    #[test]
    fn display_uses_q_when_possible() {
        let p = q() * q() - LaurentPoly::constant(2) * q() + LaurentPoly::q_pow(-1);
        assert_eq!(p.to_string(), "q^2 - 2*q + q^-1");
        assert_eq!(LaurentPoly::xi().to_string(), "v - v^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
