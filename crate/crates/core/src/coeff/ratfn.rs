use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Signed;

use super::LaurentPoly;
use crate::error::{Error, Result};

/// An element of the fraction field `Q(v)`, stored as a reduced quotient of
/// integer Laurent polynomials.
///
/// Canonical form: `gcd(num, den) = 1`, `den` has minimal exponent zero and a
/// positive leading coefficient. Two values are equal iff their canonical forms
/// are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return RationalFn { num, den: LaurentPoly::one() };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) =
            if g.is_one() { (num, den) } else { (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap()) };
        let lo = den.min_exp().unwrap();
        if lo != 0 {
            num = num.shift(-lo);
            den = den.shift(-lo);
        }
        if den.leading_coeff().unwrap().is_negative() {
            num = -num;
            den = -den;
        }
        RationalFn { num, den }
    }

    pub fn zero() -> Self {
        RationalFn { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        LaurentPoly::one().into()
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as a Laurent polynomial, if the denominator is a unit.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        self.num.exact_div(&self.den)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RationalFn) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Equality by cross-multiplication, independent of canonical form.
    pub fn cross_eq(&self, other: &RationalFn) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl From<LaurentPoly> for RationalFn {
    fn from(p: LaurentPoly) -> Self {
        Self::reduce(p, LaurentPoly::one())
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFn({self})")
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        if self.den == rhs.den {
            return RationalFn::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RationalFn::reduce(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`RationalFn::checked_div`] otherwise.
impl Div for &RationalFn {
    type Output = RationalFn;
    fn div(self, rhs: &RationalFn) -> RationalFn {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(pairs: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn self_division_is_one() {
        let qm1: RationalFn = lp(&[(2, 1), (0, -1)]).into();
        assert_eq!(qm1.checked_div(&qm1).unwrap(), RationalFn::one());
    }

    #[test]
    fn adding_reciprocals_of_v() {
        let inv_v = RationalFn::new(LaurentPoly::one(), LaurentPoly::v()).unwrap();
        let sum = &inv_v + &inv_v;
        assert_eq!(sum, RationalFn::new(LaurentPoly::constant(2), LaurentPoly::v()).unwrap());
        // v is a unit, so the canonical form has a trivial denominator.
        assert_eq!(sum.to_laurent().unwrap(), LaurentPoly::v_pow(-1).scale(&2.into()));
    }

    #[test]
    fn cancels_common_factor() {
        let r = RationalFn::new(lp(&[(4, 1), (0, -1)]), lp(&[(2, 1), (0, -1)])).unwrap();
        assert_eq!(r, RationalFn::from(lp(&[(2, 1), (0, 1)])));
        let three = num_rational::BigRational::from_integer(3.into());
        assert_eq!(
            r.num().eval(&three).unwrap() / r.den().eval(&three).unwrap(),
            num_rational::BigRational::from_integer(10.into())
        );
    }

    #[test]
    fn zero_denominator_and_inverse() {
        assert_eq!(RationalFn::new(LaurentPoly::one(), LaurentPoly::zero()), Err(Error::DivisionByZero));
        assert_eq!(RationalFn::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn canonical_equality_matches_cross_multiplication() {
        let a = RationalFn::new(lp(&[(3, 2), (1, -2)]), lp(&[(5, -4)])).unwrap();
        let b = RationalFn::new(lp(&[(2, -1), (0, 1)]), lp(&[(4, 2)])).unwrap();
        assert!(a.cross_eq(&b));
        assert_eq!(a, b);
    }
}
