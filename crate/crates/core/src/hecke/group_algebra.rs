use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{same_degree, Result};
use crate::hecke::HeckeElement;
use crate::perm::{Partition, Permutation};

/// An element of the integral group algebra `Z[S_n]`, the `q = 1` shadow of `H_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    n: usize,
    terms: BTreeMap<Permutation, BigInt>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement { n, terms: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Permutation) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, w: Permutation, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// The class sum `sum_{w in C_lambda} w`.
    pub fn class_sum(lambda: &Partition) -> Self {
        let mut g = Self::zero(lambda.n());
        for w in lambda.class() {
            g.add_term(w, BigInt::from(1));
        }
        g
    }
}

/// `T_w -> w`, `v -> 1`.
pub fn specialize_q1(h: &HeckeElement) -> GroupAlgebraElement {
    let mut g = GroupAlgebraElement::zero(h.degree());
    for (w, c) in h.terms() {
        g.add_term(w.clone(), c.eval_at_one());
    }
    g
}

/// Convolution in `Z[S_n]`: `(sum a_u u)(sum b_w w) = sum a_u b_w (uw)`.
pub fn group_algebra_mul(a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    same_degree(a.n, b.n)?;
    let mut out = GroupAlgebraElement::zero(a.n);
    for (u, x) in &a.terms {
        for (w, y) in &b.terms {
            out.add_term(u.compose_unchecked(w), x * y);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_relation_specializes_to_involution() {
        let s = HeckeElement::generator(3, 1).unwrap();
        let g = specialize_q1(&(&s * &s));
        assert_eq!(g.terms().count(), 1);
        assert_eq!(g.coeff(&Permutation::identity(3)), BigInt::from(1));
    }

    #[test]
    fn convolution_matches_composition() {
        let a = specialize_q1(&HeckeElement::from_word(4, &[1, 2]).unwrap());
        let b = specialize_q1(&HeckeElement::from_word(4, &[3]).unwrap());
        let ab = group_algebra_mul(&a, &b).unwrap();
        assert_eq!(ab.coeff(&Permutation::from_word(4, &[1, 2, 3]).unwrap()), BigInt::from(1));
    }
}
