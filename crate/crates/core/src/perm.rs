//! Combinatorics of the symmetric group `S_n`.
//!
//! Permutations are stored in one-line notation with 1-based images, and
//! compose right to left: `(u * w)(j) = u(w(j))`. The simple transposition
//! `s_i = (i i+1)` acts on the right by swapping positions `i, i+1` and on the
//! left by swapping values `i, i+1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{same_degree, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u8]>,
}

/// Largest degree a [`Permutation`] can have.
pub const MAX_DEGREE: usize = 255;

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!("degree {n} outside 1..={MAX_DEGREE}")));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of 1..={n}")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images: images.into_iter().map(|x| x as u8).collect() })
    }

    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_DEGREE).contains(&n), "degree {n} out of range");
        Permutation { images: (1..=n as u8).collect() }
    }

    /// The simple transposition `s_i`, `1 <= i < n`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        check_generator(n, i)?;
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        Ok(p)
    }

    /// The transposition `(a b)`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        for x in [a, b] {
            if x == 0 || x > n {
                return Err(Error::IndexOutOfRange { what: "transposition point", index: x, min: 1, max: n });
            }
        }
        let mut p = Self::identity(n);
        p.images.swap(a - 1, b - 1);
        Ok(p)
    }

    /// `s_{i_1} s_{i_2} ... s_{i_k}`; the word need not be reduced.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut p = Self::identity(n);
        for &i in word {
            check_generator(n, i)?;
            p.images.swap(i - 1, i);
        }
        Ok(p)
    }

    /// The longest element `w_n = [n, n-1, ..., 1]`.
    pub fn longest(n: usize) -> Self {
        assert!((1..=MAX_DEGREE).contains(&n), "degree {n} out of range");
        Permutation { images: (1..=n as u8).rev().collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the point `j` (1-based).
    pub fn apply(&self, j: usize) -> usize {
        self.images[j - 1] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| x as usize == k + 1)
    }

    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        same_degree(self.degree(), other.degree())?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Self {
        Permutation { images: other.images.iter().map(|&j| self.images[j as usize - 1]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.degree()];
        for (k, &x) in self.images.iter().enumerate() {
            inv[x as usize - 1] = k as u8 + 1;
        }
        Permutation { images: inv.into_boxed_slice() }
    }

    /// Coxeter length, equal to the number of inversions.
    pub fn length(&self) -> usize {
        let im = &self.images;
        let mut count = 0;
        for a in 0..im.len() {
            for b in a + 1..im.len() {
                if im[a] > im[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `l(w s_i) < l(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.images[i - 1] > self.images[i]
    }

    /// `l(s_i w) < l(w)`: value `i + 1` appears before value `i`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let pos = |v: u8| self.images.iter().position(|&x| x == v).unwrap();
        pos(i as u8) > pos(i as u8 + 1)
    }

    /// `w s_i`.
    pub fn times_generator(&self, i: usize) -> Self {
        let mut p = self.clone();
        p.images.swap(i - 1, i);
        p
    }

    /// `s_i w`.
    pub fn generator_times(&self, i: usize) -> Self {
        let (a, b) = (i as u8, i as u8 + 1);
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| {
                    if x == a {
                        b
                    } else if x == b {
                        a
                    } else {
                        x
                    }
                })
                .collect(),
        }
    }

    /// Canonical reduced word: peel off the smallest right descent until the
    /// identity is reached, then read the recorded generators in reverse.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut peeled = Vec::with_capacity(self.length());
        while let Some(i) = (1..w.degree()).find(|&i| w.has_right_descent(i)) {
            peeled.push(i);
            w.images.swap(i - 1, i);
        }
        peeled.reverse();
        peeled
    }

    pub fn cycle_type(&self) -> Partition {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j] as usize - 1;
                len += 1;
            }
            parts.push(len);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// The diagram automorphism `rho_n`, `s_i -> s_{n-i}`, which is conjugation by `w_n`.
    pub fn rho(&self) -> Self {
        let n = self.degree() as u8;
        Permutation { images: (1..=n).map(|j| n + 1 - self.images[(n - j) as usize]).collect() }
    }

    /// The same permutation viewed in `S_m`, `m >= n`, fixing `n+1..=m`.
    pub fn embed(&self, m: usize) -> Result<Self> {
        if m < self.degree() || m > MAX_DEGREE {
            return Err(Error::IndexOutOfRange {
                what: "embedding degree",
                index: m,
                min: self.degree(),
                max: MAX_DEGREE,
            });
        }
        let mut images = self.images.to_vec();
        images.extend(self.degree() as u8 + 1..=m as u8);
        Ok(Permutation { images: images.into_boxed_slice() })
    }

    /// All `n!` permutations of degree `n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<u8> = (1..=n as u8).collect();
        let mut out = Vec::new();
        loop {
            out.push(Permutation { images: cur.clone().into_boxed_slice() });
            // next lexicographic permutation
            let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| cur[k] < cur[k + 1]) else {
                break;
            };
            let l = (k + 1..n).rev().find(|&l| cur[k] < cur[l]).unwrap();
            cur.swap(k, l);
            cur[k + 1..].reverse();
        }
        out
    }
}

fn check_generator(n: usize, i: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { what: "generator index", index: i, min: 1, max: n.saturating_sub(1) });
    }
    Ok(())
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// A partition of `n`, parts weakly decreasing.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has no parts or a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Parses `"2,1,1"` (also accepts surrounding parentheses).
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = t
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidPartition(format!("cannot parse {text:?}")))?;
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Length of the shortest elements of the class: `n - #parts`.
    pub fn min_length(&self) -> usize {
        self.n() - self.num_parts()
    }

    /// All partitions of `n`, lexicographically descending: `(n)` first, `(1^n)` last.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// The conjugacy class `C_lambda`.
    pub fn class(&self) -> Vec<Permutation> {
        Permutation::all(self.n()).into_iter().filter(|w| &w.cycle_type() == self).collect()
    }

    /// `{ w in C_lambda : l(w) = l_lambda }`.
    pub fn minimal_class_elements(&self) -> Vec<Permutation> {
        let l = self.min_length();
        Permutation::all(self.n()).into_iter().filter(|w| w.length() == l && &w.cycle_type() == self).collect()
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(Permutation::longest(3).length(), 3);
        assert_eq!(Permutation::identity(5).length(), 0);
        assert_eq!(p(&[2, 1, 4, 3]).length(), 2);
        assert_eq!(Permutation::longest(4), p(&[4, 3, 2, 1]));
        assert_eq!(Permutation::longest(4).length(), 6);
    }

    #[test]
    fn reduced_words() {
        assert_eq!(Permutation::longest(3).reduced_word(), vec![1, 2, 1]);
        assert!(Permutation::identity(4).reduced_word().is_empty());
        let t13 = Permutation::transposition(3, 1, 3).unwrap();
        assert_eq!(t13.reduced_word(), vec![1, 2, 1]);
        assert_eq!(Permutation::from_word(3, &[1, 2, 1]).unwrap(), t13);
    }

    #[test]
    fn generator_actions_match_composition() {
        let w = p(&[3, 1, 4, 2]);
        let s2 = Permutation::generator(4, 2).unwrap();
        assert_eq!(w.times_generator(2), w.compose(&s2).unwrap());
        assert_eq!(w.generator_times(2), s2.compose(&w).unwrap());
        for i in 1..4 {
            assert_eq!(w.has_right_descent(i), w.times_generator(i).length() < w.length());
            assert_eq!(w.has_left_descent(i), w.generator_times(i).length() < w.length());
        }
    }

    #[test]
    fn cycle_types_and_min_lengths() {
        let id = Permutation::identity(3);
        assert_eq!(id.cycle_type().parts(), &[1, 1, 1]);
        assert_eq!(id.cycle_type().min_length(), 0);
        let s1 = Permutation::generator(3, 1).unwrap();
        assert_eq!(s1.cycle_type().parts(), &[2, 1]);
        assert_eq!(s1.cycle_type().min_length(), 1);
        let s1s2 = Permutation::from_word(3, &[1, 2]).unwrap();
        assert_eq!(s1s2.cycle_type().parts(), &[3]);
        assert_eq!(s1s2.cycle_type().min_length(), 2);
    }

    #[test]
    fn rho_examples() {
        let s1 = Permutation::generator(3, 1).unwrap();
        assert_eq!(s1.rho(), Permutation::generator(3, 2).unwrap());
        for n in 1..6 {
            assert_eq!(Permutation::longest(n).rho(), Permutation::longest(n));
        }
        let s1s2 = Permutation::from_word(4, &[1, 2]).unwrap();
        assert_eq!(s1s2.rho(), Permutation::from_word(4, &[3, 2]).unwrap());
    }

    #[test]
    fn classes() {
        let three = Partition::new(vec![3]).unwrap();
        let mut mins = three.minimal_class_elements();
        mins.sort();
        let mut expected =
            vec![Permutation::from_word(3, &[1, 2]).unwrap(), Permutation::from_word(3, &[2, 1]).unwrap()];
        expected.sort();
        assert_eq!(mins, expected);
        assert_eq!(Partition::new(vec![2, 1]).unwrap().class().len(), 3);
    }

    #[test]
    fn partitions_are_ordered_descending() {
        let all: Vec<String> = Partition::all(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(all, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        assert_eq!(Partition::all(6).len(), 11);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::parse("(2,1,1)").unwrap().parts(), &[2, 1, 1]);
    }

    #[test]
    fn errors() {
        assert!(Permutation::new(vec![1, 1, 2]).is_err());
        assert!(Permutation::generator(3, 3).is_err());
        assert!(matches!(p(&[1, 2]).compose(&p(&[1, 2, 3])), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Permutation::all(1).len(), 1);
        assert_eq!(Permutation::all(5).len(), 120);
        let all = Permutation::all(4);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }
}
