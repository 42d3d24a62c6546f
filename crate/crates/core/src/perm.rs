//! Permutations of `{0, …, n-1}` in one-line notation.
//!
//! Internally 0-based; serialized 1-based to match the mathematical
//! convention `σ: {1..d} → {1..d}`.

use alloc::vec::Vec;
use core::fmt;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Bijection of `{0..n}`; `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Validates that `images` is a bijection.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Invalid(alloc::format!("not a permutation: {images:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    /// From 1-based one-line notation.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Invalid("one-based permutation contains 0".into()));
        }
        Self::new(images.iter().map(|&x| x - 1).collect())
    }

    /// Adjacent transposition swapping `i` and `i+1` (0-based `i`).
    pub fn adjacent(n: usize, i: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i, i + 1);
        Perm(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ rhs`: apply `rhs` first.
    pub fn compose(&self, rhs: &Perm) -> Perm {
        debug_assert_eq!(self.len(), rhs.len());
        Perm(rhs.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = alloc::vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn pow(&self, e: usize) -> Perm {
        (0..e).fold(Perm::identity(self.len()), |acc, _| self.compose(&acc))
    }

    pub fn is_involution(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| self.0[x] == i)
    }

    pub fn inversions(&self) -> usize {
        (0..self.len())
            .tuple_combinations()
            .filter(|&(i, j)| self.0[i] > self.0[j])
            .count()
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i64 {
        if self.inversions() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Word `[i_1, …, i_m]` (0-based) with `self = s_{i_1} ∘ … ∘ s_{i_m}`
    /// in adjacent transpositions, of minimal length.
    pub fn adjacent_word(&self) -> Vec<usize> {
        let mut cur = self.0.clone();
        let mut rev = Vec::new();
        loop {
            match (0..cur.len().saturating_sub(1)).find(|&i| cur[i] > cur[i + 1]) {
                Some(i) => {
                    cur.swap(i, i + 1);
                    rev.push(i);
                }
                None => break,
            }
        }
        rev.reverse();
        rev
    }

    /// Extends to `{0..n+extra}` fixing the new points.
    pub fn extend(&self, extra: usize) -> Perm {
        let mut v = self.0.clone();
        v.extend(self.len()..self.len() + extra);
        Perm(v)
    }

    /// All permutations of `{0..n}` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Perm> {
        (0..n).permutations(n).map(Perm).collect()
    }

    /// Lexicographic rank among all permutations of the same length.
    pub fn lex_rank(&self) -> usize {
        let n = self.len();
        let mut rank = 0;
        let mut fact = (1..n).product::<usize>().max(1);
        for i in 0..n {
            let smaller = self.0[i + 1..].iter().filter(|&&x| x < self.0[i]).count();
            rank += smaller * fact;
            if n - 1 - i > 0 {
                fact /= n - 1 - i;
            }
        }
        rank
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_based())
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Perm::from_one_based(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_reproduces_permutation() {
        for n in 0..=5 {
            for p in Perm::all(n) {
                let w = p.adjacent_word();
                assert_eq!(w.len(), p.inversions());
                let prod = w
                    .iter()
                    .fold(Perm::identity(n), |acc, &i| acc.compose(&Perm::adjacent(n, i)));
                assert_eq!(prod, p);
            }
        }
    }

    #[test]
    fn lex_rank_matches_enumeration() {
        for (i, p) in Perm::all(4).iter().enumerate() {
            assert_eq!(p.lex_rank(), i);
        }
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::new(alloc::vec![0, 0]).is_err());
        assert!(Perm::from_one_based(&[0, 1]).is_err());
    }
}
