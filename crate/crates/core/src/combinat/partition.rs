use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use super::factorial;
use crate::{Error, Result};

/// Weakly decreasing list of positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Trailing zeros are dropped; anything else out of order is rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::Invalid(alloc::format!("not a partition: {parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_rows(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        let parts = (0..cols)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// Partitions obtained by deleting one removable box, top row first.
    pub fn remove_one(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for r in 0..self.parts.len() {
            let next = self.parts.get(r + 1).copied().unwrap_or(0);
            if self.parts[r] > next {
                let mut p = self.parts.clone();
                p[r] -= 1;
                out.push(Partition::new(p).expect("removing a corner keeps a partition"));
            }
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("∅");
        }
        let body: Vec<String> = self.parts.iter().map(|p| alloc::format!("{p}")).collect();
        write!(f, "({})", body.join(","))
    }
}

/// All partitions of `n`, reverse-lexicographic: `(n)` first, `(1^n)` last.
pub fn enum_partitions(n: usize) -> Vec<Partition> {
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

/// Composition of `d` into exactly `ℓ` nonnegative parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Composition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn ell(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `λ! = ∏ λ_i!`.
    pub fn factorial(&self) -> u128 {
        self.parts.iter().map(|&p| factorial(p)).product()
    }

    /// Starting offset of each color block in the canonical object `f_λ`.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.parts
            .iter()
            .map(|&p| {
                let o = acc;
                acc += p;
                o
            })
            .collect()
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(|p| alloc::format!("{p}")).collect();
        write!(f, "({})", body.join(","))
    }
}

/// All compositions of `d` with `ell` parts, lexicographically decreasing
/// (so `(d,0,…,0)` first).
pub fn enum_compositions(ell: usize, d: usize) -> Vec<Composition> {
    fn rec(slots: usize, rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if slots == 1 {
            cur.push(rest);
            out.push(Composition { parts: cur.clone() });
            cur.pop();
            return;
        }
        for p in (0..=rest).rev() {
            cur.push(p);
            rec(slots - 1, rest - p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if ell == 0 {
        if d == 0 {
            out.push(Composition { parts: vec![] });
        }
        return out;
    }
    rec(ell, d, &mut Vec::new(), &mut out);
    out
}

/// An `ℓ`-tuple of partitions; its shape is the composition of sizes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiPartition {
    components: Vec<Partition>,
}

impl MultiPartition {
    pub fn new(components: Vec<Partition>) -> Self {
        MultiPartition { components }
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn ell(&self) -> usize {
        self.components.len()
    }

    pub fn size(&self) -> usize {
        self.components.iter().map(Partition::size).sum()
    }

    pub fn shape(&self) -> Composition {
        Composition::new(self.components.iter().map(Partition::size).collect())
    }

    /// Every way of removing one removable box from one component.
    pub fn remove_one(&self) -> Vec<MultiPartition> {
        let mut out = Vec::new();
        for (i, c) in self.components.iter().enumerate() {
            for smaller in c.remove_one() {
                let mut comps = self.components.clone();
                comps[i] = smaller;
                out.push(MultiPartition::new(comps));
            }
        }
        out
    }

    /// Rotates components: position `(i + shift) mod ℓ` receives component `i`.
    pub fn rotate(&self, shift: usize) -> MultiPartition {
        let ell = self.ell();
        let mut comps = vec![Partition::empty(); ell];
        for (i, c) in self.components.iter().enumerate() {
            comps[(i + shift) % ell] = c.clone();
        }
        MultiPartition::new(comps)
    }
}

impl fmt::Debug for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.components.iter().map(|c| alloc::format!("{c}")).collect();
        write!(f, "({})", body.join(","))
    }
}

/// Cartesian product of the partition lists of each part of `λ`; the first
/// component varies slowest.
pub fn enum_multipartitions(lambda: &Composition) -> Vec<MultiPartition> {
    let mut out = vec![Vec::new()];
    for &n in lambda.parts() {
        let ps = enum_partitions(n);
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Partition>| {
                ps.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(MultiPartition::new).collect()
}
