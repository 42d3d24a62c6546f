//! The rook monoid `IS_d` and the epimorphism `ℂ[S(2,d)] → ℂ[IS_d]`,
//! `s_i ↦ s_i`, `s_0 ↦ 2ε₁ − e`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

use super::{span, TensorSpace};
use crate::exactnum::{Echelon, Rational, Scalar};
use crate::galgebra::GroupoidAlgebra;
use crate::report::Report;
use crate::wreath::{check_relations, presentation};
use crate::Result;

/// A bijection between subsets of `{0,…,d−1}`; `None` where undefined.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RookElem(Vec<Option<usize>>);

impl RookElem {
    pub fn new(map: Vec<Option<usize>>) -> Option<Self> {
        let d = map.len();
        let mut seen = vec![false; d];
        for &y in map.iter().flatten() {
            if y >= d || seen[y] {
                return None;
            }
            seen[y] = true;
        }
        Some(RookElem(map))
    }

    pub fn identity(d: usize) -> Self {
        RookElem((0..d).map(Some).collect())
    }

    /// The adjacent transposition `s_i = (i, i+1)`, 1-based `i`.
    pub fn transposition(d: usize, i: usize) -> Self {
        let mut m: Vec<Option<usize>> = (0..d).map(Some).collect();
        m.swap(i - 1, i);
        RookElem(m)
    }

    /// `ε₁`: the identity on `{2,…,d}`.
    pub fn epsilon1(d: usize) -> Self {
        RookElem((0..d).map(|i| (i > 0).then_some(i)).collect())
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.0[x]
    }

    /// `(self ∘ rhs)(x) = self(rhs(x))`.
    pub fn compose(&self, rhs: &RookElem) -> RookElem {
        RookElem(rhs.0.iter().map(|y| y.and_then(|y| self.0[y])).collect())
    }

    pub fn domain(&self) -> Vec<usize> {
        (0..self.d()).filter(|&x| self.0[x].is_some()).collect()
    }

    /// All partial bijections, in lexicographic order of the map.
    pub fn all(d: usize) -> Vec<RookElem> {
        let mut out = Vec::new();
        let mut cur = vec![None; d];
        let mut used = vec![false; d];
        fn rec(i: usize, cur: &mut Vec<Option<usize>>, used: &mut Vec<bool>, out: &mut Vec<RookElem>) {
            if i == cur.len() {
                out.push(RookElem(cur.clone()));
                return;
            }
            cur[i] = None;
            rec(i + 1, cur, used, out);
            for y in 0..cur.len() {
                if !used[y] {
                    used[y] = true;
                    cur[i] = Some(y);
                    rec(i + 1, cur, used, out);
                    used[y] = false;
                }
            }
            cur[i] = None;
        }
        rec(0, &mut cur, &mut used, &mut out);
        out
    }
}

impl core::fmt::Debug for RookElem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let parts: Vec<_> = self
            .0
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|y| format!("{}→{}", x + 1, y + 1)))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `|IS_d| = Σ_j C(d,j)²·j!`.
pub fn is_order(d: usize) -> u128 {
    let binom = |n: u128, k: u128| (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1));
    (0..=d as u128).map(|j| binom(d as u128, j).pow(2) * crate::combinat::factorial(j as usize)).sum()
}

/// An element of `ℂ[IS_d]` (rational coefficients suffice here).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RookAlgebra(BTreeMap<RookElem, Rational>);

impl RookAlgebra {
    pub fn basis(x: RookElem) -> Self {
        RookAlgebra(BTreeMap::from([(x, Rational::one())]))
    }

    pub fn terms(&self) -> &BTreeMap<RookElem, Rational> {
        &self.0
    }

    fn add_term(&mut self, x: RookElem, c: Rational) {
        let v = self.0.get(&x).map_or(c.clone(), |old| old.plus(&c));
        if v.is_zero() {
            self.0.remove(&x);
        } else {
            self.0.insert(x, v);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (x, c) in &rhs.0 {
            out.add_term(x.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = RookAlgebra::default();
        for (x, c) in &self.0 {
            out.add_term(x.clone(), c.times(s));
        }
        out
    }

    /// `a·b` with `b` applied first.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = RookAlgebra::default();
        for (a, ca) in &self.0 {
            for (b, cb) in &rhs.0 {
                out.add_term(a.compose(b), ca.times(cb));
            }
        }
        out
    }
}

/// Images of `s_0, s_1, …, s_{d−1}`.
pub fn rook_generators(d: usize) -> Vec<RookAlgebra> {
    let e = RookAlgebra::basis(RookElem::identity(d));
    let eps = RookAlgebra::basis(RookElem::epsilon1(d));
    let mut out = vec![eps.scale(&Rational::from_int(2)).add(&e.scale(&Rational::from_int(-1)))];
    out.extend((1..d).map(|i| RookAlgebra::basis(RookElem::transposition(d, i))));
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct RookSummary {
    pub d: usize,
    pub order: u128,
    pub generated_dim: usize,
}

/// Relations of `S(2,d)` on the images, the identities of the proof, and
/// surjectivity by span growth.
pub fn rook_epimorphism_check(d: usize) -> Result<(RookSummary, Report)> {
    if d == 0 || d > 5 {
        return Err(crate::Error::OutOfRange { index: d, max: 5 });
    }
    let gens = rook_generators(d);
    let one = RookAlgebra::basis(RookElem::identity(d));
    let mut report = check_relations(&presentation(2, d), &gens, &one, RookAlgebra::mul);
    report.push("(2ε₁−e)² = e", gens[0].mul(&gens[0]) == one, "");
    if d >= 2 {
        let eps = RookAlgebra::basis(RookElem::epsilon1(d));
        let s1 = &gens[1];
        let lhs = eps.mul(s1).mul(&eps).mul(s1);
        let rhs = s1.mul(&eps).mul(s1).mul(&eps);
        let on_rest = RookAlgebra::basis(RookElem((0..d).map(|i| (i >= 2).then_some(i)).collect()));
        report.push("ε₁s₁ε₁s₁ = s₁ε₁s₁ε₁", lhs == rhs && lhs == on_rest, format!("{lhs:?}"));
    }
    let all = RookElem::all(d);
    let index: BTreeMap<&RookElem, usize> = all.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let sparse = |a: &RookAlgebra| {
        let mut v: Vec<(usize, Rational)> = a.0.iter().map(|(x, c)| (index[x], c.clone())).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    };
    let mut ech = Echelon::new(all.len(), Rational::zero());
    ech.insert(&sparse(&one));
    let mut basis = vec![one];
    let mut next = 0;
    while next < basis.len() {
        let b = basis[next].clone();
        next += 1;
        for g in &gens {
            let p = g.mul(&b);
            if ech.insert(&sparse(&p)) {
                basis.push(p);
            }
        }
    }
    let order = is_order(d);
    report.push(
        "surjective",
        basis.len() as u128 == order && all.len() as u128 == order,
        format!("generated dim {}, |IS_d| = {order}, enumerated {}", basis.len(), all.len()),
    );
    Ok((RookSummary { d, order, generated_dim: basis.len() }, report))
}

/// `|IS_d| − dim` of the image of `A_(2,d)` on `V^⊗d` with `k = (n−1, 1)`:
/// the kernel of Solomon's action of `ℂ[IS_d]`, measured.
pub fn rook_kernel_dim(d: usize, n: usize, cap: usize) -> Result<usize> {
    if n < 2 {
        return Err(crate::Error::Invalid("n must be at least 2".into()));
    }
    let ts = TensorSpace::new(vec![n - 1, 1], d, cap)?;
    let alg = GroupoidAlgebra::new(2, d, crate::DEFAULT_CAP)?;
    let rank = span(&ts.a_image(&alg), ts.dim()).rank();
    Ok(is_order(d) as usize - rank)
}

