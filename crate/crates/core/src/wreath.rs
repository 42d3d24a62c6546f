//! The generalized symmetric group `S(ℓ,d) = C_ℓ ≀ S_d` as colored
//! permutations.
//!
//! An element is `D(c)·P(π)` where `P(π)e_j = e_{π(j)}` and `D(c)` is diagonal
//! with entries `ξ^{c_i}`. Row `i` of the monomial matrix has its nonzero
//! entry `ξ^{c_i}` in column `π⁻¹(i)`.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::combinat::factorial;
use crate::exactnum::{CycField, CycNum, ExactMatrix, Matrix};
use crate::perm::Perm;
use crate::report::Report;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WreathElem {
    ell: usize,
    perm: Perm,
    colors: Vec<usize>,
}

impl WreathElem {
    pub fn new(ell: usize, perm: Perm, colors: Vec<usize>) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidOrder(0));
        }
        if colors.len() != perm.len() {
            return Err(Error::Dimension(alloc::format!(
                "{} colors for a permutation of {} points",
                colors.len(),
                perm.len()
            )));
        }
        let colors = colors.into_iter().map(|c| c % ell).collect();
        Ok(WreathElem { ell, perm, colors })
    }

    pub fn identity(ell: usize, d: usize) -> Self {
        WreathElem { ell, perm: Perm::identity(d), colors: vec![0; d] }
    }

    pub fn from_perm(ell: usize, perm: Perm) -> Self {
        let d = perm.len();
        WreathElem { ell, perm, colors: vec![0; d] }
    }

    pub fn diagonal(ell: usize, colors: Vec<usize>) -> Self {
        let d = colors.len();
        WreathElem { ell, perm: Perm::identity(d), colors: colors.into_iter().map(|c| c % ell).collect() }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn d(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    /// Exponent of `ξ` in row `i` of the monomial matrix.
    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.colors.iter().all(|&c| c == 0)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.ell != rhs.ell || self.d() != rhs.d() {
            return Err(Error::ParameterMismatch);
        }
        Ok(self.mul(rhs))
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let inv = self.perm.inverse();
        let colors = (0..self.d())
            .map(|i| (self.colors[i] + rhs.colors[inv.apply(i)]) % self.ell)
            .collect();
        WreathElem { ell: self.ell, perm: self.perm.compose(&rhs.perm), colors }
    }

    pub fn inverse(&self) -> Self {
        let colors = (0..self.d())
            .map(|i| (self.ell - self.colors[self.perm.apply(i)]) % self.ell)
            .collect();
        WreathElem { ell: self.ell, perm: self.perm.inverse(), colors }
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::identity(self.ell, self.d()), |acc, _| acc.mul(self))
    }

    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.mul(self).mul(&g.inverse())
    }

    pub fn monomial_matrix(&self, field: &CycField) -> ExactMatrix {
        let d = self.d();
        let mut m = Matrix::zeros(d, d, field.zero());
        for j in 0..d {
            let i = self.perm.apply(j);
            m.set(i, j, field.root(self.colors[i] as i64));
        }
        m
    }

    /// Sum of the color exponents, i.e. the exponent of the product of the
    /// nonzero matrix entries.
    pub fn color_sum(&self) -> usize {
        self.colors.iter().sum::<usize>() % self.ell
    }

    /// `det = sgn(π)·ξ^{Σ c}`.
    pub fn det(&self, field: &CycField) -> CycNum {
        let r = field.root(self.color_sum() as i64);
        if self.perm.sign() == 1 {
            r
        } else {
            -&r
        }
    }

    /// Position of this element in [`enum_group`].
    pub fn index(&self) -> usize {
        let colors = self.colors.iter().fold(0, |acc, &c| acc * self.ell + c);
        self.perm.lex_rank() * self.ell.pow(self.d() as u32) + colors
    }

    pub fn random<R: Rng + ?Sized>(ell: usize, d: usize, rng: &mut R) -> Self {
        let mut img: Vec<usize> = (0..d).collect();
        for i in (1..d).rev() {
            img.swap(i, rng.gen_range(0..=i));
        }
        let colors = (0..d).map(|_| rng.gen_range(0..ell)).collect();
        WreathElem { ell, perm: Perm::new(img).expect("shuffle"), colors }
    }

    /// The same element acting on `d + extra` strands, fixing the new ones.
    pub fn embed(&self, extra: usize) -> Self {
        let mut colors = self.colors.clone();
        colors.extend(core::iter::repeat(0).take(extra));
        WreathElem { ell: self.ell, perm: self.perm.extend(extra), colors }
    }
}

impl fmt::Debug for WreathElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?};{:?})", self.perm, self.colors)
    }
}

impl Serialize for WreathElem {
    fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("WreathElem", 2)?;
        st.serialize_field("perm", &self.perm)?;
        st.serialize_field("colors", &self.colors)?;
        st.end()
    }
}

/// `|S(ℓ,d)| = ℓ^d·d!`, saturating.
pub fn group_order(ell: usize, d: usize) -> u128 {
    (ell as u128).saturating_pow(d as u32).saturating_mul(factorial(d))
}

/// `[s_0, s_1, …, s_{d-1}]`.
pub fn generators(ell: usize, d: usize) -> Result<Vec<WreathElem>> {
    if ell == 0 {
        return Err(Error::InvalidOrder(0));
    }
    if d == 0 {
        return Err(Error::Invalid("S(ℓ,0) has no generators".into()));
    }
    let mut c = vec![0; d];
    c[0] = 1;
    let mut out = vec![WreathElem::diagonal(ell, c)];
    out.extend((0..d - 1).map(|i| WreathElem::from_perm(ell, Perm::adjacent(d, i))));
    Ok(out)
}

/// Diagonal element with `ξ` at position `j` (1-based).
pub fn s0_j(ell: usize, d: usize, j: usize) -> Result<WreathElem> {
    if j == 0 || j > d {
        return Err(Error::OutOfRange { index: j, max: d });
    }
    let mut c = vec![0; d];
    c[j - 1] = 1;
    Ok(WreathElem::diagonal(ell, c))
}

/// `s_{j-1}⋯s_1 s_0 s_1⋯s_{j-1}` as a word in the generators (indices into
/// [`generators`]).
pub fn s0_j_word(j: usize) -> Vec<usize> {
    let mut w: Vec<usize> = (1..j).rev().collect();
    w.push(0);
    w.extend(1..j);
    w
}

/// Product of generators along a word.
pub fn eval_word(gens: &[WreathElem], word: &[usize], ell: usize, d: usize) -> WreathElem {
    word.iter().fold(WreathElem::identity(ell, d), |acc, &i| acc.mul(&gens[i]))
}

/// Writes `x` as a word in `s_0, …, s_{d-1}`: diagonal part via the
/// `s_0^{(j)}` words, permutation part via a reduced word.
pub fn generator_word(x: &WreathElem) -> Vec<usize> {
    let mut word = Vec::new();
    for (j, &c) in x.colors.iter().enumerate() {
        for _ in 0..c {
            word.extend(s0_j_word(j + 1));
        }
    }
    word.extend(x.perm.adjacent_word().into_iter().map(|i| i + 1));
    word
}

/// All `ℓ^d·d!` elements, ordered by permutation then colors.
pub fn enum_group(ell: usize, d: usize, cap: usize) -> Result<Vec<WreathElem>> {
    if ell == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let order = group_order(ell, d);
    if order > cap as u128 {
        return Err(Error::cap("S(ℓ,d)", order, cap));
    }
    let diag_count = ell.pow(d as u32);
    let mut out = Vec::with_capacity(order as usize);
    for perm in Perm::all(d) {
        for idx in 0..diag_count {
            let mut colors = vec![0; d];
            let mut rest = idx;
            for slot in colors.iter_mut().rev() {
                *slot = rest % ell;
                rest /= ell;
            }
            out.push(WreathElem { ell, perm: perm.clone(), colors });
        }
    }
    Ok(out)
}

/// `x ∈ G(ℓ,k,d)`: the product of the nonzero entries of the monomial matrix
/// lies in `C_{ℓ/k}`, i.e. `k | Σ c_j`.
pub fn gkd_member(x: &WreathElem, k: usize) -> Result<bool> {
    check_divisor(x.ell, k)?;
    Ok(x.color_sum() % k == 0)
}

pub(crate) fn check_divisor(ell: usize, k: usize) -> Result<()> {
    if k == 0 || ell % k != 0 {
        return Err(Error::NotDivisor { k: k as u32, ell: ell as u32 });
    }
    Ok(())
}

/// Relation `lhs = rhs` between words in the generators `s_0..s_{d-1}`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

/// The defining relations of `S(ℓ,d)`.
pub fn presentation(ell: usize, d: usize) -> Vec<Relation> {
    let rel = |name: String, lhs: Vec<usize>, rhs: Vec<usize>| Relation { name, lhs, rhs };
    let mut out = vec![rel("s0^l=e".into(), vec![0; ell], vec![])];
    for i in 1..d {
        out.push(rel(alloc::format!("s{i}^2=e"), vec![i, i], vec![]));
    }
    if d >= 2 {
        out.push(rel("s0s1s0s1=s1s0s1s0".into(), vec![0, 1, 0, 1], vec![1, 0, 1, 0]));
    }
    for i in 1..d.saturating_sub(1) {
        out.push(rel(
            alloc::format!("s{i}s{}s{i}=s{}s{i}s{}", i + 1, i + 1, i + 1),
            vec![i, i + 1, i],
            vec![i + 1, i, i + 1],
        ));
    }
    for i in 0..d {
        for j in i + 2..d {
            out.push(rel(alloc::format!("s{i}s{j}=s{j}s{i}"), vec![i, j], vec![j, i]));
        }
    }
    out
}

/// Checks every relation on concrete images `gens` of the generators.
pub fn check_relations<T: PartialEq + fmt::Debug>(
    rels: &[Relation],
    gens: &[T],
    one: &T,
    mul: impl Fn(&T, &T) -> T,
) -> Report {
    let mut report = Report::new();
    let eval = |w: &[usize]| w.iter().fold(None::<T>, |acc, &i| match acc {
        None => Some(mul(one, &gens[i])),
        Some(a) => Some(mul(&a, &gens[i])),
    });
    for r in rels {
        let lhs = eval(&r.lhs);
        let rhs = eval(&r.rhs);
        let ok = match (&lhs, &rhs) {
            (Some(a), Some(b)) => a == b,
            (Some(a), None) | (None, Some(a)) => a == one,
            (None, None) => true,
        };
        report.push(r.name.clone(), ok, if ok { String::new() } else { alloc::format!("{lhs:?} != {rhs:?}") });
    }
    report
}

/// The defining relations checked on the monomial generators, plus the order of the
/// generated group.
pub fn check_presentation(ell: usize, d: usize, cap: usize) -> Result<Report> {
    let gens = generators(ell, d)?;
    let mut report = check_relations(&presentation(ell, d), &gens, &WreathElem::identity(ell, d), WreathElem::mul);
    let order = group_order(ell, d);
    if order > cap as u128 {
        return Err(Error::cap("S(ℓ,d)", order, cap));
    }
    let generated = closure(&gens, WreathElem::identity(ell, d));
    report.push(
        "generated order",
        generated.len() as u128 == order,
        alloc::format!("{} generated, l^d*d! = {order}", generated.len()),
    );
    Ok(report)
}

/// Subgroup generated by `gens`, by breadth-first search.
pub fn closure(gens: &[WreathElem], one: WreathElem) -> BTreeSet<WreathElem> {
    let mut seen = BTreeSet::from([one.clone()]);
    let mut queue = VecDeque::from([one]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Scalar;

    #[test]
    fn basic_examples() {
        let g = generators(3, 2).unwrap();
        assert_eq!(g[0].colors(), &[1, 0]);
        assert_eq!(g[1].perm().one_based(), vec![2, 1]);
        assert_eq!(generators(4, 1).unwrap().len(), 1);
        let s0 = &generators(2, 2).unwrap()[0];
        assert!(s0.mul(s0).is_identity());
        assert_eq!(enum_group(2, 2, 100).unwrap().len(), 8);
        assert!(s0_j(2, 2, 3).is_err());
    }

    #[test]
    fn multiplication_matches_matrices() {
        let field = CycField::new(3).unwrap();
        let elems = enum_group(3, 2, 1000).unwrap();
        for a in &elems {
            assert!(a.mul(&a.inverse()).is_identity());
            for b in &elems {
                assert_eq!(a.mul(b).monomial_matrix(&field), a.monomial_matrix(&field).mul(&b.monomial_matrix(&field)));
            }
        }
        for (i, x) in elems.iter().enumerate() {
            assert_eq!(x.index(), i);
        }
    }

    #[test]
    fn s0_words_equal_diagonal_forms() {
        for d in 1..=5 {
            let gens = generators(3, d).unwrap();
            for j in 1..=d {
                assert_eq!(eval_word(&gens, &s0_j_word(j), 3, d), s0_j(3, d, j).unwrap());
            }
        }
    }

    #[test]
    fn index_k_subgroups() {
        for ell in 1..=4 {
            for d in 1..=3 {
                let all = enum_group(ell, d, 10_000).unwrap();
                for k in (1..=ell).filter(|k| ell % k == 0) {
                    let n = all.iter().filter(|x| gkd_member(x, k).unwrap()).count();
                    assert_eq!(n * k, all.len());
                }
            }
        }
        assert!(gkd_member(&WreathElem::identity(4, 2), 3).is_err());
        let s0 = &generators(2, 2).unwrap()[0];
        assert!(!gkd_member(s0, 2).unwrap());
        let field = CycField::new(2).unwrap();
        assert_eq!(s0.det(&field), field.from_int(-1));
        assert!(!s0.det(&field).is_one());
    }

    #[test]
    fn presentation_holds() {
        for ell in 1..=4 {
            for d in 1..=4 {
                let r = check_presentation(ell, d, 1_000_000).unwrap();
                assert!(r.passed(), "{ell} {d}: {:?}", r.failures().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn words_evaluate_back() {
        let gens = generators(3, 3).unwrap();
        for x in enum_group(3, 3, 1000).unwrap() {
            assert_eq!(eval_word(&gens, &generator_word(&x), 3, 3), x);
        }
    }
}
