//! Specht modules in the polytabloid basis.
//!
//! `e_T = Σ_{π ∈ C_T} sgn(π)·{πT}`; a permuted polytabloid `e_{σT}` is
//! rewritten in the standard basis by column sorting plus Garnir relations.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use itertools::Itertools;

use super::{standard_tableaux, MultiPartition, Partition, StdTableau};
use crate::exactnum::{Matrix, Rational};
use crate::perm::Perm;
use crate::{Error, Result};

type Rows = Vec<Vec<usize>>;
type IntVec = BTreeMap<usize, i64>;

/// The Specht module `𝒮_μ` with matrices of the adjacent transpositions.
#[derive(Clone, Debug)]
pub struct SpechtRep {
    shape: Partition,
    tableaux: Vec<StdTableau>,
    /// `gens[i]` is the matrix of the transposition swapping `i+1` and `i+2`.
    gens: Vec<Matrix<Rational>>,
}

impl SpechtRep {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn degree(&self) -> usize {
        self.shape.size()
    }

    pub fn tableaux(&self) -> &[StdTableau] {
        &self.tableaux
    }

    pub fn generators(&self) -> &[Matrix<Rational>] {
        &self.gens
    }

    /// Matrix of an arbitrary permutation of `{1..n}`, as a product of
    /// generator matrices along a reduced word.
    pub fn matrix_of(&self, sigma: &Perm) -> Matrix<Rational> {
        debug_assert_eq!(sigma.len(), self.degree());
        let mut acc = Matrix::identity(self.dim(), Rational::zero());
        for i in sigma.adjacent_word() {
            acc = acc.mul(&self.gens[i]);
        }
        acc
    }
}

struct Straightener {
    index: BTreeMap<Rows, usize>,
    memo: BTreeMap<Rows, IntVec>,
}

impl Straightener {
    fn new(tableaux: &[StdTableau]) -> Self {
        let index = tableaux
            .iter()
            .enumerate()
            .map(|(i, t)| (t.rows().to_vec(), i))
            .collect();
        Straightener { index, memo: BTreeMap::new() }
    }

    /// Coordinates of `e_T` for an arbitrary numbering `T` of the shape.
    fn express(&mut self, rows: Rows) -> IntVec {
        let (sign, sorted) = column_sort(rows);
        let v = self.express_sorted(sorted);
        if sign == 1 {
            v
        } else {
            v.into_iter().map(|(k, c)| (k, -c)).collect()
        }
    }

    fn express_sorted(&mut self, t: Rows) -> IntVec {
        if let Some(v) = self.memo.get(&t) {
            return v.clone();
        }
        if let Some(&i) = self.index.get(&t) {
            return BTreeMap::from([(i, 1)]);
        }
        let (r, j) = first_row_descent(&t).expect("column-sorted non-standard tableau has a row descent");
        let a_pos: Vec<(usize, usize)> = (r..t.len()).filter(|&i| t[i].len() > j).map(|i| (i, j)).collect();
        let b_pos: Vec<(usize, usize)> = (0..=r).map(|i| (i, j + 1)).collect();
        let old: Vec<usize> = a_pos.iter().chain(&b_pos).map(|&(i, c)| t[i][c]).collect();
        let a_set: Vec<usize> = a_pos.iter().map(|&(i, c)| t[i][c]).sorted().collect();

        let mut acc = IntVec::new();
        for chosen in old.iter().copied().sorted().combinations(a_pos.len()) {
            if chosen == a_set {
                continue;
            }
            let rest: Vec<usize> = old.iter().copied().filter(|x| !chosen.contains(x)).sorted().collect();
            let new: Vec<usize> = chosen.iter().chain(&rest).copied().collect();
            let mut next = t.clone();
            for (&(i, c), &x) in a_pos.iter().chain(&b_pos).zip(&new) {
                next[i][c] = x;
            }
            let sign = arrangement_sign(&old, &new);
            for (k, c) in self.express(next) {
                *acc.entry(k).or_insert(0) -= sign * c;
            }
        }
        acc.retain(|_, c| *c != 0);
        self.memo.insert(t, acc.clone());
        acc
    }
}

/// Sorts each column increasingly; returns the sign of the sorting permutation.
fn column_sort(mut rows: Rows) -> (i64, Rows) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut sign = 1;
    for c in 0..ncols {
        let col: Vec<usize> = rows.iter().take_while(|r| r.len() > c).map(|r| r[c]).collect();
        let inversions = col.iter().tuple_combinations().filter(|(a, b)| a > b).count();
        if inversions % 2 == 1 {
            sign = -sign;
        }
        for (i, x) in col.into_iter().sorted().enumerate() {
            rows[i][c] = x;
        }
    }
    (sign, rows)
}

fn first_row_descent(t: &Rows) -> Option<(usize, usize)> {
    t.iter()
        .enumerate()
        .find_map(|(r, row)| (0..row.len().saturating_sub(1)).find(|&j| row[j] > row[j + 1]).map(|j| (r, j)))
}

/// Sign of the permutation of values taking the arrangement `old` to `new`.
fn arrangement_sign(old: &[usize], new: &[usize]) -> i64 {
    let pos: Vec<usize> = new.iter().map(|x| old.iter().position(|y| y == x).unwrap()).collect();
    let inv = pos.iter().tuple_combinations().filter(|(a, b)| a > b).count();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Applies `σ` to the entries of a tableau (`σ` is 0-based, entries 1-based).
pub(crate) fn act_on_rows(sigma: &Perm, rows: &[Vec<usize>]) -> Rows {
    rows.iter()
        .map(|r| r.iter().map(|&x| sigma.apply(x - 1) + 1).collect())
        .collect()
}

/// Builds `𝒮_μ` with generator matrices computed by Garnir straightening.
pub fn specht_rep(mu: &Partition) -> SpechtRep {
    let tableaux = standard_tableaux(mu);
    let n = mu.size();
    let dim = tableaux.len();
    let mut st = Straightener::new(&tableaux);
    let gens = (0..n.saturating_sub(1))
        .map(|i| {
            let s = Perm::adjacent(n, i);
            let mut m = Matrix::zeros(dim, dim, Rational::zero());
            for (col, t) in tableaux.iter().enumerate() {
                for (row, c) in st.express(act_on_rows(&s, t.rows())) {
                    m.set(row, col, Rational::from_int(c));
                }
            }
            m
        })
        .collect();
    SpechtRep { shape: mu.clone(), tableaux, gens }
}

/// The outer tensor product `𝒮_{p_1} ⊗ ⋯ ⊗ 𝒮_{p_ℓ}` as a module for the
/// Young subgroup `S_λ`, λ the shape of `p`. The first factor is the most
/// significant Kronecker index.
#[derive(Clone, Debug)]
pub struct OuterSpecht {
    label: MultiPartition,
    factors: Vec<SpechtRep>,
    offsets: Vec<usize>,
}

impl OuterSpecht {
    pub fn label(&self) -> &MultiPartition {
        &self.label
    }

    pub fn factors(&self) -> &[SpechtRep] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(SpechtRep::dim).product()
    }

    pub fn degree(&self) -> usize {
        self.label.size()
    }

    fn kron_all(&self, mats: Vec<Matrix<Rational>>) -> Matrix<Rational> {
        mats.into_iter()
            .fold(Matrix::identity(1, Rational::zero()), |acc, m| acc.kron(&m))
    }

    /// Generator `i` (0-based) of factor `comp`, as `1⊗…⊗ρ(s_i)⊗…⊗1`.
    pub fn factor_generator(&self, comp: usize, i: usize) -> Matrix<Rational> {
        let mats = self
            .factors
            .iter()
            .enumerate()
            .map(|(c, f)| {
                if c == comp {
                    f.generators()[i].clone()
                } else {
                    Matrix::identity(f.dim(), Rational::zero())
                }
            })
            .collect();
        self.kron_all(mats)
    }

    /// All generators of `S_λ` as `(global adjacent index, matrix)` pairs,
    /// where the global index refers to positions `1..d` of `f_λ`.
    pub fn generators(&self) -> Vec<(usize, Matrix<Rational>)> {
        let mut out = Vec::new();
        for (c, f) in self.factors.iter().enumerate() {
            for i in 0..f.degree().saturating_sub(1) {
                out.push((self.offsets[c] + i, self.factor_generator(c, i)));
            }
        }
        out
    }

    /// Matrix of a permutation of `{1..d}` lying in `S_λ` (it must map each
    /// consecutive block of `f_λ` to itself).
    pub fn matrix_of(&self, sigma: &Perm) -> Result<Matrix<Rational>> {
        if sigma.len() != self.degree() {
            return Err(Error::Dimension(alloc::format!(
                "permutation of {} points on a module of degree {}",
                sigma.len(),
                self.degree()
            )));
        }
        let mut mats = Vec::with_capacity(self.factors.len());
        for (c, f) in self.factors.iter().enumerate() {
            let o = self.offsets[c];
            let n = f.degree();
            let mut local = vec![0; n];
            for (i, slot) in local.iter_mut().enumerate() {
                let img = sigma.apply(o + i);
                if img < o || img >= o + n {
                    return Err(Error::Invalid(alloc::format!("{sigma:?} is not in the Young subgroup")));
                }
                *slot = img - o;
            }
            mats.push(f.matrix_of(&Perm::new(local)?));
        }
        Ok(self.kron_all(mats))
    }
}

/// `𝒮_p` for a multi-partition; empty components contribute dimension one.
pub fn outer_tensor(p: &MultiPartition) -> OuterSpecht {
    let factors: Vec<SpechtRep> = p.components().iter().map(specht_rep).collect();
    OuterSpecht {
        label: p.clone(),
        offsets: p.shape().offsets(),
        factors,
    }
}
