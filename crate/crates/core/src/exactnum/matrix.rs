use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{CycField, CycNum, Echelon, Rational, Scalar, Solution};
use crate::{Error, Result};

/// Dense row-major matrix over an exact field.
///
/// The matrix carries its own zero so that empty matrices and cyclotomic
/// matrices still know which field they live in.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    zero: F,
    data: Vec<F>,
}

/// Matrix over a cyclotomic field.
pub type ExactMatrix = Matrix<CycNum>;

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize, zero: F) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![zero.clone(); rows * cols],
            zero,
        }
    }

    pub fn identity(n: usize, zero: F) -> Self {
        let mut m = Self::zeros(n, n, zero);
        let one = m.zero.one_like();
        for i in 0..n {
            m.data[i * n + i] = one.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, zero: F, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            zero,
            data,
        }
    }

    pub fn from_rows(rows: Vec<Vec<F>>, zero: F) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            zero,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn zero(&self) -> &F {
        &self.zero
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(alloc::format!(
                "{}x{} times {}x{}",
                self.rows,
                self.cols,
                rhs.rows,
                rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols, self.zero.clone());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.data[idx] = out.data[idx].plus(&a.times(b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product; panics on incompatible shapes.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a.plus(b)))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a.minus(b)))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("matrix shape mismatch")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("matrix shape mismatch")
    }

    fn same_shape(&self, rhs: &Self) -> Result<()> {
        if self.rows == rhs.rows && self.cols == rhs.cols {
            Ok(())
        } else {
            Err(Error::Dimension(alloc::format!(
                "{}x{} vs {}x{}",
                self.rows,
                self.cols,
                rhs.rows,
                rhs.cols
            )))
        }
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            zero: self.zero.clone(),
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            zero: self.zero.clone(),
            data: self.data.iter().map(|a| a.times(s)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.zero.clone(), |r, c| self.get(c, r).clone())
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(self.zero.clone(), |acc, i| acc.plus(self.get(i, i)))
    }

    /// Kronecker product `self ⊗ rhs` (the first factor indexes the coarse blocks).
    pub fn kron(&self, rhs: &Self) -> Self {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        Self::from_fn(rows, cols, self.zero.clone(), |r, c| {
            let a = self.get(r / rhs.rows, c / rhs.cols);
            if a.is_zero() {
                return self.zero.clone();
            }
            a.times(rhs.get(r % rhs.rows, c % rhs.cols))
        })
    }

    pub fn map<G: Scalar>(&self, zero: G, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            zero,
        }
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.zero.clone(), |acc, (a, b)| acc.plus(&a.times(b)))
            })
            .collect()
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Copies `block` into this matrix with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    fn echelon(&self) -> Echelon<F> {
        let mut ech = Echelon::new(self.cols, self.zero.clone());
        for r in 0..self.rows {
            ech.insert_dense(self.row(r));
        }
        ech
    }

    /// Exact rank by sparse Gaussian elimination.
    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of the right null space `{x : self·x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        self.echelon().kernel_basis()
    }

    /// Solves `self·x = rhs`; inconsistency is reported as [`Solution::NoSolution`].
    pub fn solve(&self, rhs: &[F]) -> Result<Solution<F>> {
        if rhs.len() != self.rows {
            return Err(Error::Dimension(alloc::format!(
                "rhs of length {} for {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let mut ech = Echelon::with_pivot_limit(self.cols + 1, self.cols, self.zero.clone());
        for (r, b) in rhs.iter().enumerate() {
            let mut row: Vec<F> = self.row(r).to_vec();
            row.push(b.clone());
            if !ech.insert_dense(&row) && !ech.reduce_dense(&row).is_empty() {
                return Ok(Solution::NoSolution);
            }
        }
        let mut x = vec![self.zero.clone(); self.cols];
        for (pivot, row) in ech.pivot_rows() {
            if let Some((_, v)) = row.iter().find(|(c, _)| *c == self.cols) {
                x[pivot] = v.clone();
            }
        }
        Ok(Solution::Solved {
            particular: x,
            nullity: self.cols - ech.rank(),
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

/// Basis of `{X : X·M = M·X for every M in mats}` for `n×n` matrices.
///
/// Each commutator entry is one sparse equation in the `n²` unknowns
/// `X[a][c]` (index `a·n + c`).
pub fn commutant_basis<F: Scalar>(mats: &[Matrix<F>], n: usize, zero: &F) -> Vec<Matrix<F>> {
    let mut ech = Echelon::new(n * n, zero.clone());
    for m in mats {
        assert_eq!((m.rows, m.cols), (n, n), "commutant of a non-square or mis-sized matrix");
        for a in 0..n {
            for b in 0..n {
                // (XM - MX)[a][b] = Σ_c X[a][c]·M[c][b] - M[a][c]·X[c][b]
                let mut eq: alloc::collections::BTreeMap<usize, F> = alloc::collections::BTreeMap::new();
                for c in 0..n {
                    let x = m.get(c, b);
                    if !x.is_zero() {
                        let slot = eq.entry(a * n + c).or_insert_with(|| zero.clone());
                        *slot = slot.plus(x);
                    }
                    let y = m.get(a, c);
                    if !y.is_zero() {
                        let slot = eq.entry(c * n + b).or_insert_with(|| zero.clone());
                        *slot = slot.minus(y);
                    }
                }
                let eq: Vec<(usize, F)> = eq.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !eq.is_empty() {
                    ech.insert(&eq);
                }
            }
        }
    }
    ech.kernel_basis()
        .into_iter()
        .map(|v| Matrix { rows: n, cols: n, zero: zero.clone(), data: v })
        .collect()
}

impl Matrix<Rational> {
    /// Lifts a rational matrix into a cyclotomic field.
    pub fn to_cyclotomic(&self, field: &CycField) -> ExactMatrix {
        self.map(field.zero(), |r| field.from_rational(r.clone()))
    }
}

impl<F: Scalar> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        f.write_str("]")
    }
}
