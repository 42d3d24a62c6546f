use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::Scalar;

/// Sparse vector: strictly increasing indices, no explicit zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

/// Incrementally maintained reduced row echelon form with sparse rows.
///
/// Every stored row has a pivot entry equal to one and every pivot column is
/// zero in all other rows. Pivots are only taken from columns below
/// `pivot_limit`; the remaining columns ride along (used for tracking
/// combinations and augmented systems).
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    ncols: usize,
    pivot_limit: usize,
    zero: F,
    rows: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
    row_of_pivot: BTreeMap<usize, usize>,
}

impl<F: Scalar> Echelon<F> {
    pub fn new(ncols: usize, zero: F) -> Self {
        Self::with_pivot_limit(ncols, ncols, zero)
    }

    pub fn with_pivot_limit(ncols: usize, pivot_limit: usize, zero: F) -> Self {
        Echelon {
            ncols,
            pivot_limit,
            zero,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_pivot: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn zero(&self) -> &F {
        &self.zero
    }

    pub fn sparse_from_dense(v: &[F]) -> SparseVec<F> {
        v.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect()
    }

    /// Remainder of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let hits: Vec<(usize, F)> = v
            .iter()
            .filter_map(|(c, x)| self.row_of_pivot.get(c).map(|&r| (r, x.clone())))
            .collect();
        if hits.is_empty() {
            return v.clone();
        }
        let mut acc: BTreeMap<usize, F> = v.iter().cloned().collect();
        for (r, coeff) in hits {
            for (c, x) in &self.rows[r] {
                let delta = coeff.times(x);
                match acc.get_mut(c) {
                    Some(slot) => *slot = slot.minus(&delta),
                    None => {
                        acc.insert(*c, delta.negated());
                    }
                }
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    pub fn reduce_dense(&self, v: &[F]) -> SparseVec<F> {
        self.reduce(&Self::sparse_from_dense(v))
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).iter().all(|(c, _)| *c >= self.pivot_limit)
    }

    pub fn contains_dense(&self, v: &[F]) -> bool {
        self.contains(&Self::sparse_from_dense(v))
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec<F>) -> bool {
        let red = self.reduce(v);
        let Some(pos) = red.iter().position(|(c, _)| *c < self.pivot_limit) else {
            return false;
        };
        let pivot = red[pos].0;
        let inv = red[pos].1.inverse().expect("nonzero pivot");
        let new_row: SparseVec<F> = red
            .into_iter()
            .map(|(c, x)| if c == pivot { (c, inv.one_like()) } else { (c, x.times(&inv)) })
            .collect();
        for row in &mut self.rows {
            if let Ok(i) = row.binary_search_by_key(&pivot, |(c, _)| *c) {
                let coeff = row[i].1.clone();
                *row = axpy(row, &coeff.negated(), &new_row);
            }
        }
        self.row_of_pivot.insert(pivot, self.rows.len());
        self.pivots.push(pivot);
        self.rows.push(new_row);
        true
    }

    pub fn insert_dense(&mut self, v: &[F]) -> bool {
        self.insert(&Self::sparse_from_dense(v))
    }

    /// `(pivot column, row)` pairs in insertion order.
    pub fn pivot_rows(&self) -> impl Iterator<Item = (usize, &SparseVec<F>)> {
        self.pivots.iter().copied().zip(self.rows.iter())
    }

    /// Basis of `{x : r·x = 0 for every stored row r}` over the first
    /// `pivot_limit` coordinates.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let n = self.pivot_limit;
        let one = self.zero.one_like();
        let mut out = Vec::new();
        for free in 0..n {
            if self.row_of_pivot.contains_key(&free) {
                continue;
            }
            let mut x = vec![self.zero.clone(); n];
            x[free] = one.clone();
            for (p, row) in self.pivot_rows() {
                if let Ok(i) = row.binary_search_by_key(&free, |(c, _)| *c) {
                    x[p] = row[i].1.negated();
                }
            }
            out.push(x);
        }
        out
    }

    /// Stored rows densified, in insertion order.
    pub fn basis_dense(&self) -> Vec<Vec<F>> {
        self.rows
            .iter()
            .map(|row| {
                let mut v = vec![self.zero.clone(); self.ncols];
                for (c, x) in row {
                    v[*c] = x.clone();
                }
                v
            })
            .collect()
    }
}

/// `a + s·b` on sparse vectors.
fn axpy<F: Scalar>(a: &SparseVec<F>, s: &F, b: &SparseVec<F>) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, s.times(&b[j].1)));
            j += 1;
        } else {
            let v = a[i].1.plus(&s.times(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Coefficients `c` with `Σ c_j·vectors[j] = target`, if the target lies in
/// the span. Vectors are sparse over `dim` coordinates.
pub fn express_in_span<F: Scalar>(
    vectors: &[SparseVec<F>],
    target: &SparseVec<F>,
    dim: usize,
    zero: &F,
) -> Option<Vec<F>> {
    let m = vectors.len();
    let mut ech = Echelon::with_pivot_limit(dim + m, dim, zero.clone());
    let one = zero.one_like();
    for (j, v) in vectors.iter().enumerate() {
        let mut aug = v.clone();
        aug.push((dim + j, one.clone()));
        ech.insert(&aug);
    }
    let red = ech.reduce(target);
    if red.iter().any(|(c, _)| *c < dim) {
        return None;
    }
    let mut coeffs = vec![zero.clone(); m];
    for (c, x) in red {
        coeffs[c - dim] = x.negated();
    }
    Some(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    fn sv(v: &[i64]) -> SparseVec<Rational> {
        Echelon::sparse_from_dense(&v.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new(3, Rational::zero());
        assert!(e.insert(&sv(&[1, 2, 3])));
        assert!(e.insert(&sv(&[0, 1, 1])));
        assert!(!e.insert(&sv(&[2, 5, 7])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&sv(&[1, 3, 4])));
        assert!(!e.contains(&sv(&[0, 0, 1])));
        let ker = e.kernel_basis();
        assert_eq!(ker.len(), 1);
    }

    #[test]
    fn express_recovers_coefficients() {
        let vs = [sv(&[1, 0, 1]), sv(&[0, 1, 1]), sv(&[1, 1, 2])];
        let target = sv(&[2, 3, 5]);
        let c = express_in_span(&vs, &target, 3, &Rational::zero()).unwrap();
        let mut sum = vec![Rational::zero(); 3];
        for (j, v) in vs.iter().enumerate() {
            for (i, x) in v {
                sum[*i] = sum[*i].plus(&c[j].times(x));
            }
        }
        assert_eq!(Echelon::sparse_from_dense(&sum), target);
        assert!(express_in_span(&vs[..1], &target, 3, &Rational::zero()).is_none());
    }
}
