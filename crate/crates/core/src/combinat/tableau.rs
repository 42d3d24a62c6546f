use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{factorial, Partition};

/// Standard Young tableau with entries `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StdTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl StdTableau {
    /// Builds the tableau whose entry `i+1` sits in row `word[i]`.
    fn from_row_word(shape: &Partition, word: &[usize]) -> Self {
        let mut rows = vec![Vec::new(); shape.num_rows()];
        for (i, &r) in word.iter().enumerate() {
            rows[r].push(i + 1);
        }
        StdTableau { shape: shape.clone(), rows }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Row index of each entry `1..=n`.
    pub fn row_word(&self) -> Vec<usize> {
        let mut w = vec![0; self.shape.size()];
        for (r, row) in self.rows.iter().enumerate() {
            for &x in row {
                w[x - 1] = r;
            }
        }
        w
    }

    pub fn is_standard(rows: &[Vec<usize>]) -> bool {
        let rows_ok = rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = rows
            .windows(2)
            .all(|pair| pair[1].iter().zip(&pair[0]).all(|(below, above)| above < below));
        rows_ok && cols_ok
    }
}

/// All standard tableaux of shape `mu`, ordered lexicographically by row word.
pub fn standard_tableaux(mu: &Partition) -> Vec<StdTableau> {
    fn rec(
        mu: &Partition,
        filled: &mut Vec<usize>,
        word: &mut Vec<usize>,
        out: &mut Vec<StdTableau>,
    ) {
        if word.len() == mu.size() {
            out.push(StdTableau::from_row_word(mu, word));
            return;
        }
        for r in 0..mu.num_rows() {
            let fits = filled[r] < mu.parts()[r] && (r == 0 || filled[r - 1] > filled[r]);
            if fits {
                filled[r] += 1;
                word.push(r);
                rec(mu, filled, word, out);
                word.pop();
                filled[r] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(mu, &mut vec![0; mu.num_rows()], &mut Vec::new(), &mut out);
    out
}

/// `n! / ∏ hooks`.
pub fn hook_length_dim(mu: &Partition) -> u128 {
    let conj = mu.conjugate();
    let mut hooks: u128 = 1;
    for (r, &len) in mu.parts().iter().enumerate() {
        for c in 0..len {
            let arm = len - c - 1;
            let leg = conj.parts()[c] - r - 1;
            hooks *= (arm + leg + 1) as u128;
        }
    }
    factorial(mu.size()) / hooks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::enum_partitions;

    #[test]
    fn counts_match_hook_lengths() {
        for n in 0..=7 {
            for mu in enum_partitions(n) {
                let tabs = standard_tableaux(&mu);
                assert_eq!(tabs.len() as u128, hook_length_dim(&mu), "{mu}");
                assert!(tabs.iter().all(|t| StdTableau::is_standard(t.rows())));
                assert!(tabs.windows(2).all(|w| w[0].row_word() < w[1].row_word()));
            }
        }
    }

    #[test]
    fn small_shapes() {
        let p = |v: &[usize]| Partition::new(v.to_vec()).unwrap();
        assert_eq!(standard_tableaux(&p(&[3])).len(), 1);
        assert_eq!(standard_tableaux(&p(&[2, 1])).len(), 2);
        assert_eq!(standard_tableaux(&p(&[1, 1, 1])).len(), 1);
        assert_eq!(standard_tableaux(&p(&[2, 1]))[0].rows(), &[vec![1, 2], vec![3]]);
    }
}
