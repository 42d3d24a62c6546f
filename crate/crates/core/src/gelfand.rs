//! The involutive Gelfand model: `Gelfand(f) = ℂ[I^f]` with
//! `σ·w = (-1)^{inv(σ,w)} σwσ⁻¹`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use serde::Serialize;

use crate::exactnum::{ExactMatrix, Matrix};
use crate::galgebra::{GroupoidAlgebra, MorphKey};
use crate::groupoid::{hom, ColorFn, GMorphism};
use crate::perm::Perm;
use crate::report::Report;
use crate::simples::{ClassFunction, MatrixRep, Simples};
use crate::{Error, Result};

/// `|{(i,j) : i<j, w(i)=j, σ(i)>σ(j)}|`.
pub fn inv_count(sigma: &Perm, w: &Perm) -> usize {
    (0..w.len())
        .filter(|&i| {
            let j = w.apply(i);
            i < j && sigma.apply(i) > sigma.apply(j)
        })
        .count()
}

/// `inv(σ, w)` for a morphism `σ: f → g` and an involution `w` on `f`.
pub fn inv_statistic(sigma: &GMorphism, w: &GMorphism) -> Result<usize> {
    if w.source() != sigma.source() || w.target() != sigma.source() || !w.perm().is_involution() {
        return Err(Error::Invalid(alloc::format!("{w:?} is not an involution on the source of {sigma:?}")));
    }
    Ok(inv_count(sigma.perm(), w.perm()))
}

/// Involutions in `End(f)`, ordered like [`hom`].
pub fn involutions(f: &ColorFn) -> Vec<GMorphism> {
    hom(f, f).into_iter().filter(|m| m.perm().is_involution()).collect()
}

pub struct GelfandModel {
    bases: Vec<Vec<Perm>>,
    index: Vec<BTreeMap<Perm, usize>>,
}

impl GelfandModel {
    pub fn basis(&self, obj: usize) -> &[Perm] {
        &self.bases[obj]
    }
}

pub fn build_gelfand(alg: &GroupoidAlgebra) -> GelfandModel {
    let bases: Vec<Vec<Perm>> = alg
        .objects()
        .iter()
        .map(|f| involutions(f).into_iter().map(|m| m.perm().clone()).collect())
        .collect();
    let index = bases
        .iter()
        .map(|b| b.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect())
        .collect();
    GelfandModel { bases, index }
}

impl MatrixRep for GelfandModel {
    fn block_dim(&self, obj: usize) -> usize {
        self.bases[obj].len()
    }

    fn act(&self, alg: &GroupoidAlgebra, k: &MorphKey) -> ExactMatrix {
        let (s, t) = (k.source as usize, k.target as usize);
        let mut m = Matrix::zeros(self.bases[t].len(), self.bases[s].len(), alg.field().zero());
        for col in 0..self.bases[s].len() {
            let (row, sign) = self.signed_image(alg, k, col);
            m.set(row, col, alg.field().from_int(sign));
        }
        m
    }

    /// The action is a signed permutation of the involution bases, so it is
    /// enough to check `M(g∘σ) = M(g)·M(σ)` for every morphism `σ` and every
    /// generator `g` (an adjacent transposition), column by column.
    fn functoriality_counterexample(&self, alg: &GroupoidAlgebra) -> Option<String> {
        let d = alg.d();
        let adjacent: Vec<u32> = (0..d.saturating_sub(1)).map(|i| Perm::adjacent(d, i).lex_rank() as u32).collect();
        for f in 0..alg.objects().len() {
            let e = alg.identity_key(f);
            if (0..self.bases[f].len()).any(|c| self.signed_image(alg, &e, c) != (c, 1)) {
                return Some(alloc::format!("identity at object {:?}", alg.objects()[f]));
            }
        }
        // column images of every basis morphism, computed once
        let table: Vec<Vec<(usize, i64)>> = alg
            .basis()
            .iter()
            .map(|k| (0..self.bases[k.source as usize].len()).map(|c| self.signed_image(alg, k, c)).collect())
            .collect();
        for (i, first) in alg.basis().iter().enumerate() {
            for &g in &adjacent {
                let second = alg.key_from(first.target as usize, g);
                let comp = alg.compose_keys(&second, first).expect("composable");
                let (t2, tc) = (&table[alg.basis_index(&second)], &table[alg.basis_index(&comp)]);
                let bad = table[i].iter().zip(tc).any(|(&(mid, s1), &img)| {
                    let (row, s2) = t2[mid];
                    img != (row, s1 * s2)
                });
                if bad {
                    return Some(alloc::format!("{:?} after {:?}", alg.morphism(&second), alg.morphism(first)));
                }
            }
        }
        None
    }
}

impl GelfandModel {
    /// `σ·w = (-1)^{inv(σ,w)} σwσ⁻¹` as (row, sign) for the basis vector `w`
    /// in column `col`.
    fn signed_image(&self, alg: &GroupoidAlgebra, k: &MorphKey, col: usize) -> (usize, i64) {
        let sigma = alg.perm(k.perm);
        let w = &self.bases[k.source as usize][col];
        let image = sigma.compose(w).compose(&sigma.inverse());
        let row = self.index[k.target as usize][&image];
        (row, if inv_count(sigma, w) % 2 == 0 { 1 } else { -1 })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GelfandSummary {
    /// `(object, |I^f|)`.
    pub involution_counts: Vec<(ColorFn, usize)>,
    pub total_dim: usize,
    /// Multiplicity of each simple `L_p`.
    pub multiplicities: Vec<(crate::combinat::MultiPartition, u64)>,
}

/// Checks that the model contains every simple exactly once.
pub fn verify_gelfand(s: &Simples) -> Result<(GelfandSummary, Report)> {
    let alg = &s.alg;
    let model = build_gelfand(alg);
    let mut report = Report::new();

    let closed = (0..alg.objects().len()).all(|f| model.bases[f].iter().all(Perm::is_involution));
    report.push("involution bases", closed, "");
    let bad = model.functoriality_counterexample(alg);
    report.push("functor", bad.is_none(), bad.unwrap_or_default());

    let total = model.total_dim(alg);
    let simple_total: usize = s.modules.iter().map(|m| m.total_dim(alg)).sum();
    report.push(
        "sum of |I^f| equals sum of dim L_p",
        total == simple_total,
        alloc::format!("{total} vs {simple_total}"),
    );

    let chi = s.table.character(alg, &model)?;
    let sum = s
        .characters
        .iter()
        .fold(ClassFunction { values: chi.values.iter().map(|_| alg.field().zero()).collect() }, |acc, c| acc.add(c));
    report.push("character equals sum of simple characters", chi == sum, "");

    let mult = s.decompose(&chi);
    let multiplicities: Vec<_> = match &mult {
        Ok(m) => s.modules.iter().zip(m).map(|(l, &k)| (l.label().clone(), k)).collect(),
        Err(_) => Vec::new(),
    };
    let ok = mult.as_ref().map(|m| m.iter().all(|&k| k == 1)).unwrap_or(false);
    report.push("multiplicity free and complete", ok, mult.err().unwrap_or_default());

    let involution_counts = alg.objects().iter().cloned().zip(model.bases.iter().map(Vec::len)).collect();
    Ok((GelfandSummary { involution_counts, total_dim: total, multiplicities }, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inv_examples() {
        let swap = Perm::adjacent(2, 0);
        assert_eq!(inv_count(&swap, &swap), 1);
        assert_eq!(inv_count(&swap, &Perm::identity(2)), 0);
        for w in Perm::all(3).into_iter().filter(Perm::is_involution) {
            assert_eq!(inv_count(&Perm::identity(3), &w), 0);
        }
    }

    #[test]
    fn small_models() {
        let s = Simples::new(2, 2, 1000).unwrap();
        let (summary, report) = verify_gelfand(&s).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(summary.total_dim, 6);
        let counts: Vec<usize> = summary.involution_counts.iter().map(|c| c.1).collect();
        assert_eq!(counts, [2, 1, 1, 2]);

        let s = Simples::new(1, 2, 1000).unwrap();
        let model = build_gelfand(&s.alg);
        let chi = s.table.character(&s.alg, &model).unwrap();
        let swap_class = s.table.classes.class_of(&crate::wreath::WreathElem::from_perm(1, Perm::adjacent(2, 0))).unwrap();
        assert_eq!(chi.values[swap_class], s.alg.field().zero());
    }
}
