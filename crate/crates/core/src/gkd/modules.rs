//! Simple modules `L_(p,m)` of `A_(ℓ,k,d)` and the module `Q_p` with its
//! `θ_k`-twist.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

use super::quotient::{rotate_composition, QKey, QuotientGroupoid};
use crate::combinat::{Composition, MultiPartition};
use crate::exactnum::{commutant_basis, CycNum, ExactMatrix, Matrix, Rational, Scalar};
use crate::galgebra::{GroupoidAlgebra, MorphKey};
use crate::groupoid::{canonical_morphism, canonical_object};
use crate::perm::Perm;
use crate::simples::{build_lp, class_function, ClassFunction, ConjugacyClasses, MatrixRep, SimpleModule};
use crate::wreath::WreathElem;
use crate::{Error, Result};

/// A module over `A_(ℓ,k,d)`, one block per quotient object.
pub trait QuotientRep {
    fn block_dim(&self, orbit: usize) -> usize;

    /// Matrix of the basis element `q`, of shape `block_dim(target) × block_dim(source)`.
    fn act(&self, qg: &QuotientGroupoid, q: &QKey) -> ExactMatrix;

    fn total_dim(&self, qg: &QuotientGroupoid) -> usize {
        (0..qg.orbits().len()).map(|o| self.block_dim(o)).sum()
    }

    fn element_matrix(&self, qg: &QuotientGroupoid, a: &BTreeMap<QKey, CycNum>) -> ExactMatrix {
        let mut offsets = Vec::new();
        let mut acc = 0;
        for o in 0..qg.orbits().len() {
            offsets.push(acc);
            acc += self.block_dim(o);
        }
        let mut out = Matrix::zeros(acc, acc, qg.alg().field().zero());
        for (q, c) in a {
            let (s, t) = (qg.source_orbit(q), qg.target_orbit(q));
            if self.block_dim(s) == 0 || self.block_dim(t) == 0 {
                continue;
            }
            let m = self.act(qg, q);
            for r in 0..m.rows() {
                for col in 0..m.cols() {
                    if !m.get(r, col).is_zero() {
                        let (rr, cc) = (offsets[t] + r, offsets[s] + col);
                        let v = out.get(rr, cc).plus(&c.times(m.get(r, col)));
                        out.set(rr, cc, v);
                    }
                }
            }
        }
        out
    }

    fn trace_of(&self, qg: &QuotientGroupoid, a: &BTreeMap<QKey, CycNum>) -> CycNum {
        let mut acc = qg.alg().field().zero();
        for (q, c) in a {
            let o = qg.source_orbit(q);
            if o == qg.target_orbit(q) && self.block_dim(o) > 0 {
                acc = acc.plus(&c.times(&self.act(qg, q).trace()));
            }
        }
        acc
    }

    /// First failure of identities or of `M(q₂∘q₁) = M(q₂)·M(q₁)`.
    fn functoriality_counterexample(&self, qg: &QuotientGroupoid) -> Option<String> {
        let field = qg.alg().field();
        for o in 0..qg.orbits().len() {
            let n = self.block_dim(o);
            if n > 0 && self.act(qg, &qg.identity(o)) != Matrix::identity(n, field.zero()) {
                return Some(format!("identity at orbit {o}"));
            }
        }
        let live: Vec<&QKey> = qg.basis().iter().filter(|q| self.block_dim(qg.source_orbit(q)) > 0).collect();
        for q1 in &live {
            let m1 = self.act(qg, q1);
            for q2 in &live {
                if let Some(c) = qg.compose(q2, q1) {
                    if self.act(qg, &c) != self.act(qg, q2).mul(&m1) {
                        return Some(format!("{:?} after {:?}", qg.alg().morphism(q2), qg.alg().morphism(q1)));
                    }
                }
            }
        }
        None
    }
}

/// A label `(p, m)`: `p` has shape in the cross-section `Γ`, `1 ≤ m ≤ |H_k^λ|`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct QSimpleLabel {
    pub lambda: Composition,
    pub p: MultiPartition,
    pub m: usize,
}

/// All labels `(p, m)` with `λ ∈ Γ`.
pub fn q_labels(qg: &QuotientGroupoid) -> Vec<QSimpleLabel> {
    let mut out = Vec::new();
    for lambda in qg.gamma() {
        let s = qg.stabilizer_order(&lambda);
        for p in crate::combinat::enum_multipartitions(&lambda) {
            for m in 1..=s {
                out.push(QSimpleLabel { lambda: lambda.clone(), p: p.clone(), m });
            }
        }
    }
    out
}

/// `σ_(f_λ, h(f_λ))` and the index shift of `h = θ_k^(k/s)`.
fn stabilizer_generator(qg: &QuotientGroupoid, lambda: &Composition) -> Result<(usize, Perm)> {
    let s = qg.stabilizer_order(lambda);
    let f_lambda = canonical_object(lambda);
    let h_steps = qg.k() / s;
    let c = canonical_morphism(&f_lambda, &f_lambda.rotate(h_steps * qg.step()))?;
    Ok((h_steps, c.perm().clone()))
}

/// Adjacent transpositions generating `S_λ ⊂ S_d`.
fn young_generators(lambda: &Composition) -> Vec<Perm> {
    let f = canonical_object(lambda);
    let d = lambda.size();
    (0..d.saturating_sub(1))
        .filter(|&i| f.color(i) == f.color(i + 1))
        .map(|i| Perm::adjacent(d, i))
        .collect()
}

/// The simple module `L_(p,m)`.
pub struct LpmModule {
    label: QSimpleLabel,
    s: usize,
    h_steps: usize,
    lp: SimpleModule,
    /// Per orbit: block number and the distinguished type-λ lift `f_o`.
    lift: Vec<Option<usize>>,
    /// Per orbit: `c_o^t` for `t = 0..s`, with `c_o = σ_(f_o, h(f_o))`.
    c_pows: Vec<Vec<Perm>>,
    xi: CycNum,
}

impl LpmModule {
    pub fn label(&self) -> &QSimpleLabel {
        &self.label
    }

    pub fn stabilizer_order(&self) -> usize {
        self.s
    }

    pub fn block_size(&self) -> usize {
        self.lp.block_size()
    }

    /// `(t, π)` with `σ = c^t ∘ π`, `t ∈ 1..=s`, `π: f_{o1} → f_{o2}`.
    pub fn factor(&self, qg: &QuotientGroupoid, q: &QKey) -> Option<(usize, MorphKey)> {
        let alg = qg.alg();
        let f1 = self.lift[qg.source_orbit(q)]?;
        let f2 = self.lift[qg.target_orbit(q)]?;
        let t0 = qg.shift_between(q.source as usize, f1)?;
        let sigma = qg.rotate_key(q, t0);
        let t = (1..=self.s).find(|&t| qg.rotate_object(f2, t * self.h_steps) == sigma.target as usize)?;
        let c_t = &self.c_pows[qg.target_orbit(q)][t % self.s];
        let pi = c_t.inverse().compose(alg.perm(sigma.perm));
        let key = alg.key_from(f1, pi.lex_rank() as u32);
        debug_assert_eq!(key.target as usize, f2);
        Some((t, key))
    }
}

impl QuotientRep for LpmModule {
    fn block_dim(&self, orbit: usize) -> usize {
        if self.lift[orbit].is_some() {
            self.lp.block_size()
        } else {
            0
        }
    }

    fn act(&self, qg: &QuotientGroupoid, q: &QKey) -> ExactMatrix {
        let rows = self.block_dim(qg.target_orbit(q));
        let cols = self.block_dim(qg.source_orbit(q));
        match self.factor(qg, q) {
            Some((t, pi)) => {
                let e = (qg.alg().ell() / self.s * t * self.label.m) as i64;
                self.lp.act(qg.alg(), &pi).scale(&self.xi.pow(e))
            }
            None => Matrix::zeros(rows, cols, qg.alg().field().zero()),
        }
    }
}

/// `ρ_p(c⁻¹τc) = ρ_p(τ)` on the generators of `S_λ`, the condition under
/// which the scalar twist of `L_p` is a functor on the quotient.
fn twist_is_trivial(lp: &SimpleModule, c: &Perm, lambda: &Composition) -> Option<Perm> {
    young_generators(lambda).into_iter().find(|tau| {
        let conj = c.inverse().compose(tau).compose(c);
        lp.young_matrix(&conj) != lp.young_matrix(tau)
    })
}

/// Builds `L_(p,m)` on `qg`.
pub fn build_lpm(qg: &QuotientGroupoid, label: &QSimpleLabel) -> Result<LpmModule> {
    let alg = qg.alg();
    let lambda = label.p.shape();
    if lambda != label.lambda || qg.cross_section_rep(&lambda) != lambda {
        return Err(Error::Invalid(format!("shape {lambda} is not in the cross-section")));
    }
    let s = qg.stabilizer_order(&lambda);
    if label.m == 0 || label.m > s {
        return Err(Error::OutOfRange { index: label.m, max: s });
    }
    let lp = build_lp(alg, &label.p)?;
    let (h_steps, c) = stabilizer_generator(qg, &lambda)?;
    if let Some(tau) = twist_is_trivial(&lp, &c, &lambda) {
        return Err(Error::Unsupported(format!(
            "L_(p,m) for p = {}: conjugation by the stabilizer generator changes ρ_p({:?})",
            label.p,
            tau.one_based()
        )));
    }
    let nobj = qg.orbits().len();
    let mut lift = vec![None; nobj];
    let mut c_pows = vec![Vec::new(); nobj];
    for (o, slot) in lift.iter_mut().enumerate() {
        let Some(&f) = qg
            .orbit_members(o)
            .iter()
            .filter(|&&f| alg.objects()[f].type_of() == lambda)
            .min()
        else {
            continue;
        };
        *slot = Some(f);
        let fo = &alg.objects()[f];
        let co = canonical_morphism(fo, &fo.rotate(h_steps * qg.step()))?.perm().clone();
        c_pows[o] = (0..s).map(|t| co.pow(t)).collect();
    }
    Ok(LpmModule { label: label.clone(), s, h_steps, lp, lift, c_pows, xi: alg.field().root(1) })
}

/// Characters of `G(ℓ,k,d)` for modules of `A_(ℓ,d)` (by restriction) and
/// of `A_(ℓ,k,d)` (through `Ψ⁻¹∘Φ`).
pub struct GkdTable {
    pub classes: ConjugacyClasses,
    pub generators: Vec<WreathElem>,
}

impl GkdTable {
    /// `G(ℓ,k,d)` with a greedily chosen generating set.
    pub fn new(alg: &GroupoidAlgebra, k: usize, cap: usize) -> Result<Self> {
        let all = crate::wreath::enum_group(alg.ell(), alg.d(), cap)?;
        let mut elems = Vec::new();
        for x in all {
            if crate::wreath::gkd_member(&x, k)? {
                elems.push(x);
            }
        }
        let one = WreathElem::identity(alg.ell(), alg.d());
        let mut gens: Vec<WreathElem> = Vec::new();
        let mut reached = crate::wreath::closure(&gens, one.clone());
        for x in &elems {
            if reached.len() == elems.len() {
                break;
            }
            if !reached.contains(x) {
                gens.push(x.clone());
                reached = crate::wreath::closure(&gens, one.clone());
            }
        }
        let classes = ConjugacyClasses::new(elems, &gens);
        Ok(GkdTable { classes, generators: gens })
    }

    pub fn restricted(&self, alg: &GroupoidAlgebra, m: &dyn MatrixRep) -> Result<ClassFunction> {
        class_function(&self.classes, crate::simples::CONJUGATE_SAMPLES, |x| {
            m.trace_of(alg, &alg.phi_closed_form(x))
        })
    }

    pub fn character(&self, qg: &QuotientGroupoid, m: &dyn QuotientRep) -> Result<ClassFunction> {
        let mut bad = None;
        let chi = class_function(&self.classes, crate::simples::CONJUGATE_SAMPLES, |x| {
            match qg.psi_inverse(&qg.alg().phi_closed_form(x)) {
                Some(a) => m.trace_of(qg, &a),
                None => {
                    bad = Some(x.clone());
                    qg.alg().field().zero()
                }
            }
        })?;
        match bad {
            Some(x) => Err(Error::Internal(format!("Φ({x:?}) is not H_k-invariant"))),
            None => Ok(chi),
        }
    }

    pub fn inner(&self, qg: &QuotientGroupoid, a: &ClassFunction, b: &ClassFunction) -> CycNum {
        crate::simples::inner_product(&self.classes, qg.alg().field(), a, b)
    }
}

/// `Q_p = ⊕_i L_{θ_k^i p}` as an `A_(ℓ,d)`-module, with the automorphism
/// `T: Q(f) → Q(θ_k f)`.
pub struct QpModule {
    lp: SimpleModule,
    r: usize,
    /// Per object: `(i, σ_(f, z_i f_λ), σ_(z_i f_λ, f))` when the type of `f`
    /// is `θ_k^i λ` with `i < r`.
    blocks: Vec<Option<(usize, Perm, Perm)>>,
    /// Wrap-around twist, normalized so that `Y^s = 1`.
    y: ExactMatrix,
}

impl MatrixRep for QpModule {
    fn block_dim(&self, obj: usize) -> usize {
        if self.blocks[obj].is_some() {
            self.lp.block_size()
        } else {
            0
        }
    }

    fn act(&self, alg: &GroupoidAlgebra, k: &MorphKey) -> ExactMatrix {
        match (&self.blocks[k.source as usize], &self.blocks[k.target as usize]) {
            (Some((_, _, from)), Some((_, to, _))) => {
                let tau = to.compose(alg.perm(k.perm)).compose(from);
                self.lp.young_matrix(&tau).expect("S_λ element")
            }
            _ => Matrix::zeros(
                self.block_dim(k.target as usize),
                self.block_dim(k.source as usize),
                alg.field().zero(),
            ),
        }
    }
}

/// `x` with `x^s = μ` in the field, if one is found among `±|μ|^(1/s)·ξ^j`.
fn scalar_root(mu: &CycNum, s: usize) -> Option<CycNum> {
    let field = mu.field();
    let q = mu.as_rational()?;
    let abs_root = |n: &num_bigint::BigInt| {
        let r = n.magnitude().nth_root(s as u32);
        (num_bigint::BigInt::from(r.clone()).pow(s as u32) == num_bigint::BigInt::from(n.magnitude().clone()))
            .then_some(num_bigint::BigInt::from(r))
    };
    let base = Rational::from_bigint(abs_root(q.numer())?).times(&Rational::from_bigint(abs_root(q.denom())?).inverse()?);
    let base = field.from_rational(base);
    (0..field.order() as i64)
        .map(|j| base.times(&field.root(j)))
        .find(|x| x.pow(s as i64) == *mu)
}

impl QpModule {
    pub fn new(qg: &QuotientGroupoid, p: &MultiPartition) -> Result<Self> {
        let alg = qg.alg();
        let lambda = p.shape();
        let s = qg.stabilizer_order(&lambda);
        let r = qg.k() / s;
        let (h_steps, c) = stabilizer_generator(qg, &lambda)?;
        if p.rotate(h_steps * qg.step()) != *p {
            return Err(Error::Unsupported(format!("Q_p for p = {p}: p is not fixed by the stabilizer of its shape")));
        }
        let lp = build_lp(alg, p)?;
        let f_lambda = canonical_object(&lambda);
        let mut blocks = vec![None; alg.objects().len()];
        for (idx, f) in alg.objects().iter().enumerate() {
            let ty = f.type_of();
            if let Some(i) = (0..r).find(|&i| rotate_composition(&lambda, i * qg.step()) == ty) {
                let z = f_lambda.rotate(i * qg.step());
                blocks[idx] = Some((
                    i,
                    canonical_morphism(f, &z)?.perm().clone(),
                    canonical_morphism(&z, f)?.perm().clone(),
                ));
            }
        }
        // Y ρ(τ) = ρ(c⁻¹τc) Y: lower-left blocks of the commutant of diag(ρ(τ), ρ(c⁻¹τc)).
        let n = lp.block_size();
        let zero = alg.field().zero();
        let gens = young_generators(&lambda);
        let y = if gens.is_empty() {
            Matrix::identity(n, zero.clone())
        } else {
            let mats: Vec<ExactMatrix> = gens
                .iter()
                .map(|tau| {
                    let conj = c.inverse().compose(tau).compose(&c);
                    let mut m = Matrix::zeros(2 * n, 2 * n, zero.clone());
                    m.put_block(0, 0, &lp.young_matrix(tau).expect("generator"));
                    m.put_block(n, n, &lp.young_matrix(&conj).expect("generator"));
                    m
                })
                .collect();
            commutant_basis(&mats, 2 * n, &zero)
                .into_iter()
                .map(|x| Matrix::from_fn(n, n, zero.clone(), |i, j| x.get(n + i, j).clone()))
                .find(|b| !b.is_zero())
                .ok_or_else(|| Error::Internal("no twisted intertwiner".into()))?
        };
        let ys = (1..s).fold(y.clone(), |acc, _| acc.mul(&y));
        let mu = ys.get(0, 0).clone();
        if ys != Matrix::identity(n, zero.clone()).scale(&mu) || mu.is_zero() {
            return Err(Error::Internal("Y^s is not a nonzero scalar".into()));
        }
        let root = scalar_root(&mu, s)
            .ok_or_else(|| Error::Unsupported(format!("no {s}-th root of {mu} in the field")))?;
        let y = y.scale(&root.inverse().expect("nonzero"));
        Ok(QpModule { lp, r, blocks, y })
    }

    /// `T` as a matrix on the whole module (objects in enumeration order).
    pub fn twist(&self, qg: &QuotientGroupoid) -> ExactMatrix {
        let alg = qg.alg();
        let n = self.total_dim(alg);
        let offsets = self.offsets(alg);
        let mut t = Matrix::zeros(n, n, alg.field().zero());
        for (f, block) in self.blocks.iter().enumerate() {
            if let Some((i, _, _)) = block {
                let g = qg.rotate_object(f, 1);
                let b = if *i + 1 == self.r { self.y.clone() } else { Matrix::identity(self.lp.block_size(), alg.field().zero()) };
                t.put_block(offsets[g], offsets[f], &b);
            }
        }
        t
    }

    /// `T·Q(σ) = Q(θ_k σ)·T` for every basis morphism, blockwise.
    pub fn twist_counterexample(&self, qg: &QuotientGroupoid) -> Option<MorphKey> {
        let alg = qg.alg();
        let id = Matrix::identity(self.lp.block_size(), alg.field().zero());
        let tf = |f: usize| match self.blocks[f] {
            Some((i, _, _)) if i + 1 == self.r => &self.y,
            _ => &id,
        };
        alg.basis()
            .iter()
            .filter(|k| self.blocks[k.source as usize].is_some())
            .find(|k| {
                let rk = qg.rotate_key(k, 1);
                tf(k.target as usize).mul(&self.act(alg, k)) != self.act(alg, &rk).mul(tf(k.source as usize))
            })
            .copied()
    }

    /// Characters of the `θ_k`-eigenspaces `Q^j` (eigenvalue `ξ_ℓ^((ℓ/k)·j)`),
    /// `j = 0..k`, together with their dimensions.
    pub fn eigen_characters(&self, qg: &QuotientGroupoid, table: &GkdTable) -> Result<Vec<(usize, ClassFunction)>> {
        let alg = qg.alg();
        let field = alg.field();
        let k = qg.k();
        let t = self.twist(qg);
        let n = t.rows();
        let mut powers = vec![Matrix::identity(n, field.zero())];
        for _ in 1..k {
            let next = powers.last().expect("nonempty").mul(&t);
            powers.push(next);
        }
        if powers[k - 1].mul(&t) != Matrix::identity(n, field.zero()) {
            return Err(Error::Internal("T^k != 1".into()));
        }
        let inv_k = field.from_rational(Rational::from_int(k as i64)).inverse().expect("k > 0");
        let mut out = Vec::new();
        for j in 0..k {
            let coeffs: Vec<CycNum> =
                (0..k).map(|tt| field.root(-((qg.step() * j * tt) as i64)).times(&inv_k)).collect();
            let proj = powers
                .iter()
                .zip(&coeffs)
                .fold(Matrix::zeros(n, n, field.zero()), |acc, (p, c)| acc.add(&p.scale(c)));
            let dim = proj
                .trace()
                .as_rational()
                .and_then(|r| r.to_i64())
                .ok_or_else(|| Error::Internal("projector trace".into()))? as usize;
            let chi = class_function(&table.classes, crate::simples::CONJUGATE_SAMPLES, |x| {
                self.element_matrix(alg, &alg.phi_closed_form(x)).mul(&proj).trace()
            })?;
            out.push((dim, chi));
        }
        Ok(out)
    }
}
