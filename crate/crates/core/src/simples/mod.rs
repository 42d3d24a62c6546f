//! Simple modules `L_p` of the groupoid algebra, their characters through
//! `Φ`, completeness, branching and induction from generalized Young
//! subgroups.

mod character;

use alloc::collections::BTreeMap;
use core::cell::RefCell;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

pub use character::{as_multiplicity, class_function, inner_product, Class, ClassFunction, ConjugacyClasses};

use crate::combinat::{enum_compositions, enum_multipartitions, outer_tensor, Composition, MultiPartition, OuterSpecht};
use crate::exactnum::{commutant_basis, CycField, CycNum, ExactMatrix, Matrix, Scalar};
use crate::galgebra::{AlgElem, GroupoidAlgebra, MorphKey};
use crate::groupoid::{canonical_morphism, canonical_object};
use crate::perm::Perm;
use crate::report::Report;
use crate::wreath::{self, WreathElem};
use crate::{Error, Result};

/// How many extra class members are evaluated when building a character.
pub const CONJUGATE_SAMPLES: usize = 2;

/// A module over `A_(ℓ,d)` given block-per-object: a space `M(f)` for each
/// object and a matrix `M(σ): M(f) → M(g)` for each basis morphism.
pub trait MatrixRep {
    fn block_dim(&self, obj: usize) -> usize;

    /// Matrix of the basis morphism `k`, of shape `block_dim(target) × block_dim(source)`.
    fn act(&self, alg: &GroupoidAlgebra, k: &MorphKey) -> ExactMatrix;

    fn offsets(&self, alg: &GroupoidAlgebra) -> Vec<usize> {
        let mut acc = 0;
        (0..alg.objects().len())
            .map(|f| {
                let o = acc;
                acc += self.block_dim(f);
                o
            })
            .collect()
    }

    fn total_dim(&self, alg: &GroupoidAlgebra) -> usize {
        (0..alg.objects().len()).map(|f| self.block_dim(f)).sum()
    }

    /// The whole module as one square matrix for an algebra element.
    fn element_matrix(&self, alg: &GroupoidAlgebra, a: &AlgElem) -> ExactMatrix {
        let offsets = self.offsets(alg);
        let n = self.total_dim(alg);
        let mut out = Matrix::zeros(n, n, alg.field().zero());
        for (k, c) in a.terms() {
            let (s, t) = (k.source as usize, k.target as usize);
            if self.block_dim(s) == 0 || self.block_dim(t) == 0 {
                continue;
            }
            let m = self.act(alg, k);
            for r in 0..m.rows() {
                for col in 0..m.cols() {
                    let x = m.get(r, col);
                    if !x.is_zero() {
                        let (rr, cc) = (offsets[t] + r, offsets[s] + col);
                        let v = out.get(rr, cc).plus(&c.times(x));
                        out.set(rr, cc, v);
                    }
                }
            }
        }
        out
    }

    /// Trace of `a` on the module; only endomorphism terms contribute.
    fn trace_of(&self, alg: &GroupoidAlgebra, a: &AlgElem) -> CycNum {
        let mut acc = alg.field().zero();
        for (k, c) in a.terms() {
            if k.source == k.target && self.block_dim(k.source as usize) > 0 {
                acc = acc.plus(&c.times(&self.act(alg, k).trace()));
            }
        }
        acc
    }

    /// `M(τ∘σ) = M(τ)·M(σ)` over all composable basis pairs touching a
    /// nonzero block, and `M(e_f) = 1`. Returns the first counterexample.
    fn functoriality_counterexample(&self, alg: &GroupoidAlgebra) -> Option<String> {
        let mut by_source: BTreeMap<u32, Vec<MorphKey>> = BTreeMap::new();
        for k in alg.basis() {
            if self.block_dim(k.source as usize) > 0 {
                by_source.entry(k.source).or_default().push(*k);
            }
        }
        for f in 0..alg.objects().len() {
            let n = self.block_dim(f);
            if n > 0 && self.act(alg, &alg.identity_key(f)) != Matrix::identity(n, alg.field().zero()) {
                return Some(alloc::format!("identity at object {:?}", alg.objects()[f]));
            }
        }
        for firsts in by_source.values() {
            for first in firsts {
                let m1 = self.act(alg, first);
                for second in by_source.get(&first.target).into_iter().flatten() {
                    let comp = alg.compose_keys(second, first).expect("composable");
                    if self.act(alg, &comp) != self.act(alg, second).mul(&m1) {
                        return Some(alloc::format!(
                            "{:?} after {:?}",
                            alg.morphism(second),
                            alg.morphism(first)
                        ));
                    }
                }
            }
        }
        None
    }
}

/// The simple module `L_p`.
#[derive(Clone, Debug)]
pub struct SimpleModule {
    label: MultiPartition,
    shape: Composition,
    specht: OuterSpecht,
    /// Block position of each object, `None` off the component of type λ.
    block_of: Vec<Option<usize>>,
    /// `σ_(f, f_λ)` and `σ_(f_λ, f)` per block.
    to_canonical: Vec<Perm>,
    from_canonical: Vec<Perm>,
    field: CycField,
    /// `ρ_p(τ)` for the `τ ∈ S_λ` used so far; `S_λ` can be large.
    young: RefCell<BTreeMap<Perm, ExactMatrix>>,
}

impl SimpleModule {
    pub fn label(&self) -> &MultiPartition {
        &self.label
    }

    pub fn shape(&self) -> &Composition {
        &self.shape
    }

    pub fn specht(&self) -> &OuterSpecht {
        &self.specht
    }

    /// `dim 𝒮_p`.
    pub fn block_size(&self) -> usize {
        self.specht.dim()
    }

    /// Objects of type λ, in object order.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.block_of.iter().enumerate().filter_map(|(f, b)| b.map(|_| f))
    }

    pub fn num_blocks(&self) -> usize {
        self.to_canonical.len()
    }

    /// `ρ_p(τ)` for `τ ∈ S_λ ≅ End(f_λ)`, `None` outside `S_λ`.
    pub fn young_matrix(&self, tau: &Perm) -> Option<ExactMatrix> {
        if let Some(m) = self.young.borrow().get(tau) {
            return Some(m.clone());
        }
        let rho = self.specht.matrix_of(tau).ok()?.to_cyclotomic(&self.field);
        self.young.borrow_mut().insert(tau.clone(), rho.clone());
        Some(rho)
    }

    /// `σ_(g,f_λ) ∘ π ∘ σ_(f_λ,f)` for `π: f → g`.
    pub fn transport(&self, alg: &GroupoidAlgebra, k: &MorphKey) -> Option<Perm> {
        let bs = self.block_of[k.source as usize]?;
        let bt = self.block_of[k.target as usize]?;
        Some(self.to_canonical[bt].compose(alg.perm(k.perm)).compose(&self.from_canonical[bs]))
    }
}

impl MatrixRep for SimpleModule {
    fn block_dim(&self, obj: usize) -> usize {
        if self.block_of[obj].is_some() {
            self.specht.dim()
        } else {
            0
        }
    }

    fn act(&self, alg: &GroupoidAlgebra, k: &MorphKey) -> ExactMatrix {
        match self.transport(alg, k) {
            Some(tau) => self.young_matrix(&tau).expect("transport lands in S_λ"),
            None => Matrix::zeros(
                self.block_dim(k.target as usize),
                self.block_dim(k.source as usize),
                alg.field().zero(),
            ),
        }
    }
}

/// Builds `L_p` on the groupoid with the parameters of `alg`.
pub fn build_lp(alg: &GroupoidAlgebra, p: &MultiPartition) -> Result<SimpleModule> {
    if p.ell() != alg.ell() || p.size() != alg.d() {
        return Err(Error::ParameterMismatch);
    }
    let shape = p.shape();
    let f_lambda = canonical_object(&shape);
    let specht = outer_tensor(p);
    let mut block_of = vec![None; alg.objects().len()];
    let mut to_canonical = Vec::new();
    let mut from_canonical = Vec::new();
    for (i, f) in alg.objects().iter().enumerate() {
        if f.type_of() == shape {
            block_of[i] = Some(to_canonical.len());
            to_canonical.push(canonical_morphism(f, &f_lambda)?.perm().clone());
            from_canonical.push(canonical_morphism(&f_lambda, f)?.perm().clone());
        }
    }
    Ok(SimpleModule {
        label: p.clone(),
        shape,
        specht,
        block_of,
        to_canonical,
        from_canonical,
        field: alg.field().clone(),
        young: RefCell::new(BTreeMap::new()),
    })
}

/// All labels `p` with `ℓ` components and total size `d`, grouped by shape.
pub fn all_labels(ell: usize, d: usize) -> Vec<MultiPartition> {
    enum_compositions(ell, d).iter().flat_map(enum_multipartitions).collect()
}

/// `Σ_f dim L_p(f) = (d!/λ!)·dim 𝒮_p`.
pub fn total_dim_check(alg: &GroupoidAlgebra, m: &SimpleModule) -> bool {
    let lam = m.shape().factorial();
    let predicted = crate::combinat::factorial(alg.d()) / lam * m.block_size() as u128;
    m.total_dim(alg) as u128 == predicted
}

/// Everything needed to compare modules through their characters.
pub struct CharacterTable {
    pub classes: ConjugacyClasses,
    /// `Φ(rep)` per class.
    phi_reps: Vec<AlgElem>,
}

impl CharacterTable {
    pub fn new(alg: &GroupoidAlgebra, cap: usize) -> Result<Self> {
        let elems = wreath::enum_group(alg.ell(), alg.d(), cap)?;
        let gens = if alg.d() == 0 { Vec::new() } else { wreath::generators(alg.ell(), alg.d())? };
        Ok(Self::from_classes(alg, ConjugacyClasses::new(elems, &gens)))
    }

    pub fn from_classes(alg: &GroupoidAlgebra, classes: ConjugacyClasses) -> Self {
        let phi_reps = (0..classes.len()).map(|c| alg.phi(classes.representative(c))).collect();
        CharacterTable { classes, phi_reps }
    }

    /// `χ(x) = tr Φ(x)`, with sampled constancy on classes.
    pub fn character(&self, alg: &GroupoidAlgebra, m: &dyn MatrixRep) -> Result<ClassFunction> {
        let rep_class: BTreeMap<usize, usize> =
            self.classes.classes().iter().enumerate().map(|(c, class)| (class.rep, c)).collect();
        class_function(&self.classes, CONJUGATE_SAMPLES, |x| {
            let pos = self.classes.position(x).expect("group element");
            match rep_class.get(&pos) {
                Some(&c) => m.trace_of(alg, &self.phi_reps[c]),
                None => m.trace_of(alg, &alg.phi_closed_form(x)),
            }
        })
    }

    pub fn inner(&self, alg: &GroupoidAlgebra, a: &ClassFunction, b: &ClassFunction) -> CycNum {
        inner_product(&self.classes, alg.field(), a, b)
    }
}

/// Image of the generators `Φ(s_0), …, Φ(s_{d-1})` in a module.
pub fn generator_images(alg: &GroupoidAlgebra, m: &dyn MatrixRep) -> Vec<ExactMatrix> {
    alg.phi_generators().iter().map(|g| m.element_matrix(alg, g)).collect()
}

/// Dimension of the commutant of the image of `A_(ℓ,d)` (generated by the
/// `Φ(s_i)`).
pub fn commutant_dim(alg: &GroupoidAlgebra, m: &dyn MatrixRep) -> usize {
    let n = m.total_dim(alg);
    if alg.d() == 0 {
        return n * n;
    }
    commutant_basis(&generator_images(alg, m), n, &alg.field().zero()).len()
}

/// Per-simple data reported by [`verify_complete`].
#[derive(Clone, Debug, Serialize)]
pub struct SimpleSummary {
    pub label: MultiPartition,
    pub shape: Composition,
    pub block_dim: usize,
    pub total_dim: usize,
}

pub struct Completeness {
    pub simples: Vec<SimpleSummary>,
    pub report: Report,
}

/// Context with every simple module and its character.
pub struct Simples {
    pub alg: GroupoidAlgebra,
    pub table: CharacterTable,
    pub modules: Vec<SimpleModule>,
    pub characters: Vec<ClassFunction>,
}

impl Simples {
    pub fn new(ell: usize, d: usize, cap: usize) -> Result<Self> {
        let alg = GroupoidAlgebra::new(ell, d, cap)?;
        let table = CharacterTable::new(&alg, cap)?;
        let modules = all_labels(ell, d)
            .iter()
            .map(|p| build_lp(&alg, p))
            .collect::<Result<Vec<_>>>()?;
        let characters = modules
            .iter()
            .map(|m| table.character(&alg, m))
            .collect::<Result<Vec<_>>>()?;
        Ok(Simples { alg, table, modules, characters })
    }

    pub fn index_of(&self, p: &MultiPartition) -> Option<usize> {
        self.modules.iter().position(|m| m.label() == p)
    }

    /// Multiplicity of each simple in a class function, if all are
    /// nonnegative integers.
    pub fn decompose(&self, chi: &ClassFunction) -> core::result::Result<Vec<u64>, String> {
        self.characters
            .iter()
            .zip(&self.modules)
            .map(|(psi, m)| {
                let ip = self.table.inner(&self.alg, chi, psi);
                as_multiplicity(&ip).ok_or_else(|| alloc::format!("multiplicity of {} is {ip}", m.label()))
            })
            .collect()
    }
}

/// Functoriality, the dimension formula, Wedderburn, irreducibility and pairwise
/// distinctness of the `L_p`.
pub fn verify_complete(ell: usize, d: usize, cap: usize) -> Result<Completeness> {
    let s = Simples::new(ell, d, cap)?;
    let alg = &s.alg;
    let mut report = Report::new();
    let mut simples = Vec::new();
    let mut wedderburn: u128 = 0;
    for m in &s.modules {
        let label = m.label();
        let total = m.total_dim(alg);
        wedderburn += (total as u128) * (total as u128);
        simples.push(SimpleSummary { label: label.clone(), shape: m.shape().clone(), block_dim: m.block_size(), total_dim: total });
        let bad = m.functoriality_counterexample(alg);
        report.push(alloc::format!("functor {label}"), bad.is_none(), bad.unwrap_or_default());
        report.push(
            alloc::format!("dimension formula {label}"),
            total_dim_check(alg, m),
            alloc::format!("total {total}, block {}", m.block_size()),
        );
        let cd = commutant_dim(alg, m);
        report.push(alloc::format!("commutant {label}"), cd == 1, alloc::format!("dim {cd}"));
    }
    let order = wreath::group_order(ell, d);
    report.push("wedderburn", wedderburn == order, alloc::format!("sum of squares {wedderburn}, |G| = {order}"));

    let mut orth_bad = None;
    for i in 0..s.modules.len() {
        for j in 0..s.modules.len() {
            let ip = s.table.inner(alg, &s.characters[i], &s.characters[j]);
            let expected = if i == j { alg.field().one() } else { alg.field().zero() };
            if ip != expected && orth_bad.is_none() {
                orth_bad = Some(alloc::format!("<{}, {}> = {ip}", s.modules[i].label(), s.modules[j].label()));
            }
        }
    }
    let distinct = (0..s.characters.len())
        .all(|i| (i + 1..s.characters.len()).all(|j| s.characters[i] != s.characters[j]));
    report.push("characters pairwise distinct", distinct, "");
    report.push("characters orthonormal", orth_bad.is_none(), orth_bad.unwrap_or_default());
    report.push(
        "class count equals simple count",
        s.table.classes.len() == s.modules.len(),
        alloc::format!("{} classes, {} simples", s.table.classes.len(), s.modules.len()),
    );
    Ok(Completeness { simples, report })
}

/// Restriction of one simple to `S(ℓ,d-1)`.
#[derive(Clone, Debug, Serialize)]
pub struct Branching {
    pub label: MultiPartition,
    /// `(q, multiplicity)` for every simple of `S(ℓ,d-1)` that occurs.
    pub restriction: Vec<(MultiPartition, u64)>,
    /// The removable-node prediction.
    pub expected: Vec<MultiPartition>,
    pub matches: bool,
}

/// Restricts every simple of `big` along the first `d-1` strands and
/// decomposes against the simples of `small`.
pub fn branching_all(big: &Simples, small: &Simples) -> Result<Vec<Branching>> {
    if small.alg.d() + 1 != big.alg.d() || small.alg.ell() != big.alg.ell() {
        return Err(Error::ParameterMismatch);
    }
    let mut out = Vec::new();
    for (m, chi) in big.modules.iter().zip(&big.characters) {
        let restricted = ClassFunction {
            values: (0..small.table.classes.len())
                .map(|c| {
                    let y = small.table.classes.representative(c).embed(1);
                    chi.at(&big.table.classes, &y).expect("embedded element").clone()
                })
                .collect(),
        };
        let mult = small.decompose(&restricted).map_err(Error::Internal)?;
        let restriction: Vec<(MultiPartition, u64)> = small
            .modules
            .iter()
            .zip(mult)
            .filter(|(_, k)| *k > 0)
            .map(|(q, k)| (q.label().clone(), k))
            .collect();
        let mut expected = m.label().remove_one();
        expected.sort();
        let mut got: Vec<MultiPartition> = restriction.iter().map(|(q, _)| q.clone()).collect();
        got.sort();
        let matches = restriction.iter().all(|(_, k)| *k == 1) && got == expected;
        out.push(Branching { label: m.label().clone(), restriction, expected, matches });
    }
    Ok(out)
}

/// Generalized Young subgroup checks for `L_p` at the object `f`: the generalized Young
/// subgroup `G^f` has order `ℓ^d·λ!`, stabilizes `L_p(f)`, and its index
/// times `dim L_p(f)` is the total dimension. When `with_character` is set,
/// the induced character is also compared with `χ_p` class by class.
pub fn young_induction_check(
    s: &Simples,
    p: &MultiPartition,
    f: usize,
    with_character: bool,
) -> Result<Report> {
    let alg = &s.alg;
    let idx = s.index_of(p).ok_or_else(|| Error::Invalid(alloc::format!("unknown label {p}")))?;
    let m = &s.modules[idx];
    let obj = &alg.objects()[f];
    if obj.type_of() != *m.shape() {
        return Err(Error::TypeMismatch);
    }
    let (ell, d) = (alg.ell(), alg.d());
    let mut gens: Vec<WreathElem> = (1..=d).map(|j| wreath::s0_j(ell, d, j)).collect::<Result<_>>()?;
    for i in 0..d.saturating_sub(1) {
        for j in i + 1..d {
            if obj.color(i) == obj.color(j) {
                let mut img: Vec<usize> = (0..d).collect();
                img.swap(i, j);
                gens.push(WreathElem::from_perm(ell, Perm::new(img)?));
            }
        }
    }
    let sub = wreath::closure(&gens, WreathElem::identity(ell, d));
    let mut report = Report::new();
    let expected = (ell as u128).pow(d as u32) * m.shape().factorial();
    report.push("order of G^f", sub.len() as u128 == expected, alloc::format!("{} vs l^d*lambda! = {expected}", sub.len()));

    let fk = alg.identity_key(f);
    let stable = sub.iter().all(|g| alg.phi_closed_form(g).terms().keys().all(|k| k.source != fk.source || k.target == fk.source));
    report.push("G^f stabilizes L_p(f)", stable, "");

    let index = wreath::group_order(ell, d) / sub.len() as u128;
    let total = m.total_dim(alg) as u128;
    report.push(
        "index times dim equals total dim",
        index * m.block_size() as u128 == total,
        alloc::format!("{index} * {} vs {total}", m.block_size()),
    );

    if with_character {
        // Ind χ(x) = (1/|H|) Σ_{y ∈ G, y⁻¹xy ∈ H} χ_H(y⁻¹xy), where χ_H(h) is
        // the trace of Φ(h) on the block at f.
        let local = |h: &WreathElem| -> CycNum {
            let ph = alg.phi_closed_form(h);
            ph.terms()
                .iter()
                .filter(|(k, _)| k.source == fk.source && k.target == fk.source)
                .fold(alg.field().zero(), |acc, (k, c)| acc.plus(&c.times(&m.act(alg, k).trace())))
        };
        let h_order = alg.field().from_int(sub.len() as i64);
        let mut ok = true;
        for c in 0..s.table.classes.len() {
            let x = s.table.classes.representative(c);
            let mut acc = alg.field().zero();
            for y in s.table.classes.elements() {
                let conj = y.inverse().mul(x).mul(y);
                if sub.contains(&conj) {
                    acc = acc.plus(&local(&conj));
                }
            }
            let induced = acc.times(&h_order.inverse().expect("nonzero"));
            if induced != s.characters[idx].values[c] {
                ok = false;
                break;
            }
        }
        report.push("induced character equals chi_p", ok, "");
    }
    Ok(report)
}
