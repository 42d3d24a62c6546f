//! The reflection groups `G(ℓ,k,d)` through the quotient groupoid
//! `𝒢_(ℓ,d)/H_k`, where `H_k` is generated by the color rotation
//! `θ_k: i ↦ i + ℓ/k`.

mod modules;
mod quotient;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use serde::Serialize;

pub use modules::{build_lpm, q_labels, GkdTable, LpmModule, QSimpleLabel, QpModule, QuotientRep};
pub use quotient::{rotate_composition, ColorOrbit, QKey, QuotientGroupoid};

use crate::combinat::{factorial, Composition, MultiPartition};
use crate::exactnum::{commutant_basis, Echelon};
use crate::galgebra::{GroupoidAlgebra, PhiInverse};
use crate::groupoid::{canonical_morphism, ColorFn, GMorphism};
use crate::report::Report;
use crate::simples::{all_labels, as_multiplicity, build_lp, ClassFunction, MatrixRep};
use crate::wreath::{self, check_divisor};
use crate::{Error, Result};

/// The action of `θ_k`.
pub trait ThetaK: Sized {
    fn theta_k(&self, ell: usize, k: usize) -> Result<Self>;
}

impl ThetaK for ColorFn {
    fn theta_k(&self, ell: usize, k: usize) -> Result<Self> {
        check_divisor(ell, k)?;
        Ok(self.rotate(ell / k))
    }
}

impl ThetaK for GMorphism {
    fn theta_k(&self, ell: usize, k: usize) -> Result<Self> {
        GMorphism::new(self.source().theta_k(ell, k)?, self.target().theta_k(ell, k)?, self.perm().clone())
    }
}

impl ThetaK for Composition {
    fn theta_k(&self, ell: usize, k: usize) -> Result<Self> {
        check_divisor(ell, k)?;
        Ok(rotate_composition(self, ell / k))
    }
}

pub fn quotient_groupoid(ell: usize, k: usize, d: usize, cap: usize) -> Result<QuotientGroupoid> {
    check_divisor(ell, k)?;
    QuotientGroupoid::new(GroupoidAlgebra::new(ell, d, cap)?, k)
}

/// Endomorphism structure of one quotient object.
#[derive(Clone, Debug, Serialize)]
pub struct EndoStructure {
    pub representative: ColorFn,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    pub lambda_factorial: u128,
    pub endo_order: usize,
    /// Order of the orbit of `σ_(f,h(f))` in the quotient.
    pub generator_order: usize,
    pub color_preserving_normal: bool,
    /// Every endomorphism is `c^t∘π` for exactly one `t < s` and color-preserving `π`.
    pub semidirect: bool,
}

impl EndoStructure {
    pub fn holds(&self) -> bool {
        self.endo_order as u128 == self.stabilizer_order as u128 * self.lambda_factorial
            && self.generator_order == self.stabilizer_order
            && self.color_preserving_normal
            && self.semidirect
    }
}

pub fn endo_structure(qg: &QuotientGroupoid, o: usize) -> Result<EndoStructure> {
    let alg = qg.alg();
    let r = qg.representative(o);
    let f = &alg.objects()[r];
    let lambda = f.type_of();
    let s = qg.stabilizer_order(&lambda);
    let endos: Vec<QKey> =
        qg.basis().iter().filter(|q| q.source as usize == r && qg.target_orbit(q) == o).copied().collect();
    let colored: BTreeSet<QKey> = endos.iter().filter(|q| q.target as usize == r).copied().collect();
    let c = canonical_morphism(f, &f.rotate(qg.k() / s * qg.step()))?;
    let c = alg.key_of(&c);
    let id = qg.identity(o);
    let mut generator_order = 1;
    let mut acc = c;
    while acc != id {
        acc = qg.compose(&c, &acc).ok_or_else(|| Error::Internal("endomorphism".into()))?;
        generator_order += 1;
        if generator_order > endos.len() {
            break;
        }
    }
    let compose = |a: &QKey, b: &QKey| qg.compose(a, b).expect("endomorphisms compose");
    let normal = endos
        .iter()
        .all(|x| colored.iter().all(|y| colored.contains(&compose(&compose(x, y), &qg.inverse(x)))));
    let mut products = BTreeSet::new();
    let mut ct = id;
    for _ in 0..s {
        for y in &colored {
            products.insert(compose(&ct, y));
        }
        ct = compose(&c, &ct);
    }
    let semidirect = products.len() == s * colored.len() && products.len() == endos.len();
    Ok(EndoStructure {
        representative: f.clone(),
        orbit_size: qg.orbit_members(o).len(),
        stabilizer_order: s,
        lambda_factorial: lambda.factorial(),
        endo_order: endos.len(),
        generator_order,
        color_preserving_normal: normal,
        semidirect,
    })
}

/// `(ℓ,k,d) = (2,2,2)` has two objects, one with endomorphisms
/// `≅ S_2` and one with endomorphisms `≅ H_2`.
pub fn two_orbit_example(cap: usize) -> Result<Report> {
    let qg = quotient_groupoid(2, 2, 2, cap)?;
    let mut report = Report::new();
    report.push("objects", qg.orbits().len() == 2, format!("{} quotient objects", qg.orbits().len()));
    let mut kinds = Vec::new();
    for o in 0..qg.orbits().len() {
        let e = endo_structure(&qg, o)?;
        // S_2: every endomorphism preserves colors; H_2: only the identity does
        let colored = qg.basis().iter().filter(|q| q.source == q.target && qg.source_orbit(q) == o).count();
        kinds.push((e.endo_order, colored));
    }
    kinds.sort();
    report.push(
        "endomorphisms",
        kinds == [(2, 1), (2, 2)],
        format!("(order, color-preserving) per object: {kinds:?}"),
    );
    let f12 = ColorFn::new(2, alloc::vec![1, 2])?;
    report.push(
        "theta swaps colors",
        f12.theta_k(2, 2)?.values() == [2, 1],
        "θ_2((1,2)) = (2,1)",
    );
    Ok(report)
}

/// Freeness, orbit sizes, `|End(o)| = |H_k^λ|·λ!` and representative
/// independence of composition.
pub fn quotient_check(qg: &QuotientGroupoid) -> Result<(Vec<EndoStructure>, Report)> {
    let alg = qg.alg();
    let (ell, k, d) = (alg.ell(), qg.k(), alg.d());
    let mut report = Report::new();
    if d >= 1 {
        let sizes: BTreeSet<usize> = (0..qg.orbits().len()).map(|o| qg.orbit_members(o).len()).collect();
        report.push("free on objects", sizes.iter().all(|&n| n == k), format!("orbit sizes {sizes:?}"));
        report.push(
            "object count",
            qg.orbits().len() * k == ell.pow(d as u32),
            format!("{} = ℓ^d/k", qg.orbits().len()),
        );
    }
    let expected = wreath::group_order(ell, d) / if d == 0 { 1 } else { k as u128 };
    report.push(
        "dim A_(l,k,d)",
        qg.basis().len() as u128 == expected,
        format!("{} = ℓ^d·d!/k", qg.basis().len()),
    );
    let mut endos = Vec::new();
    let mut bad = Vec::new();
    for o in 0..qg.orbits().len() {
        let e = endo_structure(qg, o)?;
        if !e.holds() {
            bad.push(format!("{:?}", e.representative));
        }
        endos.push(e);
    }
    report.push("endomorphism orders", bad.is_empty(), format!("{} orbits; failing: {bad:?}", endos.len()));
    let mut mismatch = None;
    'outer: for first in alg.basis() {
        for p in 0..alg.perms().len() {
            let second = alg.key_from(first.target as usize, p as u32);
            let raw = alg.compose_keys(&second, first).expect("composable");
            let via = qg.compose(&qg.normalize(&second), &qg.normalize(first));
            if via != Some(qg.normalize(&raw)) {
                mismatch = Some(format!("{:?} after {:?}", alg.morphism(&second), alg.morphism(first)));
                break 'outer;
            }
        }
    }
    report.push(
        "composition independent of representatives",
        mismatch.is_none(),
        mismatch.unwrap_or_else(|| "all composable pairs".into()),
    );
    Ok((endos, report))
}

/// `Ψ` is injective, unital and multiplicative on basis pairs.
pub fn psi_check(qg: &QuotientGroupoid) -> Report {
    let alg = qg.alg();
    let mut report = Report::new();
    let mut ech = Echelon::new(alg.dim(), alg.field().zero());
    for q in qg.basis() {
        ech.insert(&alg.to_sparse(&qg.psi(q)));
    }
    report.push(
        "psi injective",
        ech.rank() == qg.basis().len(),
        format!("rank {} of {}", ech.rank(), qg.basis().len()),
    );
    let unit = (0..qg.orbits().len()).fold(crate::galgebra::AlgElem::zero(), |acc, o| acc.add(&qg.psi(&qg.identity(o))));
    report.push("psi unital", unit == alg.unit(), "Ψ(1) = Σ_f e_f");
    let mut bad = None;
    'outer: for q1 in qg.basis() {
        let p1 = qg.psi(q1);
        for q2 in qg.basis() {
            let prod = alg.mul(&qg.psi(q2), &p1);
            let expected = match qg.compose(q2, q1) {
                Some(c) => qg.psi(&c),
                None => crate::galgebra::AlgElem::zero(),
            };
            if prod != expected {
                bad = Some(format!("{:?} after {:?}", alg.morphism(q2), alg.morphism(q1)));
                break 'outer;
            }
        }
    }
    report.push("psi multiplicative", bad.is_none(), bad.unwrap_or_else(|| "all basis pairs".into()));
    report
}

/// The span of `Φ(G(ℓ,k,d))` equals the image of `Ψ`. Each `Ψ(q)` is
/// written explicitly as `Φ` of a combination of elements of `G(ℓ,k,d)`,
/// which is `Φ⁻¹Ψ(q)` since `Φ` is injective. Both `Φ(x)` and `Ψ(q)` live on
/// morphisms with a single underlying permutation, so the computation splits
/// into one block per permutation.
pub fn theorem55_check(qg: &QuotientGroupoid, cap: usize) -> Result<Report> {
    let alg = qg.alg();
    let k = qg.k();
    let np = alg.perms().len();
    let mut members = alloc::vec![Vec::new(); np];
    let mut count = 0;
    for x in wreath::enum_group(alg.ell(), alg.d(), cap)? {
        if wreath::gkd_member(&x, k)? {
            members[x.perm().lex_rank()].push(x);
            count += 1;
        }
    }
    let mut psis = alloc::vec![Vec::new(); np];
    for q in qg.basis() {
        psis[q.perm as usize].push((*q, qg.psi(q)));
    }
    let (mut rank_phi, mut rank_psi) = (0, 0);
    let mut phi_in_psi = true;
    let mut outside = None;
    for (block, psi_block) in members.into_iter().zip(&psis) {
        let images: Vec<_> = block.iter().map(|x| alg.phi(x)).collect();
        let mut psi_span = Echelon::new(alg.dim(), alg.field().zero());
        for (_, p) in psi_block {
            psi_span.insert(&alg.to_sparse(p));
        }
        rank_psi += psi_span.rank();
        phi_in_psi &= images.iter().all(|img| psi_span.contains(&alg.to_sparse(img)));
        let image_of: alloc::collections::BTreeMap<_, _> = block.iter().cloned().zip(images.iter()).collect();
        let inv = PhiInverse::new(alg, block.clone(), &images);
        rank_phi += inv.rank();
        for (q, p) in psi_block {
            if outside.is_some() {
                break;
            }
            let back = inv.apply(alg, p).map(|terms| {
                terms.iter().fold(crate::galgebra::AlgElem::zero(), |acc, (x, c)| acc.add(&image_of[x].scale(c)))
            });
            if back.as_ref() != Some(p) {
                outside = Some(format!("Ψ({:?}) is not Φ of an element of C[G(l,k,d)]", alg.morphism(q)));
            }
        }
    }
    let expected = qg.basis().len();
    let mut report = Report::new();
    report.push(
        "dimensions",
        rank_phi == expected && rank_psi == expected && count == expected,
        format!("|G(l,k,d)| = {count}, rank Φ = {rank_phi}, rank Ψ = {rank_psi}, expected {expected}"),
    );
    report.push(
        "span equality",
        phi_in_psi && outside.is_none(),
        format!("Φ ⊆ Ψ: {phi_in_psi}; Ψ ⊆ Φ: {}", outside.unwrap_or_else(|| "true".into())),
    );
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct QSimpleSummary {
    pub label: QSimpleLabel,
    pub stabilizer_order: usize,
    pub dim: usize,
}

/// All `L_(p,m)` with their characters.
pub struct QSimples {
    pub modules: Vec<LpmModule>,
    pub characters: Vec<ClassFunction>,
}

impl QSimples {
    pub fn new(qg: &QuotientGroupoid, table: &GkdTable) -> Result<Self> {
        let mut modules = Vec::new();
        let mut characters = Vec::new();
        for label in q_labels(qg) {
            let m = build_lpm(qg, &label)?;
            characters.push(table.character(qg, &m)?);
            modules.push(m);
        }
        Ok(QSimples { modules, characters })
    }

    pub fn index_of(&self, p: &MultiPartition, m: usize) -> Option<usize> {
        self.modules.iter().position(|x| x.label().p == *p && x.label().m == m)
    }
}

/// Functoriality, Wedderburn, commutants and orthonormality of the `L_(p,m)`.
pub fn theorem77_check(qg: &QuotientGroupoid, table: &GkdTable, simples: &QSimples) -> (Vec<QSimpleSummary>, Report) {
    let field = qg.alg().field();
    let mut report = Report::new();
    let mut summaries = Vec::new();
    let gens: Vec<_> = table
        .generators
        .iter()
        .map(|g| qg.psi_inverse(&qg.alg().phi(g)).expect("H_k-invariant"))
        .collect();
    let mut sum_sq: u128 = 0;
    let mut broken = Vec::new();
    let mut reducible = Vec::new();
    for m in &simples.modules {
        let n = m.total_dim(qg);
        sum_sq += (n * n) as u128;
        if let Some(e) = m.functoriality_counterexample(qg) {
            broken.push(format!("{:?}: {e}", m.label()));
        }
        let images: Vec<_> = gens.iter().map(|g| m.element_matrix(qg, g)).collect();
        let comm = if gens.is_empty() { n * n } else { commutant_basis(&images, n, &field.zero()).len() };
        if comm != 1 {
            reducible.push(format!("{:?}: {comm}", m.label()));
        }
        summaries.push(QSimpleSummary {
            label: m.label().clone(),
            stabilizer_order: m.stabilizer_order(),
            dim: n,
        });
    }
    report.push("functoriality", broken.is_empty(), format!("{} modules; failing: {broken:?}", simples.modules.len()));
    let expected = qg.basis().len() as u128;
    report.push("wedderburn", sum_sq == expected, format!("Σ dim² = {sum_sq}, ℓ^d·d!/k = {expected}"));
    report.push("commutant dim 1", reducible.is_empty(), format!("failing: {reducible:?}"));
    let mut gram_ok = true;
    let chars = &simples.characters;
    for i in 0..chars.len() {
        for j in 0..chars.len() {
            let v = table.inner(qg, &chars[i], &chars[j]);
            gram_ok &= v == field.from_int((i == j) as i64);
        }
    }
    let distinct: BTreeSet<_> = chars.iter().map(|c| format!("{c:?}")).collect();
    report.push(
        "characters orthonormal",
        gram_ok && distinct.len() == chars.len(),
        format!("{} characters, {} distinct", chars.len(), distinct.len()),
    );
    report.push(
        "class count",
        table.classes.len() == chars.len(),
        format!("{} classes, {} labels", table.classes.len(), chars.len()),
    );
    (summaries, report)
}

/// `Res L_p = ⊕_m L_(p',m)` with `p'` the rotation of `p` over `Γ`, each once.
pub fn cor78_check(qg: &QuotientGroupoid, table: &GkdTable, simples: &QSimples, p: &MultiPartition) -> Result<Report> {
    let alg = qg.alg();
    let field = alg.field();
    let lp = build_lp(alg, p)?;
    let res = table.restricted(alg, &lp)?;
    let lambda = p.shape();
    let t = (0..qg.k())
        .find(|&t| qg.cross_section_rep(&lambda) == rotate_composition(&lambda, t * qg.step()))
        .expect("orbit meets Γ");
    let p_rep = p.rotate(t * qg.step());
    let s = qg.stabilizer_order(&lambda);
    let mut report = Report::new();
    let mut mults = Vec::new();
    for (i, chi) in simples.characters.iter().enumerate() {
        let v = as_multiplicity(&table.inner(qg, &res, chi));
        let label = simples.modules[i].label();
        let expected = u64::from(label.p == p_rep);
        if v != Some(expected) {
            mults.push(format!("{:?}: {v:?}", label));
        }
    }
    let norm = table.inner(qg, &res, &res);
    report.push(
        format!("restriction of L_{p}"),
        mults.is_empty() && norm == field.from_int(s as i64),
        format!("restriction = ⊕_(m ≤ {s}) L_({p_rep},m); ⟨Res,Res⟩ = {norm}; mismatches: {mults:?}"),
    );
    Ok(report)
}

/// Result of the `Q_p` cross-check for one `p`.
#[derive(Clone, Debug, Serialize)]
pub struct QpMatch {
    pub p: MultiPartition,
    /// `m` of the `L_(p,m)` isomorphic to the eigenspace for `ξ_ℓ^((ℓ/k)·j)`, `j = 0..k`.
    pub m_of_j: Vec<usize>,
}

/// Builds `Q_p`, checks that `T` intertwines, and matches every
/// `θ_k`-eigenspace with an `L_(p,m)` by characters. The eigenvalue
/// `ξ_ℓ^((ℓ/k)·j)` must give `m ≡ j (mod |H_k^λ|)`.
pub fn qp_cross_check(
    qg: &QuotientGroupoid,
    table: &GkdTable,
    simples: &QSimples,
    p: &MultiPartition,
) -> Result<(QpMatch, Report)> {
    let q = QpModule::new(qg, p)?;
    let alg = qg.alg();
    let mut report = Report::new();
    let bad = q.twist_counterexample(qg);
    report.push(
        format!("Q_{p} twist"),
        bad.is_none(),
        bad.map(|k| format!("{:?}", alg.morphism(&k))).unwrap_or_else(|| "T·Q(σ) = Q(θσ)·T".into()),
    );
    let total = q.total_dim(alg);
    let s = qg.stabilizer_order(&p.shape());
    let mut m_of_j = Vec::new();
    let mut failures = Vec::new();
    for (j, (dim, chi)) in q.eigen_characters(qg, table)?.into_iter().enumerate() {
        let hits: Vec<usize> = (1..=s)
            .filter(|&m| simples.index_of(p, m).is_some_and(|i| simples.characters[i] == chi))
            .collect();
        if dim * qg.k() != total || hits.len() != 1 {
            failures.push(format!("j = {j}: dim {dim}, matches {hits:?}"));
        }
        let m = hits.first().copied().unwrap_or(0);
        if m % s != j % s {
            failures.push(format!("j = {j}: m = {m} is not j mod {s}"));
        }
        m_of_j.push(m);
    }
    report.push(
        format!("Q_{p} eigenspaces"),
        failures.is_empty(),
        format!("m per eigenvalue exponent j: {m_of_j:?}; failures: {failures:?}"),
    );
    Ok((QpMatch { p: p.clone(), m_of_j }, report))
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitSummary {
    pub representative: ColorFn,
    pub size: usize,
    pub lambda: Composition,
    pub stabilizer_order: usize,
    pub endo_order: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GkdSummary {
    pub ell: usize,
    pub k: usize,
    pub d: usize,
    pub group_order: usize,
    pub gamma: Vec<Composition>,
    pub orbits: Vec<OrbitSummary>,
    pub simples: Vec<QSimpleSummary>,
    pub qp: Vec<QpMatch>,
}

/// Every check of this module for one `(ℓ,k,d)`.
pub fn verify_gkd(ell: usize, k: usize, d: usize, cap: usize) -> Result<(GkdSummary, Report)> {
    let qg = quotient_groupoid(ell, k, d, cap)?;
    let mut report = Report::new();
    let (endos, r) = quotient_check(&qg)?;
    report.extend(r);
    report.extend(psi_check(&qg));
    report.extend(theorem55_check(&qg, cap)?);
    let table = GkdTable::new(qg.alg(), k, cap)?;
    let (simples_summary, qs) = match QSimples::new(&qg, &table) {
        Ok(qs) => {
            let (summary, r) = theorem77_check(&qg, &table, &qs);
            report.extend(r);
            (summary, Some(qs))
        }
        Err(e) => {
            report.push("quotient simples", false, format!("{e}"));
            (Vec::new(), None)
        }
    };
    let mut qp = Vec::new();
    if let Some(qs) = &qs {
        for p in all_labels(ell, d) {
            report.extend(cor78_check(&qg, &table, qs, &p)?);
        }
        let gamma: BTreeSet<Composition> = qg.gamma().into_iter().collect();
        // for d = 0 the single object is fixed by H_k and Q_p has no free twist
        for p in all_labels(ell, d).into_iter().filter(|p| d > 0 && gamma.contains(&p.shape())) {
            let (m, r) = qp_cross_check(&qg, &table, qs, &p)?;
            report.extend(r);
            qp.push(m);
        }
    }
    let orbits = endos
        .iter()
        .map(|e| OrbitSummary {
            representative: e.representative.clone(),
            size: e.orbit_size,
            lambda: e.representative.type_of(),
            stabilizer_order: e.stabilizer_order,
            endo_order: e.endo_order,
        })
        .collect();
    let summary = GkdSummary {
        ell,
        k,
        d,
        group_order: table.classes.order(),
        gamma: qg.gamma(),
        orbits,
        simples: simples_summary,
        qp,
    };
    Ok((summary, report))
}

/// `|G(ℓ,k,d)|` predicted by the index: `ℓ^d·d!/k` (for `d ≥ 1`).
pub fn gkd_order(ell: usize, k: usize, d: usize) -> u128 {
    if d == 0 {
        1
    } else {
        (ell as u128).pow(d as u32) * factorial(d) / k as u128
    }
}
