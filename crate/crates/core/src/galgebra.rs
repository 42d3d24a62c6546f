//! The groupoid algebra `A_(ℓ,d)` with coefficients in `Q(ξ_ℓ)` and the
//! isomorphism `Φ: Q(ξ_ℓ)[S(ℓ,d)] → A_(ℓ,d)`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactnum::{CycField, CycNum, Echelon, Scalar, SparseVec};
use crate::groupoid::{ColorFn, GMorphism};
use crate::perm::Perm;
use crate::report::Report;
use crate::wreath::{self, WreathElem};
use crate::{Error, Result};

/// Compact handle of a basis morphism: source object index, target object
/// index, lexicographic rank of the permutation. The derived order is the
/// basis order of `A_(ℓ,d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorphKey {
    pub source: u32,
    pub target: u32,
    pub perm: u32,
}

/// Finite linear combination of basis morphisms; no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgElem {
    terms: BTreeMap<MorphKey, CycNum>,
}

impl AlgElem {
    pub fn zero() -> Self {
        AlgElem { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<MorphKey, CycNum> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &MorphKey) -> Option<&CycNum> {
        self.terms.get(k)
    }

    pub fn add_term(&mut self, k: MorphKey, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(slot) => {
                *slot = slot.plus(&c);
                if slot.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn add(&self, rhs: &AlgElem) -> AlgElem {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &CycNum) -> AlgElem {
        let mut out = AlgElem::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, c.times(s));
        }
        out
    }

    pub fn sub(&self, rhs: &AlgElem) -> AlgElem {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.negated());
        }
        out
    }
}

/// One serialized term of an [`AlgElem`].
#[derive(Clone, Debug, Serialize)]
pub struct Term {
    pub morphism: GMorphism,
    pub coeff: CycNum,
}

/// Tables for computing in `A_(ℓ,d)`.
#[derive(Clone, Debug)]
pub struct GroupoidAlgebra {
    ell: usize,
    d: usize,
    field: CycField,
    objects: Vec<ColorFn>,
    perms: Vec<Perm>,
    /// `compose[a * d! + b]` = rank of `perms[a] ∘ perms[b]`.
    compose: Vec<u32>,
    /// `push[f * d! + p]` = index of `f∘perms[p]⁻¹`.
    push: Vec<u32>,
    basis: Vec<MorphKey>,
}

impl GroupoidAlgebra {
    pub fn new(ell: usize, d: usize, cap: usize) -> Result<Self> {
        let order = wreath::group_order(ell, d);
        if order > cap as u128 {
            return Err(Error::cap("A_(l,d)", order, cap));
        }
        let field = CycField::new(ell as u32)?;
        let objects = crate::groupoid::objects(ell, d, cap)?;
        let perms = Perm::all(d);
        let np = perms.len();
        let mut compose = vec![0u32; np * np];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                compose[a * np + b] = pa.compose(pb).lex_rank() as u32;
            }
        }
        let mut push = vec![0u32; objects.len() * np];
        for (fi, f) in objects.iter().enumerate() {
            for (pi, p) in perms.iter().enumerate() {
                push[fi * np + pi] = f.push(p).index() as u32;
            }
        }
        let mut basis: Vec<MorphKey> = (0..objects.len())
            .flat_map(|f| {
                let push = &push;
                (0..np).map(move |p| MorphKey { source: f as u32, target: push[f * np + p], perm: p as u32 })
            })
            .collect();
        basis.sort();
        Ok(GroupoidAlgebra { ell, d, field, objects, perms, compose, push, basis })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn objects(&self) -> &[ColorFn] {
        &self.objects
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    pub fn perm(&self, rank: u32) -> &Perm {
        &self.perms[rank as usize]
    }

    /// Basis morphisms in basis order; `dim A_(ℓ,d) = ℓ^d·d!`.
    pub fn basis(&self) -> &[MorphKey] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_index(&self, k: &MorphKey) -> usize {
        self.basis.binary_search(k).expect("valid morphism key")
    }

    /// `σ: f → f∘σ⁻¹`.
    pub fn key_from(&self, source: usize, perm: u32) -> MorphKey {
        let np = self.perms.len();
        MorphKey { source: source as u32, target: self.push[source * np + perm as usize], perm }
    }

    pub fn key_of(&self, m: &GMorphism) -> MorphKey {
        self.key_from(m.source().index(), m.perm().lex_rank() as u32)
    }

    pub fn morphism(&self, k: &MorphKey) -> GMorphism {
        GMorphism::from_source(self.objects[k.source as usize].clone(), self.perms[k.perm as usize].clone())
    }

    pub fn compose_keys(&self, second: &MorphKey, first: &MorphKey) -> Option<MorphKey> {
        (first.target == second.source).then(|| MorphKey {
            source: first.source,
            target: second.target,
            perm: self.compose[second.perm as usize * self.perms.len() + first.perm as usize],
        })
    }

    pub fn inverse_key(&self, k: &MorphKey) -> MorphKey {
        let inv = self.perms[k.perm as usize].inverse().lex_rank() as u32;
        MorphKey { source: k.target, target: k.source, perm: inv }
    }

    pub fn basis_elem(&self, k: MorphKey) -> AlgElem {
        let mut e = AlgElem::zero();
        e.add_term(k, self.field.one());
        e
    }

    pub fn identity_key(&self, f: usize) -> MorphKey {
        MorphKey { source: f as u32, target: f as u32, perm: 0 }
    }

    /// `Σ_f e_f`.
    pub fn unit(&self) -> AlgElem {
        let mut e = AlgElem::zero();
        for f in 0..self.objects.len() {
            e.add_term(self.identity_key(f), self.field.one());
        }
        e
    }

    /// `a·b = a∘b`: `b` acts first; non-composable pairs contribute zero.
    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let mut by_source: BTreeMap<u32, Vec<(&MorphKey, &CycNum)>> = BTreeMap::new();
        for (k, c) in &a.terms {
            by_source.entry(k.source).or_default().push((k, c));
        }
        let mut out = AlgElem::zero();
        for (kb, cb) in &b.terms {
            if let Some(list) = by_source.get(&kb.target) {
                for (ka, ca) in list {
                    let k = self.compose_keys(ka, kb).expect("composable by construction");
                    out.add_term(k, ca.times(cb));
                }
            }
        }
        out
    }

    pub fn to_terms(&self, a: &AlgElem) -> Vec<Term> {
        a.terms
            .iter()
            .map(|(k, c)| Term { morphism: self.morphism(k), coeff: c.clone() })
            .collect()
    }

    /// Coordinates in the basis order.
    pub fn to_sparse(&self, a: &AlgElem) -> SparseVec<CycNum> {
        let mut v: SparseVec<CycNum> = a.terms.iter().map(|(k, c)| (self.basis_index(k), c.clone())).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    pub fn from_sparse(&self, v: &SparseVec<CycNum>) -> AlgElem {
        let mut a = AlgElem::zero();
        for (i, c) in v {
            a.add_term(self.basis[*i], c.clone());
        }
        a
    }

    /// `Φ(σ) = Σ_f σ: f → f∘σ⁻¹`.
    pub fn phi_perm(&self, sigma: &Perm) -> AlgElem {
        let p = sigma.lex_rank() as u32;
        let mut e = AlgElem::zero();
        for f in 0..self.objects.len() {
            e.add_term(self.key_from(f, p), self.field.one());
        }
        e
    }

    /// `Φ(s_0^{(j)}) = Σ_f ξ^{f(j)} e_f`, `j` 1-based.
    pub fn phi_s0(&self, j: usize) -> AlgElem {
        let mut e = AlgElem::zero();
        for (fi, f) in self.objects.iter().enumerate() {
            e.add_term(self.identity_key(fi), self.field.root(f.color(j - 1) as i64));
        }
        e
    }

    /// Images of `s_0, s_1, …, s_{d-1}`.
    pub fn phi_generators(&self) -> Vec<AlgElem> {
        let mut out = vec![self.phi_s0(1)];
        out.extend((0..self.d.saturating_sub(1)).map(|i| self.phi_perm(&Perm::adjacent(self.d, i))));
        out
    }

    /// `Φ(x)` as the product of generator images along a word for `x`.
    pub fn phi(&self, x: &WreathElem) -> AlgElem {
        if self.d == 0 {
            return self.unit();
        }
        let gens = self.phi_generators();
        wreath::generator_word(x)
            .into_iter()
            .fold(self.unit(), |acc, i| self.mul(&acc, &gens[i]))
    }

    /// `Φ(D(c)·P(σ)) = Σ_f ξ^{Σ_j c_j g(j)} (σ: f → g)`, `g = f∘σ⁻¹`.
    pub fn phi_closed_form(&self, x: &WreathElem) -> AlgElem {
        let p = x.perm().lex_rank() as u32;
        let mut e = AlgElem::zero();
        for f in 0..self.objects.len() {
            let k = self.key_from(f, p);
            let g = &self.objects[k.target as usize];
            let exp: usize = x.colors().iter().enumerate().map(|(j, &c)| c * g.color(j)).sum();
            e.add_term(k, self.field.root(exp as i64));
        }
        e
    }
}

/// How many pairs `verify_iso` checks for multiplicativity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairMode {
    /// Exhaustive when `|G|² ≤ 10⁷`, otherwise sampled with 10⁵ pairs.
    Auto { seed: u64 },
    /// All generator pairs plus `count` random pairs.
    Sampled { count: usize, seed: u64 },
}

pub const EXHAUSTIVE_PAIR_LIMIT: usize = 10_000_000;

/// Inverts `Φ` by solving in the span of the images of all group elements.
pub struct PhiInverse {
    elems: Vec<WreathElem>,
    ech: Echelon<CycNum>,
    dim: usize,
}

impl PhiInverse {
    pub fn new(alg: &GroupoidAlgebra, elems: Vec<WreathElem>, images: &[AlgElem]) -> Self {
        let dim = alg.dim();
        let n = elems.len();
        let mut ech = Echelon::with_pivot_limit(dim + n, dim, alg.field().zero());
        for (j, img) in images.iter().enumerate() {
            let mut v = alg.to_sparse(img);
            v.push((dim + j, alg.field().one()));
            ech.insert(&v);
        }
        PhiInverse { elems, ech, dim }
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    /// `Φ⁻¹(a)` as `(group element, coefficient)` pairs; `None` if `a` is not
    /// in the image.
    pub fn apply(&self, alg: &GroupoidAlgebra, a: &AlgElem) -> Option<Vec<(WreathElem, CycNum)>> {
        let red = self.ech.reduce(&alg.to_sparse(a));
        if red.iter().any(|(c, _)| *c < self.dim) {
            return None;
        }
        Some(red.into_iter().map(|(c, x)| (self.elems[c - self.dim].clone(), x.negated())).collect())
    }
}

/// Checks that `Φ` is an algebra isomorphism.
pub fn verify_iso(ell: usize, d: usize, mode: PairMode, cap: usize) -> Result<Report> {
    let alg = GroupoidAlgebra::new(ell, d, cap)?;
    let elems = wreath::enum_group(ell, d, cap)?;
    let n = elems.len();
    let mut report = Report::new();

    report.push("phi(e) = unit", alg.phi(&WreathElem::identity(ell, d)) == alg.unit(), "");

    let images: Vec<AlgElem> = elems.iter().map(|x| alg.phi(x)).collect();
    let closed_bad = elems
        .iter()
        .zip(&images)
        .find(|(x, img)| alg.phi_closed_form(x) != **img);
    report.push(
        "generator products match closed form",
        closed_bad.is_none(),
        closed_bad.map(|(x, _)| alloc::format!("differs at {x:?}")).unwrap_or_default(),
    );

    if d >= 1 {
        let gens = alg.phi_generators();
        let rel = wreath::check_relations(&wreath::presentation(ell, d), &gens, &alg.unit(), |a, b| alg.mul(a, b));
        report.extend(rel.prefixed("relation "));
    }

    let pairs = pair_list(n, &elems, mode);
    let mut bad: Option<String> = None;
    for &(i, j) in &pairs.pairs {
        let lhs = &images[elems[i].mul(&elems[j]).index()];
        if *lhs != alg.mul(&images[i], &images[j]) {
            bad = Some(alloc::format!("phi({:?}·{:?}) != phi·phi", elems[i], elems[j]));
            break;
        }
    }
    report.push(
        "multiplicative",
        bad.is_none(),
        bad.unwrap_or_else(|| alloc::format!("{} pairs ({})", pairs.pairs.len(), pairs.how)),
    );

    let inv = PhiInverse::new(&alg, elems.clone(), &images);
    report.push(
        "bijective (rank)",
        inv.rank() == alg.dim() && n == alg.dim(),
        alloc::format!("rank {} of {} images, dim A = {}", inv.rank(), n, alg.dim()),
    );

    let trip_bad = elems.iter().zip(&images).find(|(x, img)| {
        inv.apply(&alg, img)
            .map(|sol| !(sol.len() == 1 && sol[0].0 == **x && sol[0].1.is_one()))
            .unwrap_or(true)
    });
    report.push(
        "phi_inverse round trip",
        trip_bad.is_none(),
        trip_bad.map(|(x, _)| alloc::format!("fails at {x:?}")).unwrap_or_default(),
    );
    Ok(report)
}

struct Pairs {
    pairs: Vec<(usize, usize)>,
    how: &'static str,
}

fn pair_list(n: usize, elems: &[WreathElem], mode: PairMode) -> Pairs {
    let (count, seed) = match mode {
        PairMode::Auto { seed: _ } if n.saturating_mul(n) <= EXHAUSTIVE_PAIR_LIMIT => {
            return Pairs { pairs: (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect(), how: "exhaustive" };
        }
        PairMode::Auto { seed } => (100_000, seed),
        PairMode::Sampled { count, seed } => (count, seed),
    };
    let d = elems.first().map_or(0, WreathElem::d);
    let ell = elems.first().map_or(1, WreathElem::ell);
    let gen_idx: Vec<usize> = if d == 0 {
        Vec::new()
    } else {
        wreath::generators(ell, d).unwrap().iter().map(WreathElem::index).collect()
    };
    let mut pairs: Vec<(usize, usize)> = gen_idx.iter().flat_map(|&i| gen_idx.iter().map(move |&j| (i, j))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    use rand::Rng;
    pairs.extend((0..count).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))));
    Pairs { pairs, how: "sampled" }
}
