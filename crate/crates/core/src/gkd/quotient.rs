//! The quotient groupoid `𝒢^k_(ℓ,d) = 𝒢_(ℓ,d)/H_k` and the embedding `Ψ`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

use crate::combinat::Composition;
use crate::exactnum::CycNum;
use crate::galgebra::{AlgElem, GroupoidAlgebra, MorphKey};
use crate::groupoid::ColorFn;
use crate::wreath::check_divisor;
use crate::Result;

/// `θ_k^t` on compositions: the count of color `i` moves to color
/// `i + t·ℓ/k`.
pub fn rotate_composition(lambda: &Composition, shift: usize) -> Composition {
    let ell = lambda.ell();
    let mut parts = vec![0; ell];
    for (i, &p) in lambda.parts().iter().enumerate() {
        parts[(i + shift) % ell] = p;
    }
    Composition::new(parts)
}

/// An `H_k`-orbit of objects.
#[derive(Clone, Debug, Serialize)]
pub struct ColorOrbit {
    /// Lexicographically smallest member.
    pub representative: ColorFn,
    /// `θ_k^t(representative)` for `t = 0..k`, deduplicated.
    pub orbit: Vec<ColorFn>,
}

/// A quotient morphism is stored as its unique lift whose source is the
/// representative of the source orbit.
pub type QKey = MorphKey;

pub struct QuotientGroupoid {
    alg: GroupoidAlgebra,
    k: usize,
    /// `ℓ/k`, the color shift of `θ_k`.
    step: usize,
    /// `rot[t][f]` = index of `θ_k^t(f)`.
    rot: Vec<Vec<u32>>,
    orbits: Vec<ColorOrbit>,
    /// Object indices of each orbit, starting with the representative.
    orbit_members: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
    basis: Vec<QKey>,
}

impl QuotientGroupoid {
    pub fn new(alg: GroupoidAlgebra, k: usize) -> Result<Self> {
        check_divisor(alg.ell(), k)?;
        let step = alg.ell() / k;
        let nobj = alg.objects().len();
        let rot: Vec<Vec<u32>> = (0..k)
            .map(|t| alg.objects().iter().map(|f| f.rotate(t * step).index() as u32).collect())
            .collect();
        let mut orbit_of = vec![usize::MAX; nobj];
        let mut orbits = Vec::new();
        let mut orbit_members = Vec::new();
        for f in 0..nobj {
            if orbit_of[f] != usize::MAX {
                continue;
            }
            // objects are enumerated lexicographically, so `f` is the smallest member
            let mut members: Vec<usize> = Vec::new();
            for r in &rot {
                let g = r[f] as usize;
                if !members.contains(&g) {
                    members.push(g);
                }
            }
            for &g in &members {
                orbit_of[g] = orbits.len();
            }
            orbits.push(ColorOrbit {
                representative: alg.objects()[f].clone(),
                orbit: members.iter().map(|&g| alg.objects()[g].clone()).collect(),
            });
            orbit_members.push(members);
        }
        let basis: Vec<QKey> = alg
            .basis()
            .iter()
            .filter(|key| orbit_members[orbit_of[key.source as usize]][0] == key.source as usize)
            .copied()
            .collect();
        Ok(QuotientGroupoid { alg, k, step, rot, orbits, orbit_members, orbit_of, basis })
    }

    pub fn alg(&self) -> &GroupoidAlgebra {
        &self.alg
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn orbits(&self) -> &[ColorOrbit] {
        &self.orbits
    }

    pub fn orbit_members(&self, o: usize) -> &[usize] {
        &self.orbit_members[o]
    }

    pub fn orbit_of(&self, f: usize) -> usize {
        self.orbit_of[f]
    }

    pub fn representative(&self, o: usize) -> usize {
        self.orbit_members[o][0]
    }

    /// Basis of `A_(ℓ,k,d)`; `|basis| = ℓ^d·d!/k`.
    pub fn basis(&self) -> &[QKey] {
        &self.basis
    }

    pub fn rotate_object(&self, f: usize, t: usize) -> usize {
        self.rot[t % self.k][f] as usize
    }

    /// `θ_k^t(σ)`: same permutation, endpoints rotated.
    pub fn rotate_key(&self, key: &MorphKey, t: usize) -> MorphKey {
        MorphKey {
            source: self.rotate_object(key.source as usize, t) as u32,
            target: self.rotate_object(key.target as usize, t) as u32,
            perm: key.perm,
        }
    }

    /// Smallest `t` with `θ_k^t(from) = to`.
    pub fn shift_between(&self, from: usize, to: usize) -> Option<usize> {
        (0..self.k).find(|&t| self.rot[t][from] as usize == to)
    }

    /// The lift of the orbit of `key` whose source is an orbit representative.
    pub fn normalize(&self, key: &MorphKey) -> QKey {
        let o = self.orbit_of[key.source as usize];
        let t = self
            .shift_between(key.source as usize, self.representative(o))
            .expect("same orbit");
        self.rotate_key(key, t)
    }

    pub fn source_orbit(&self, q: &QKey) -> usize {
        self.orbit_of[q.source as usize]
    }

    pub fn target_orbit(&self, q: &QKey) -> usize {
        self.orbit_of[q.target as usize]
    }

    /// `second ∘ first`, or `None` if the orbits do not match.
    pub fn compose(&self, second: &QKey, first: &QKey) -> Option<QKey> {
        let t = self.shift_between(second.source as usize, first.target as usize)?;
        let lifted = self.rotate_key(second, t);
        self.alg.compose_keys(&lifted, first)
    }

    pub fn inverse(&self, q: &QKey) -> QKey {
        self.normalize(&self.alg.inverse_key(q))
    }

    pub fn identity(&self, o: usize) -> QKey {
        self.alg.identity_key(self.representative(o))
    }

    /// `Ψ(q) = Σ_t θ_k^t(q)`.
    pub fn psi(&self, q: &QKey) -> AlgElem {
        let mut e = AlgElem::zero();
        let mut seen: Vec<MorphKey> = Vec::new();
        for t in 0..self.k {
            let key = self.rotate_key(q, t);
            if !seen.contains(&key) {
                seen.push(key);
                e.add_term(key, self.alg.field().one());
            }
        }
        e
    }

    pub fn psi_elem(&self, a: &BTreeMap<QKey, CycNum>) -> AlgElem {
        let mut out = AlgElem::zero();
        for (q, c) in a {
            out = out.add(&self.psi(q).scale(c));
        }
        out
    }

    /// `Ψ⁻¹(a)` read off the representative lifts; `None` unless `a` is
    /// `H_k`-invariant.
    pub fn psi_inverse(&self, a: &AlgElem) -> Option<BTreeMap<QKey, CycNum>> {
        let mut out = BTreeMap::new();
        for (key, c) in a.terms() {
            let rep = self.normalize(key);
            if a.coeff(&rep) != Some(c) {
                return None;
            }
            if rep == *key {
                out.insert(rep, c.clone());
            }
        }
        Some(out)
    }

    /// Order of the stabilizer `H_k^λ`. For `d = 0` the action is not free
    /// and the quotient is the one-object trivial groupoid; we return 1 there.
    pub fn stabilizer_order(&self, lambda: &Composition) -> usize {
        if lambda.size() == 0 {
            return 1;
        }
        (0..self.k)
            .filter(|&t| rotate_composition(lambda, t * self.step) == *lambda)
            .count()
    }

    /// The cross-section `Γ`: lexicographically smallest type of each orbit.
    pub fn gamma(&self) -> Vec<Composition> {
        let mut out: Vec<Composition> = crate::combinat::enum_compositions(self.alg.ell(), self.alg.d())
            .into_iter()
            .filter(|lam| self.cross_section_rep(lam) == *lam)
            .collect();
        out.sort();
        out
    }

    pub fn cross_section_rep(&self, lambda: &Composition) -> Composition {
        (0..self.k)
            .map(|t| rotate_composition(lambda, t * self.step))
            .min()
            .expect("k >= 1")
    }
}
