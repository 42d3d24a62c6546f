//! Tensor space `V^⊗d` for `V = V_1 ⊕ … ⊕ V_ℓ`, `dim V_i = k_i`: the groupoid
//! action by permuting factors, the block `GL_k` side, double centralizers,
//! the kernel of the action, the rook monoid and the `G(ℓ,k,d)` duality.

mod rook;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use rook::{is_order, rook_epimorphism_check, rook_kernel_dim, RookAlgebra, RookElem, RookSummary};

use crate::combinat::MultiPartition;
use crate::exactnum::{commutant_basis, Echelon, ExactMatrix, Matrix, Rational, Scalar, SparseVec};
use crate::galgebra::{GroupoidAlgebra, MorphKey};
use crate::gkd::quotient_groupoid;
use crate::groupoid::{ColorFn, GMorphism};
use crate::report::Report;
use crate::simples::{MatrixRep, Simples};
use crate::{Error, Result};

/// Default cap on `dim V^⊗d`.
pub const TENSOR_CAP: usize = 4096;

pub type RatMatrix = Matrix<Rational>;

/// `V^⊗d` with basis the sequences `(b_1,…,b_d)`, `b_i ∈ 0..n`, indexed in
/// base `n` with `b_1` most significant.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    kvec: Vec<usize>,
    n: usize,
    d: usize,
    dim: usize,
    /// 1-based block (color) of each basis vector of `V`.
    color: Vec<usize>,
}

impl TensorSpace {
    pub fn new(kvec: Vec<usize>, d: usize, cap: usize) -> Result<Self> {
        if kvec.is_empty() || kvec.contains(&0) {
            return Err(Error::Invalid("every k_i must be positive".into()));
        }
        let n: usize = kvec.iter().sum();
        let dim = (n as u128).pow(d as u32);
        if dim > cap as u128 {
            return Err(Error::cap("dim V^⊗d", dim, cap));
        }
        let color = kvec.iter().enumerate().flat_map(|(i, &k)| core::iter::repeat(i + 1).take(k)).collect();
        Ok(TensorSpace { kvec, n, d, dim: dim as usize, color })
    }

    pub fn kvec(&self) -> &[usize] {
        &self.kvec
    }

    pub fn ell(&self) -> usize {
        self.kvec.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sequence(&self, mut idx: usize) -> Vec<usize> {
        let mut b = vec![0; self.d];
        for slot in b.iter_mut().rev() {
            *slot = idx % self.n;
            idx /= self.n;
        }
        b
    }

    pub fn index(&self, b: &[usize]) -> usize {
        b.iter().fold(0, |acc, &x| acc * self.n + x)
    }

    /// Basis indices of `G(f) = V_{f(1)} ⊗ … ⊗ V_{f(d)}`, increasing.
    pub fn block(&self, f: &ColorFn) -> Vec<usize> {
        (0..self.dim)
            .filter(|&i| self.sequence(i).iter().enumerate().all(|(j, &b)| self.color[b] == f.color(j)))
            .collect()
    }

    /// `σ(w_1⊗…⊗w_d) = w_{σ⁻¹(1)}⊗…⊗w_{σ⁻¹(d)}` on `G(f)`, zero elsewhere.
    pub fn morphism_operator(&self, sigma: &GMorphism) -> RatMatrix {
        let mut m = Matrix::zeros(self.dim, self.dim, Rational::zero());
        for i in self.block(sigma.source()) {
            m.set(self.index(&self.permute(&self.sequence(i), sigma)), i, Rational::one());
        }
        m
    }

    fn permute(&self, b: &[usize], sigma: &GMorphism) -> Vec<usize> {
        let mut out = vec![0; self.d];
        for (i, &x) in b.iter().enumerate() {
            out[sigma.perm().apply(i)] = x;
        }
        out
    }

    /// The map `G(f) → G(g)` of `σ: f → g` in the block bases.
    pub fn groupoid_tensor_action(&self, sigma: &GMorphism) -> RatMatrix {
        let rows = self.block(sigma.target());
        let cols = self.block(sigma.source());
        let pos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(r, &i)| (i, r)).collect();
        let mut m = Matrix::zeros(rows.len(), cols.len(), Rational::zero());
        for (c, &i) in cols.iter().enumerate() {
            m.set(pos[&self.index(&self.permute(&self.sequence(i), sigma))], c, Rational::one());
        }
        m
    }

    /// `Δ(x) = Σ_i 1⊗…⊗x⊗…⊗1`.
    pub fn leibniz(&self, x: &RatMatrix) -> RatMatrix {
        let id = Matrix::identity(self.n, Rational::zero());
        let mut acc = Matrix::zeros(self.dim, self.dim, Rational::zero());
        for slot in 0..self.d {
            let term = (0..self.d).fold(Matrix::identity(1, Rational::zero()), |t, j| {
                t.kron(if j == slot { x } else { &id })
            });
            acc = acc.add(&term);
        }
        acc
    }

    pub fn tensor_power(&self, g: &RatMatrix) -> RatMatrix {
        (0..self.d).fold(Matrix::identity(1, Rational::zero()), |t, _| t.kron(g))
    }

    /// `Δ(E_ab)` for all matrix units inside the diagonal blocks.
    pub fn gl_generators(&self) -> Vec<RatMatrix> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.color[a] == self.color[b] {
                    let mut e = Matrix::zeros(self.n, self.n, Rational::zero());
                    e.set(a, b, Rational::one());
                    out.push(self.leibniz(&e));
                }
            }
        }
        out
    }

    /// Operators of all basis morphisms of `A_(ℓ,d)`, in basis order.
    pub fn a_image(&self, alg: &GroupoidAlgebra) -> Vec<RatMatrix> {
        alg.basis().iter().map(|k| self.morphism_operator(&alg.morphism(k))).collect()
    }

    /// A random element of `GL_k` with small integer entries.
    pub fn random_block_element(&self, rng: &mut impl Rng) -> RatMatrix {
        loop {
            let g = Matrix::from_fn(self.n, self.n, Rational::zero(), |a, b| {
                if self.color[a] == self.color[b] {
                    Rational::from_int(rng.gen_range(-3..=3))
                } else {
                    Rational::zero()
                }
            });
            if g.is_invertible() {
                return g;
            }
        }
    }
}

/// `V^⊗d` as an `A_(ℓ,d)`-module in the block bases.
pub struct TensorModule<'a> {
    space: &'a TensorSpace,
    blocks: Vec<usize>,
}

impl<'a> TensorModule<'a> {
    pub fn new(space: &'a TensorSpace, alg: &GroupoidAlgebra) -> Self {
        let blocks = alg.objects().iter().map(|f| space.block(f).len()).collect();
        TensorModule { space, blocks }
    }
}

impl MatrixRep for TensorModule<'_> {
    fn block_dim(&self, obj: usize) -> usize {
        self.blocks[obj]
    }

    fn act(&self, alg: &GroupoidAlgebra, k: &MorphKey) -> ExactMatrix {
        self.space.groupoid_tensor_action(&alg.morphism(k)).to_cyclotomic(alg.field())
    }
}

fn flatten(m: &RatMatrix) -> SparseVec<Rational> {
    m.entries().iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

fn span(mats: &[RatMatrix], n: usize) -> Echelon<Rational> {
    let mut e = Echelon::new(n * n, Rational::zero());
    for m in mats {
        e.insert(&flatten(m));
    }
    e
}

/// `span(a) = span(b)`, by ranks and containment.
pub fn same_span(a: &[RatMatrix], b: &[RatMatrix], n: usize) -> bool {
    let sa = span(a, n);
    let sb = span(b, n);
    sa.rank() == sb.rank() && b.iter().all(|m| sa.contains(&flatten(m)))
}

/// Basis of the unital algebra generated by `gens`, by span growth.
pub fn generated_algebra(gens: &[RatMatrix], n: usize) -> Vec<RatMatrix> {
    let one = Matrix::identity(n, Rational::zero());
    let mut ech = Echelon::new(n * n, Rational::zero());
    ech.insert(&flatten(&one));
    let mut basis = vec![one];
    let mut next = 0;
    while next < basis.len() {
        let b = basis[next].clone();
        next += 1;
        for g in gens {
            let p = g.mul(&b);
            if ech.insert(&flatten(&p)) {
                basis.push(p);
            }
        }
    }
    basis
}

fn commutes_all(a: &[RatMatrix], b: &[RatMatrix]) -> bool {
    a.iter().all(|x| b.iter().all(|y| x.commutes_with(y)))
}

/// Commuting checks: `GL_k` preserves every `G(f)`, the action is a
/// functor, and the two actions commute.
pub fn verify_commuting(ts: &TensorSpace, alg: &GroupoidAlgebra) -> Report {
    let mut report = Report::new();
    let gens = ts.gl_generators();
    let mut block_of = vec![usize::MAX; ts.dim()];
    for (fi, f) in alg.objects().iter().enumerate() {
        for i in ts.block(f) {
            block_of[i] = fi;
        }
    }
    let preserved = gens.iter().all(|g| {
        (0..ts.dim()).all(|r| (0..ts.dim()).all(|c| g.get(r, c).is_zero() || block_of[r] == block_of[c]))
    });
    report.push("blocks preserved", preserved, format!("{} generators", gens.len()));
    let ops = ts.a_image(alg);
    let mut functor = true;
    for (i, first) in alg.basis().iter().enumerate() {
        for p in 0..alg.perms().len() {
            let second = alg.key_from(first.target as usize, p as u32);
            let comp = alg.compose_keys(&second, first).expect("composable");
            functor &= ops[alg.basis_index(&comp)] == ops[alg.basis_index(&second)].mul(&ops[i]);
        }
    }
    report.push("functoriality", functor, "all composable pairs");
    report.push("commuting", commutes_all(&ops, &gens), format!("{} morphisms × {} generators", ops.len(), gens.len()));
    report
}

#[derive(Clone, Debug, Serialize)]
pub struct SchurWeylSummary {
    pub kvec: Vec<usize>,
    pub d: usize,
    pub tensor_dim: usize,
    pub gl_algebra_dim: usize,
    pub image_dim: usize,
    pub commutant_dim: usize,
    pub kernel_dim: usize,
    pub killed: Vec<MultiPartition>,
    /// Multiplicity of each `L_p` in `V^⊗d`.
    pub multiplicities: Vec<(MultiPartition, u64)>,
}

/// The image of `A_(ℓ,d)` is the commutant of the `GL_k` side and vice versa.
/// Also checks that sampled `g^⊗d`, `g ∈ GL_k`, lie in the generated algebra.
pub fn verify_double_centralizer(ts: &TensorSpace, alg: &GroupoidAlgebra, seed: u64) -> (Vec<usize>, Report) {
    let n = ts.dim();
    let zero = Rational::zero();
    let gens = ts.gl_generators();
    let gl_alg = generated_algebra(&gens, n);
    let image = ts.a_image(alg);
    let image_rank = span(&image, n).rank();
    let comm = commutant_basis(&gens, n, &zero);
    let mut report = Report::new();
    report.push(
        "image = commutant of GL_k",
        image_rank == comm.len() && same_span(&image, &comm, n),
        format!("dim image {image_rank}, dim commutant {}", comm.len()),
    );
    let comm_a = commutant_basis(&image, n, &zero);
    report.push(
        "commutant of image = GL_k algebra",
        comm_a.len() == gl_alg.len() && same_span(&comm_a, &gl_alg, n),
        format!("dim {} vs {}", comm_a.len(), gl_alg.len()),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gl_span = span(&gl_alg, n);
    let mut sampled = true;
    for _ in 0..2 {
        let g = ts.tensor_power(&ts.random_block_element(&mut rng));
        sampled &= gl_span.contains(&flatten(&g)) && image.iter().all(|x| x.commutes_with(&g));
    }
    report.push("g^⊗d in GL_k algebra", sampled, "2 sampled g");
    (vec![gl_alg.len(), image_rank, comm.len()], report)
}

/// Labels with some `p_i` having more than `k_i` rows.
pub fn predicted_killed(kvec: &[usize], labels: &[MultiPartition]) -> Vec<MultiPartition> {
    labels
        .iter()
        .filter(|p| p.components().iter().zip(kvec).any(|(q, &k)| q.num_rows() > k))
        .cloned()
        .collect()
}

/// The kernel of the `A_(ℓ,d)`-action is the ideal of the killed labels.
pub fn kernel_check(ts: &TensorSpace, simples: &Simples) -> Result<(usize, Vec<(MultiPartition, u64)>, Report)> {
    let alg = &simples.alg;
    let image_rank = span(&ts.a_image(alg), ts.dim()).rank();
    let kernel_dim = alg.dim() - image_rank;
    let labels: Vec<MultiPartition> = simples.modules.iter().map(|m| m.label().clone()).collect();
    let killed = predicted_killed(ts.kvec(), &labels);
    let chi = simples.table.character(alg, &TensorModule::new(ts, alg))?;
    let mults = simples.decompose(&chi).map_err(Error::Internal)?;
    let mut report = Report::new();
    let absent: Vec<MultiPartition> =
        labels.iter().zip(&mults).filter(|(_, &m)| m == 0).map(|(p, _)| p.clone()).collect();
    report.push("killed labels", absent == killed, format!("predicted {killed:?}, absent {absent:?}"));
    let predicted: usize = simples
        .modules
        .iter()
        .filter(|m| killed.contains(m.label()))
        .map(|m| m.total_dim(alg).pow(2))
        .sum();
    report.push("kernel dim", predicted == kernel_dim, format!("kernel {kernel_dim}, predicted {predicted}"));
    Ok((kernel_dim, labels.into_iter().zip(mults).collect(), report))
}

/// All Schur–Weyl checks for one `(k, d)`.
pub fn verify_schur_weyl(kvec: &[usize], d: usize, cap: usize, seed: u64) -> Result<(SchurWeylSummary, Report)> {
    let ts = TensorSpace::new(kvec.to_vec(), d, cap)?;
    let simples = Simples::new(ts.ell(), d, crate::DEFAULT_CAP)?;
    let alg = &simples.alg;
    let mut report = verify_commuting(&ts, alg);
    let (dims, r) = verify_double_centralizer(&ts, alg, seed);
    report.extend(r);
    let (kernel_dim, multiplicities, r) = kernel_check(&ts, &simples)?;
    report.extend(r);
    if kvec.iter().all(|&k| k >= d) {
        report.push("faithful", kernel_dim == 0, format!("kernel {kernel_dim} with all k_i ≥ d"));
    }
    let labels: Vec<MultiPartition> = multiplicities.iter().map(|(p, _)| p.clone()).collect();
    let summary = SchurWeylSummary {
        kvec: kvec.to_vec(),
        d,
        tensor_dim: ts.dim(),
        gl_algebra_dim: dims[0],
        image_dim: dims[1],
        commutant_dim: dims[2],
        kernel_dim,
        killed: predicted_killed(kvec, &labels),
        multiplicities,
    };
    Ok((summary, report))
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem95Summary {
    pub ell: usize,
    pub k: usize,
    pub m: usize,
    pub d: usize,
    pub tensor_dim: usize,
    pub image_dim: usize,
    pub algebra_dim: usize,
    pub commutant_dim: usize,
}

/// `V = ℂ^(ℓm)` with `k = (m,…,m)` and `Z: v_i ↦ v_{i+(ℓ/k)m}`: the image of
/// `A_(ℓ,k,d)` is the commutant of `GL_k` together with `Z^⊗d`, and conversely.
pub fn theorem95_check(ell: usize, k: usize, m: usize, d: usize, cap: usize) -> Result<(Theorem95Summary, Report)> {
    let qg = quotient_groupoid(ell, k, d, crate::DEFAULT_CAP)?;
    if m == 0 {
        return Err(Error::Invalid("m must be positive".into()));
    }
    let ts = TensorSpace::new(vec![m; ell], d, cap)?;
    let alg = qg.alg();
    let n = ts.n();
    let dim = ts.dim();
    let shift = ell / k * m;
    let z = Matrix::from_fn(n, n, Rational::zero(), |r, c| {
        if r == (c + shift) % n {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let zd = ts.tensor_power(&z);
    let ops = ts.a_image(alg);
    let image: Vec<RatMatrix> = qg
        .basis()
        .iter()
        .map(|q| {
            qg.psi(q).terms().keys().fold(Matrix::zeros(dim, dim, Rational::zero()), |acc, key| {
                acc.add(&ops[alg.basis_index(key)])
            })
        })
        .collect();
    let mut gens = ts.gl_generators();
    let mut report = Report::new();
    report.push(
        "commutes with GL_k",
        commutes_all(&image, &gens),
        format!("{} images × {} generators", image.len(), gens.len()),
    );
    report.push("commutes with Z^⊗d", image.iter().all(|x| x.commutes_with(&zd)), "all images");
    gens.push(zd);
    let comm = commutant_basis(&gens, dim, &Rational::zero());
    let image_dim = span(&image, dim).rank();
    report.push(
        "image = commutant",
        image_dim == comm.len() && same_span(&image, &comm, dim),
        format!("dim image {image_dim}, dim commutant {}", comm.len()),
    );
    let algebra = generated_algebra(&gens, dim);
    let comm_image = commutant_basis(&image, dim, &Rational::zero());
    report.push(
        "commutant of image = generated algebra",
        comm_image.len() == algebra.len() && same_span(&comm_image, &algebra, dim),
        format!("dim {} vs {}", comm_image.len(), algebra.len()),
    );
    if m >= d {
        report.push(
            "faithful",
            image_dim == qg.basis().len(),
            format!("dim image {image_dim}, dim A_(l,k,d) {}", qg.basis().len()),
        );
    }
    let summary = Theorem95Summary {
        ell,
        k,
        m,
        d,
        tensor_dim: dim,
        image_dim,
        algebra_dim: algebra.len(),
        commutant_dim: comm.len(),
    };
    Ok((summary, report))
}

