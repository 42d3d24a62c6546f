//! Schur–Weyl duality for `A_(ℓ,d)` on `V^⊗d`, checked against counts that
//! come from the classical theory of each `GL_{k_i}` separately.

use groupoid_reps_core::schurweyl::*;

const CAP: usize = 1_000_000;

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn fact(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn hooks(mu: &[usize]) -> Vec<(usize, i64)> {
    // (hook length, content) for every box
    let mut out = Vec::new();
    for (r, &len) in mu.iter().enumerate() {
        for c in 0..len {
            let below = mu[r + 1..].iter().filter(|&&l| l > c).count();
            out.push((len - c + below, c as i64 - r as i64));
        }
    }
    out
}

fn f_mu(mu: &[usize]) -> u128 {
    let n: usize = mu.iter().sum();
    fact(n) / hooks(mu).iter().map(|&(h, _)| h as u128).product::<u128>()
}

/// Hook-content formula for the Weyl module of `GL_k`.
fn gl_dim(mu: &[usize], k: usize) -> u128 {
    let (num, den) = hooks(mu)
        .iter()
        .fold((1i128, 1i128), |(n, d), &(h, c)| (n * (k as i128 + c as i128), d * h as i128));
    (num / den) as u128
}

fn compositions(ell: usize, d: usize) -> Vec<Vec<usize>> {
    if ell == 1 {
        return vec![vec![d]];
    }
    (0..=d)
        .flat_map(|first| {
            compositions(ell - 1, d - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Every label `(μ_1,…,μ_ℓ)` with `|μ_i| = λ_i`, with a flag for whether each
/// `μ_i` fits in `k_i` rows.
fn labels(kvec: &[usize], d: usize) -> Vec<(Vec<usize>, Vec<Vec<usize>>, bool)> {
    let mut out = Vec::new();
    for lambda in compositions(kvec.len(), d) {
        let mut acc: Vec<Vec<Vec<usize>>> = vec![vec![]];
        for &li in &lambda {
            acc = acc
                .into_iter()
                .flat_map(|pre| {
                    partitions(li, li).into_iter().map(move |mu| {
                        let mut v = pre.clone();
                        v.push(mu);
                        v
                    })
                })
                .collect();
        }
        for mus in acc {
            let fits = mus.iter().zip(kvec).all(|(mu, &k)| mu.len() <= k);
            out.push((lambda.clone(), mus, fits));
        }
    }
    out
}

/// `dim L_p = d!/λ! · Π f^{p_i}`, which is also the multiplicity of the
/// corresponding Levi module in `V^⊗d`.
fn simple_dim(lambda: &[usize], mus: &[Vec<usize>]) -> u128 {
    let d: usize = lambda.iter().sum();
    fact(d) / lambda.iter().map(|&l| fact(l)).product::<u128>() * mus.iter().map(|m| f_mu(m)).product::<u128>()
}

struct Oracle {
    commutant: u128,
    gl: u128,
    kernel: u128,
    killed: usize,
}

fn oracle(kvec: &[usize], d: usize) -> Oracle {
    let mut o = Oracle { commutant: 0, gl: 0, kernel: 0, killed: 0 };
    for (lambda, mus, fits) in labels(kvec, d) {
        let m = simple_dim(&lambda, &mus);
        if fits {
            o.commutant += m * m;
            let g: u128 = mus.iter().zip(kvec).map(|(mu, &k)| gl_dim(mu, k)).product();
            o.gl += g * g;
        } else {
            o.kernel += m * m;
            o.killed += 1;
        }
    }
    o
}

#[test]
fn oracle_sanity() {
    // classical: Σ f^μ² over μ ⊢ d is d!
    for d in 1..=6 {
        assert_eq!(partitions(d, d).iter().map(|m| f_mu(m).pow(2)).sum::<u128>(), fact(d));
    }
    assert_eq!(gl_dim(&[2], 3), 6);
    assert_eq!(gl_dim(&[1, 1], 3), 3);
    assert_eq!(gl_dim(&[2, 1], 2), 2);
}

#[test]
fn dimensions_match_the_levi_decomposition() {
    let cases: &[(&[usize], usize)] = &[
        (&[1, 1], 1),
        (&[1, 1], 2),
        (&[1, 1], 3),
        (&[2, 1], 2),
        (&[2, 1], 3),
        (&[2, 2], 2),
        (&[1, 1, 1], 2),
        (&[2, 1, 1], 2),
        (&[3, 1], 3),
    ];
    for &(kvec, d) in cases {
        let (s, r) = verify_schur_weyl(kvec, d, TENSOR_CAP, 7).unwrap();
        assert!(r.passed(), "{kvec:?} d={d}: {:?}", r.failures().collect::<Vec<_>>());
        let o = oracle(kvec, d);
        assert_eq!(s.commutant_dim as u128, o.commutant, "{kvec:?} d={d}");
        assert_eq!(s.image_dim as u128, o.commutant, "{kvec:?} d={d}");
        assert_eq!(s.gl_algebra_dim as u128, o.gl, "{kvec:?} d={d}");
        assert_eq!(s.kernel_dim as u128, o.kernel, "{kvec:?} d={d}");
        assert_eq!(s.killed.len(), o.killed, "{kvec:?} d={d}");
    }
}

#[test]
fn two_lines_in_degree_two() {
    let (s, r) = verify_schur_weyl(&[1, 1], 2, TENSOR_CAP, 0).unwrap();
    assert!(r.passed());
    // weight spaces of dimensions 1, 2, 1 under the torus: 1 + 4 + 1
    assert_eq!(s.commutant_dim, 6);
    assert_eq!(s.tensor_dim, 4);
    let killed: Vec<String> = s.killed.iter().map(|p| format!("{p:?}")).collect();
    assert_eq!(killed.len(), 2, "{killed:?}");
}

#[test]
fn degree_one_is_the_block_algebra() {
    for kvec in [vec![1, 2], vec![2, 2], vec![3, 1, 2]] {
        let (s, r) = verify_schur_weyl(&kvec, 1, TENSOR_CAP, 1).unwrap();
        assert!(r.passed());
        assert_eq!(s.gl_algebra_dim, kvec.iter().map(|k| k * k).sum::<usize>());
        assert_eq!(s.kernel_dim, 0);
    }
}

#[test]
fn large_blocks_give_a_faithful_action() {
    let (s, r) = verify_schur_weyl(&[2, 2], 2, TENSOR_CAP, 3).unwrap();
    assert!(r.passed());
    assert_eq!(s.kernel_dim, 0);
    assert!(r.checks.iter().any(|c| c.name == "faithful" && c.status == groupoid_reps_core::report::Status::Pass));
}

#[test]
fn tensor_cap_is_enforced() {
    assert!(matches!(
        TensorSpace::new(vec![4, 4], 5, TENSOR_CAP),
        Err(groupoid_reps_core::Error::ResourceCap { .. })
    ));
    assert!(TensorSpace::new(vec![], 2, TENSOR_CAP).is_err());
    assert!(TensorSpace::new(vec![1, 0], 2, TENSOR_CAP).is_err());
}

#[test]
fn quotient_version_on_cyclic_shift() {
    for (ell, k, m, d, image, algebra) in [(2, 2, 1, 1, 1, 4), (2, 2, 2, 2, 4, 72), (4, 2, 1, 2, 14, 20)] {
        let (s, r) = theorem95_check(ell, k, m, d, CAP).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(s.image_dim, image);
        assert_eq!(s.commutant_dim, image);
        assert_eq!(s.algebra_dim, algebra);
    }
}

fn brute_rook_count(d: usize) -> usize {
    // maps {0..d} → {0..d} ∪ {none}, injective where defined
    let mut count = 0;
    let total = (d + 1).pow(d as u32);
    for code in 0..total {
        let mut c = code;
        let mut used = vec![false; d];
        let mut ok = true;
        for _ in 0..d {
            let y = c % (d + 1);
            c /= d + 1;
            if y < d {
                if used[y] {
                    ok = false;
                    break;
                }
                used[y] = true;
            }
        }
        count += ok as usize;
    }
    count
}

#[test]
fn rook_monoid_orders() {
    let expected = [1, 2, 7, 34, 209, 1546];
    for (d, &e) in expected.iter().enumerate() {
        assert_eq!(brute_rook_count(d), e);
        assert_eq!(is_order(d), e as u128);
        assert_eq!(RookElem::all(d).len(), e);
    }
}

#[test]
fn rook_epimorphism() {
    for d in 1..=4 {
        let (s, r) = rook_epimorphism_check(d).unwrap();
        assert!(r.passed(), "d={d}: {:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(s.generated_dim as u128, is_order(d));
    }
    assert!(rook_epimorphism_check(0).is_err());
    assert!(rook_epimorphism_check(6).is_err());
}

#[test]
fn rook_action_on_tensors() {
    // faithful once dim V exceeds d
    assert_eq!(rook_kernel_dim(2, 3, TENSOR_CAP).unwrap(), 0);
    assert_eq!(rook_kernel_dim(3, 4, TENSOR_CAP).unwrap(), 0);
    assert_eq!(rook_kernel_dim(2, 2, TENSOR_CAP).unwrap(), 1);
    assert_eq!(rook_kernel_dim(3, 3, TENSOR_CAP).unwrap(), 1);
}
