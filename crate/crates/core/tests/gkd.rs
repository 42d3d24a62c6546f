//! The quotient groupoid for `G(ℓ,k,d)`, its simple modules and the
//! comparison with the group side.

use groupoid_reps_core::combinat::{Composition, MultiPartition, Partition};
use groupoid_reps_core::exactnum::Scalar;
use groupoid_reps_core::gkd::*;
use groupoid_reps_core::groupoid::{ColorFn, GMorphism};
use groupoid_reps_core::perm::Perm;
use groupoid_reps_core::wreath::{enum_group, gkd_member};
use groupoid_reps_core::Error;

const CAP: usize = 1_000_000;

fn mp(parts: &[&[usize]]) -> MultiPartition {
    MultiPartition::new(parts.iter().map(|p| Partition::new(p.to_vec()).unwrap()).collect())
}

fn cf(ell: usize, v: &[usize]) -> ColorFn {
    ColorFn::new(ell, v.to_vec()).unwrap()
}

#[test]
fn theta_examples() {
    assert_eq!(cf(2, &[1, 2]).theta_k(2, 2).unwrap(), cf(2, &[2, 1]));
    assert_eq!(Composition::new(vec![2, 0]).theta_k(2, 2).unwrap(), Composition::new(vec![0, 2]));
    // θ_2 on ℓ = 4 shifts by two colors
    assert_eq!(cf(4, &[1, 4]).theta_k(4, 2).unwrap(), cf(4, &[3, 2]));
    let sigma = GMorphism::from_source(cf(3, &[1, 2, 2]), Perm::from_one_based(&[2, 3, 1]).unwrap());
    let moved = sigma.theta_k(3, 3).unwrap();
    assert_eq!(moved.perm(), sigma.perm());
    assert_eq!(moved.source(), &cf(3, &[2, 3, 3]));
    assert!(matches!(cf(4, &[1]).theta_k(4, 3), Err(Error::NotDivisor { .. })));
}

#[test]
fn theta_has_order_k() {
    for (ell, k) in [(2, 2), (4, 2), (4, 4), (6, 3)] {
        for f in [cf(ell, &[1, 2, ell]), cf(ell, &[ell, ell, 1])] {
            let mut g = f.clone();
            for t in 1..=k {
                g = g.theta_k(ell, k).unwrap();
                assert_eq!(g == f, t == k);
            }
        }
    }
}

#[test]
fn two_orbits_over_two_colors() {
    let r = two_orbit_example(CAP).unwrap();
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    let qg = quotient_groupoid(2, 2, 2, CAP).unwrap();
    assert_eq!(qg.orbits().len(), 2);
    assert_eq!(qg.basis().len(), 4);
    for o in 0..2 {
        let e = endo_structure(&qg, o).unwrap();
        assert_eq!(e.endo_order, 2);
        let lambda = e.representative.type_of();
        if lambda.parts() == [1, 1] {
            assert_eq!((e.stabilizer_order, e.lambda_factorial), (2, 1));
        } else {
            assert_eq!((e.stabilizer_order, e.lambda_factorial), (1, 2));
        }
        assert!(e.holds());
    }
}

#[test]
fn one_point_quotient() {
    let qg = quotient_groupoid(2, 2, 1, CAP).unwrap();
    assert_eq!(qg.orbits().len(), 1);
    assert_eq!(qg.orbits()[0].orbit.len(), 2);
    let e = endo_structure(&qg, 0).unwrap();
    assert_eq!((e.stabilizer_order, e.endo_order), (1, 1));
}

/// `|End(o)|` counted directly as lifts `rep → g`, `g` in the orbit, against
/// `|H_k^λ|·λ!` with the stabilizer found by brute force on compositions.
#[test]
fn endomorphism_cardinalities() {
    for (ell, k, d) in [(2, 2, 3), (3, 3, 2), (4, 2, 2), (4, 4, 2), (3, 3, 3)] {
        let qg = quotient_groupoid(ell, k, d, CAP).unwrap();
        for o in 0..qg.orbits().len() {
            let rep = &qg.orbits()[o].representative;
            let lambda = rep.type_of();
            let stab = (0..k)
                .filter(|&t| {
                    let mut parts = vec![0; ell];
                    for (i, &p) in lambda.parts().iter().enumerate() {
                        parts[(i + t * ell / k) % ell] = p;
                    }
                    parts == lambda.parts()
                })
                .count();
            let lifts: usize = qg.orbits()[o]
                .orbit
                .iter()
                .map(|g| groupoid_reps_core::groupoid::hom(rep, g).len())
                .sum();
            assert_eq!(lifts as u128, stab as u128 * lambda.factorial());
            assert_eq!(endo_structure(&qg, o).unwrap().endo_order, lifts);
        }
    }
}

#[test]
fn psi_examples() {
    let qg = quotient_groupoid(2, 2, 1, CAP).unwrap();
    let alg = qg.alg();
    let q = qg.identity(0);
    let psi = qg.psi(&q);
    assert_eq!(psi.len(), 2);
    assert_eq!(psi, alg.unit());
    let qg = quotient_groupoid(2, 2, 2, CAP).unwrap();
    let r = psi_check(&qg);
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
}

#[test]
fn group_span_equals_quotient_image() {
    for (ell, k, d, dim) in [(2, 1, 2, 8), (2, 2, 2, 4), (2, 2, 3, 24), (3, 3, 2, 6)] {
        let qg = quotient_groupoid(ell, k, d, CAP).unwrap();
        assert_eq!(qg.basis().len(), dim);
        let r = theorem55_check(&qg, CAP).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        // |G(ℓ,k,d)| by the determinant criterion
        let members = enum_group(ell, d, CAP).unwrap().iter().filter(|x| gkd_member(x, k).unwrap()).count();
        assert_eq!(members, dim);
    }
}

#[test]
fn lpm_for_the_swapped_colors() {
    let qg = quotient_groupoid(2, 2, 2, CAP).unwrap();
    let alg = qg.alg();
    let p = mp(&[&[1], &[1]]);
    let f = alg.objects().iter().position(|f| f.values() == [1, 2]).unwrap();
    let o = qg.orbit_of(f);
    // the endomorphism of the orbit {(1,2),(2,1)} that swaps the colors
    let swap = *qg
        .basis()
        .iter()
        .find(|q| qg.source_orbit(q) == o && qg.target_orbit(q) == o && q.source != q.target)
        .unwrap();
    for m in 1..=2 {
        let label = QSimpleLabel { lambda: p.shape(), p: p.clone(), m };
        let module = build_lpm(&qg, &label).unwrap();
        assert_eq!(module.total_dim(&qg), 1);
        let sign = if m % 2 == 0 { 1 } else { -1 };
        assert_eq!(module.act(&qg, &swap).get(0, 0), &alg.field().from_int(sign));
        assert!(module.act(&qg, &qg.identity(o)).get(0, 0).is_one());
        assert!(module.functoriality_counterexample(&qg).is_none());
    }
}

#[test]
fn lpm_rejects_labels_outside_the_cross_section() {
    let qg = quotient_groupoid(2, 2, 2, CAP).unwrap();
    let p = mp(&[&[2], &[]]);
    let label = QSimpleLabel { lambda: p.shape(), p, m: 1 };
    assert!(matches!(build_lpm(&qg, &label), Err(Error::Invalid(_))));
    let p = mp(&[&[1], &[1]]);
    let label = QSimpleLabel { lambda: p.shape(), p, m: 3 };
    assert!(matches!(build_lpm(&qg, &label), Err(Error::OutOfRange { .. })));
}

/// For `(2,2,4)` and `p = ((2),(1,1))` the stabilizer generator conjugates
/// `ρ_p` into a different representation; the scalar twist is not a functor.
#[test]
fn lpm_guard_for_non_invariant_labels() {
    let qg = quotient_groupoid(2, 2, 4, CAP).unwrap();
    let p = mp(&[&[2], &[1, 1]]);
    let label = QSimpleLabel { lambda: p.shape(), p: p.clone(), m: 1 };
    assert!(matches!(build_lpm(&qg, &label), Err(Error::Unsupported(_))));
    assert!(matches!(QpModule::new(&qg, &p), Err(Error::Unsupported(_))));
    let p = mp(&[&[2], &[2]]);
    let label = QSimpleLabel { lambda: p.shape(), p, m: 2 };
    let module = build_lpm(&qg, &label).unwrap();
    assert!(module.functoriality_counterexample(&qg).is_none());
}

/// Number of conjugacy classes of `G(ℓ,k,d)`, by brute force.
fn class_count(ell: usize, k: usize, d: usize) -> usize {
    let group: Vec<_> = enum_group(ell, d, CAP).unwrap().into_iter().filter(|x| gkd_member(x, k).unwrap()).collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut classes = 0;
    for x in &group {
        if seen.contains(x) {
            continue;
        }
        classes += 1;
        for g in &group {
            seen.insert(x.conjugate_by(g));
        }
    }
    classes
}

#[test]
fn quotient_simples_examples() {
    for (ell, k, d) in [(2, 2, 2), (2, 2, 3), (3, 3, 2), (4, 2, 2)] {
        let count = class_count(ell, k, d);
        let qg = quotient_groupoid(ell, k, d, CAP).unwrap();
        let table = GkdTable::new(qg.alg(), k, CAP).unwrap();
        let simples = QSimples::new(&qg, &table).unwrap();
        let (summary, r) = theorem77_check(&qg, &table, &simples);
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(summary.len(), count);
        let sum: usize = summary.iter().map(|s| s.dim * s.dim).sum();
        assert_eq!(sum, qg.basis().len());
        if (ell, k, d) == (2, 2, 2) {
            assert!(summary.iter().all(|s| s.dim == 1));
        }
    }
}

#[test]
fn restriction_of_the_split_label() {
    let qg = quotient_groupoid(2, 2, 2, CAP).unwrap();
    let table = GkdTable::new(qg.alg(), 2, CAP).unwrap();
    let simples = QSimples::new(&qg, &table).unwrap();
    let p = mp(&[&[1], &[1]]);
    let r = cor78_check(&qg, &table, &simples, &p).unwrap();
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    // the restriction is the sum of the two characters
    let lp = groupoid_reps_core::simples::build_lp(qg.alg(), &p).unwrap();
    let res = table.restricted(qg.alg(), &lp).unwrap();
    let a = simples.index_of(&p, 1).unwrap();
    let b = simples.index_of(&p, 2).unwrap();
    assert_eq!(res, simples.characters[a].add(&simples.characters[b]));
}

#[test]
fn qp_eigenspaces_follow_m_mod_s() {
    let qg = quotient_groupoid(3, 3, 3, CAP).unwrap();
    let table = GkdTable::new(qg.alg(), 3, CAP).unwrap();
    let simples = QSimples::new(&qg, &table).unwrap();
    let p = mp(&[&[1], &[1], &[1]]);
    let (m, r) = qp_cross_check(&qg, &table, &simples, &p).unwrap();
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    assert_eq!(m.m_of_j, vec![3, 1, 2]);
}

#[test]
fn full_verification_small() {
    for (ell, k, d) in [(2, 2, 2), (2, 2, 3), (4, 2, 2), (4, 4, 2), (3, 1, 2)] {
        let (summary, r) = verify_gkd(ell, k, d, CAP).unwrap();
        assert!(r.passed(), "({ell},{k},{d}) {:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(summary.group_order as u128, gkd_order(ell, k, d));
    }
}

#[test]
fn d_zero_is_the_trivial_case() {
    let (summary, r) = verify_gkd(2, 2, 0, CAP).unwrap();
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    assert_eq!(summary.orbits.len(), 1);
    assert_eq!(summary.simples.len(), 1);
}
