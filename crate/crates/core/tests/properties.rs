//! Algebraic laws on random inputs.

use std::sync::OnceLock;

use groupoid_reps_core::exactnum::{CycField, CycNum, Matrix, Rational, Scalar};
use groupoid_reps_core::galgebra::{AlgElem, GroupoidAlgebra, MorphKey};
use groupoid_reps_core::gkd::{quotient_groupoid, QuotientGroupoid};
use groupoid_reps_core::perm::Perm;
use groupoid_reps_core::schurweyl::RookElem;
use groupoid_reps_core::wreath::{gkd_member, WreathElem};
use proptest::prelude::*;

const CAP: usize = 1_000_000;

fn cyc(order: u32, coeffs: Vec<i64>) -> CycNum {
    let f = CycField::new(order).unwrap();
    let mut c: Vec<_> = coeffs.into_iter().take(f.degree()).map(Rational::from_int).collect();
    c.resize(f.degree(), Rational::zero());
    f.from_coeffs(c).unwrap()
}

fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Perm::new(v).unwrap())
}

fn arb_wreath(ell: usize, d: usize) -> impl Strategy<Value = WreathElem> {
    (arb_perm(d), prop::collection::vec(0..ell, d)).prop_map(move |(p, c)| WreathElem::new(ell, p, c).unwrap())
}

fn alg_43() -> &'static GroupoidAlgebra {
    static A: OnceLock<GroupoidAlgebra> = OnceLock::new();
    A.get_or_init(|| GroupoidAlgebra::new(3, 3, CAP).unwrap())
}

fn quotient_423() -> &'static QuotientGroupoid {
    static Q: OnceLock<QuotientGroupoid> = OnceLock::new();
    Q.get_or_init(|| quotient_groupoid(4, 2, 3, CAP).unwrap())
}

fn arb_elem(alg: &'static GroupoidAlgebra) -> impl Strategy<Value = AlgElem> {
    prop::collection::vec((0..alg.dim(), -3i64..=3), 0..6).prop_map(move |terms| {
        let mut a = AlgElem::zero();
        for (i, c) in terms {
            a.add_term(alg.basis()[i], alg.field().from_int(c));
        }
        a
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms(
        order in prop::sample::select(vec![1u32, 2, 3, 4, 6, 12]),
        a in prop::collection::vec(-5i64..=5, 4),
        b in prop::collection::vec(-5i64..=5, 4),
        c in prop::collection::vec(-5i64..=5, 4),
    ) {
        let (a, b, c) = (cyc(order, a), cyc(order, b), cyc(order, c));
        prop_assert_eq!(a.times(&b), b.times(&a));
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert!(a.minus(&a).is_zero());
        match a.inverse() {
            Some(inv) => prop_assert!(a.times(&inv).is_one()),
            None => prop_assert!(a.is_zero()),
        }
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.times(&b).conj(), a.conj().times(&b.conj()));
    }

    #[test]
    fn roots_of_unity(order in 1u32..=12, i in -20i64..20, j in -20i64..20) {
        let f = CycField::new(order).unwrap();
        prop_assert_eq!(f.root(i).times(&f.root(j)), f.root(i + j));
        prop_assert!(f.root(order as i64).is_one());
        prop_assert_eq!(f.root(i).conj(), f.root(-i));
    }

    #[test]
    fn perm_laws(a in arb_perm(6), b in arb_perm(6), c in arb_perm(6)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.compose(&b).sign(), a.sign() * b.sign());
        prop_assert_eq!(a.sign(), if a.inversions() % 2 == 0 { 1 } else { -1 });
    }

    #[test]
    fn wreath_group_laws(x in arb_wreath(4, 4), y in arb_wreath(4, 4), z in arb_wreath(4, 4)) {
        let f = CycField::new(4).unwrap();
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert!(x.mul(&x.inverse()).is_identity());
        prop_assert_eq!(x.mul(&y).det(&f), x.det(&f).times(&y.det(&f)));
        prop_assert_eq!(
            x.mul(&y).monomial_matrix(&f),
            x.monomial_matrix(&f).mul(&y.monomial_matrix(&f))
        );
    }

    #[test]
    fn gkd_is_a_subgroup(x in arb_wreath(6, 3), y in arb_wreath(6, 3), k in prop::sample::select(vec![1usize, 2, 3, 6])) {
        if gkd_member(&x, k).unwrap() && gkd_member(&y, k).unwrap() {
            prop_assert!(gkd_member(&x.mul(&y), k).unwrap());
            prop_assert!(gkd_member(&x.inverse(), k).unwrap());
        }
        // G(ℓ,1,d) is everything
        prop_assert!(gkd_member(&x, 1).unwrap());
    }

    #[test]
    fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 1..6)) {
        let m = Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect(),
            Rational::zero(),
        ).unwrap();
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn groupoid_laws(i in 0usize..1000, j in 0usize..1000) {
        let alg = alg_43();
        let a = alg.basis()[i % alg.dim()];
        let b = alg.basis()[j % alg.dim()];
        let inv = alg.inverse_key(&a);
        prop_assert_eq!(alg.compose_keys(&inv, &a), Some(alg.identity_key(a.source as usize)));
        prop_assert_eq!(alg.compose_keys(&a, &inv), Some(alg.identity_key(a.target as usize)));
        match alg.compose_keys(&b, &a) {
            Some(c) => {
                prop_assert_eq!(a.target, b.source);
                let m = groupoid_reps_core::groupoid::compose(&alg.morphism(&b), &alg.morphism(&a)).unwrap();
                prop_assert_eq!(alg.key_of(&m), c);
            }
            None => prop_assert_ne!(a.target, b.source),
        }
    }

    #[test]
    fn algebra_is_associative(a in arb_elem(alg_43()), b in arb_elem(alg_43()), c in arb_elem(alg_43())) {
        let alg = alg_43();
        prop_assert_eq!(alg.mul(&alg.mul(&a, &b), &c), alg.mul(&a, &alg.mul(&b, &c)));
        prop_assert_eq!(alg.mul(&alg.unit(), &a), a.clone());
        prop_assert_eq!(alg.mul(&a, &alg.unit()), a);
    }

    #[test]
    fn phi_is_multiplicative(x in arb_wreath(3, 3), y in arb_wreath(3, 3)) {
        let alg = alg_43();
        let lhs = alg.phi_closed_form(&x.mul(&y));
        let rhs = alg.mul(&alg.phi_closed_form(&x), &alg.phi_closed_form(&y));
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(alg.phi(&x), alg.phi_closed_form(&x));
    }

    #[test]
    fn theta_and_normalize(i in 0usize..10_000) {
        let qg = quotient_423();
        let alg = qg.alg();
        let key: MorphKey = alg.basis()[i % alg.dim()];
        // θ_k has order k on morphisms
        let r = (0..qg.k()).fold(key, |r, _| qg.rotate_key(&r, 1));
        prop_assert_eq!(r, key);
        let q = qg.normalize(&key);
        prop_assert_eq!(qg.normalize(&q), q);
        prop_assert_eq!(qg.normalize(&qg.rotate_key(&key, 1)), q);
        prop_assert_eq!(qg.compose(&qg.inverse(&q), &q), Some(qg.identity(qg.source_orbit(&q))));
    }

    #[test]
    fn psi_is_multiplicative(i in 0usize..10_000, j in 0usize..10_000) {
        let qg = quotient_423();
        let (p, q) = (qg.basis()[i % qg.basis().len()], qg.basis()[j % qg.basis().len()]);
        let prod = qg.alg().mul(&qg.psi(&q), &qg.psi(&p));
        match qg.compose(&q, &p) {
            Some(c) => prop_assert_eq!(qg.psi(&c), prod),
            None => prop_assert!(prod.is_zero()),
        }
    }

    #[test]
    fn rook_composition_is_associative(
        a in prop::collection::vec(prop::option::of(0usize..4), 4),
        b in prop::collection::vec(prop::option::of(0usize..4), 4),
        c in prop::collection::vec(prop::option::of(0usize..4), 4),
    ) {
        if let (Some(a), Some(b), Some(c)) = (RookElem::new(a), RookElem::new(b), RookElem::new(c)) {
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
            prop_assert_eq!(RookElem::identity(4).compose(&a), a.clone());
            for x in 0..4 {
                prop_assert_eq!(a.compose(&b).apply(x), b.apply(x).and_then(|y| a.apply(y)));
            }
        }
    }
}
