use groupoid_reps_core::combinat::Composition;
use groupoid_reps_core::groupoid::*;

#[test]
fn counts_over_the_grid() {
    for ell in 1..=4 {
        for d in 0..=3 {
            let (s, r) = verify_groupoid(ell, d, 100_000).unwrap();
            assert!(r.passed(), "({ell},{d}) {:?}", r.failures().collect::<Vec<_>>());
            let brute: u128 = (1..=d as u128).product::<u128>() * (ell as u128).pow(d as u32);
            assert_eq!(s.morphisms, brute);
            assert_eq!(s.objects, ell.pow(d as u32));
            // every component of type λ has (d!/λ!)² · λ! morphisms
            let by_components: u128 = s.components.iter().map(|(_, n, f)| (*n as u128).pow(2) * f).sum();
            assert_eq!(by_components, brute);
        }
    }
}

#[test]
fn two_colors_two_positions() {
    let r = two_by_two_example().unwrap();
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
}

#[test]
fn canonical_morphism_example() {
    let f = ColorFn::new(2, vec![1, 1, 2]).unwrap();
    let g = ColorFn::new(2, vec![1, 2, 1]).unwrap();
    assert_eq!(canonical_morphism(&f, &g).unwrap().perm().one_based(), vec![1, 3, 2]);
    assert_eq!(canonical_object(&Composition::new(vec![0, 3])).values(), &[2, 2, 2]);
}

#[test]
fn cap_is_enforced() {
    assert!(matches!(
        verify_groupoid(4, 5, 100_000),
        Err(groupoid_reps_core::Error::ResourceCap { .. })
    ));
}
