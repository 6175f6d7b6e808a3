use std::time::Instant;

use chevtori::permgroup::{
    centralizer_order, centralizer_order_backtrack, conjugator_backtrack, subgroup_order, weyl_order,
    Conjugacy,
};
use chevtori::rootsys::{CartanType, RootSystem};

#[test]
fn weyl_group_orders() {
    let sys = RootSystem::new(CartanType::E7);
    assert_eq!(weyl_order(&sys), 2_903_040);
    let t = Instant::now();
    let sys = RootSystem::new(CartanType::E8);
    assert_eq!(weyl_order(&sys), 696_729_600);
    assert!(t.elapsed().as_secs() < 60);
}

#[test]
fn centralizer_of_a_reflection() {
    // C_W(s) = <s> x W(D6) in E7
    let sys = RootSystem::new(CartanType::E7);
    let s = sys.reflection(1);
    assert_eq!(centralizer_order(&sys, &s, 1000), Some(2 * 23040));
    let w0 = sys.longest();
    assert_eq!(subgroup_order(&sys, &[w0, s]), 4);
}

#[test]
fn backtrack_agrees_with_class_enumeration() {
    let sys = RootSystem::new(CartanType::E7);
    let reps: [&[usize]; 6] = [&[1], &[3, 1], &[1, 3, 4], &[1, 4, 6, 53], &[2, 5, 3, 4, 6], &[39, 3, 5, 1, 4, 6]];
    let expect = [46080u128, 4320, 384, 9216, 32, 32];
    for (r, e) in reps.iter().zip(expect) {
        let w = sys.word(r);
        assert_eq!(centralizer_order(&sys, &w, 3_000_000), Some(e), "{r:?}");
        assert_eq!(centralizer_order_backtrack(&sys, &w, 50_000_000), Some(e), "{r:?}");
    }
}

#[test]
fn e8_backtrack_conjugator() {
    let sys = RootSystem::new(CartanType::E8);
    let a = sys.word(&[1, 4, 6, 3, 7]);
    let x = sys.word(&[5, 8, 2, 7, 3, 1, 4]);
    let b = a.conj(&x);
    match conjugator_backtrack(&sys, &a, &b, 10_000_000) {
        Conjugacy::Conjugate(y) => assert_eq!(a.conj(&y), b),
        other => panic!("{other:?}"),
    }
    let c = sys.word(&[1, 2, 3, 4, 5, 6, 7, 8]);
    assert_eq!(centralizer_order_backtrack(&sys, &c, 10_000_000), Some(30));
}

#[test]
fn e8_three_orthogonal_reflections() {
    // The -1 eigenspace is spanned by three orthogonal roots, so C_W(w) acts on
    // those six roots by signed permutations (at most 48) with kernel
    // W(D4 x A1) of order 384: |C_W(w)| <= 18432.
    let sys = RootSystem::new(CartanType::E8);
    let w = sys.word(&[2, 3, 5]);
    assert_eq!(centralizer_order(&sys, &w, 100_000), Some(18432));
    assert_eq!(centralizer_order_backtrack(&sys, &w, 50_000_000), Some(18432));
}
