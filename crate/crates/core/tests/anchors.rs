use chevtori::group::Group;
use chevtori::rootsys::CartanType;
use chevtori::tits::{Isogeny, TitsGroup};

fn check(g: &TitsGroup, lhs: &str, rhs: &str) {
    let a = g.parse(lhs).unwrap();
    let b = g.parse(rhs).unwrap();
    assert_eq!(a, b, "{} {}: {lhs} = {} but expected {rhs}", g.kind(), g.isogeny, g.format(&a));
}

#[test]
fn e7_identities() {
    let sc = TitsGroup::new(CartanType::E7, Isogeny::Sc);
    check(&sc, "n_0^2", "h_2h_5h_7");
    check(&sc, "n_{63}^2", "h_3h_5h_7");
    check(&sc, "n_{50}^2", "h_1h_2h_4h_6");
    check(&sc, "(n_1n_2n_3)^6", "h_2");
    for i in 1..=7 {
        check(&sc, &format!("[n_0,n_{i}]"), "1");
    }
    let ad = TitsGroup::new(CartanType::E7, Isogeny::Ad);
    check(&ad, "[n_{63},n_2n_5]", "1");
    check(&ad, "[n_{63},n_{49}]", "1");
    check(&ad, "n_0^2", "1");
    let n0 = ad.n0().unwrap();
    assert_eq!(ad.element_order(&n0), 2);
    assert_eq!(sc.element_order(&sc.n0().unwrap()), 4);
}

#[test]
fn e8_identities() {
    let g = TitsGroup::new(CartanType::E8, Isogeny::Sc);
    check(&g, "n_{61}^2", "h_2h_3h_7");
    check(&g, "(n_7n_6n_8)^4", "h_6h_8");
    for i in 1..=8 {
        check(&g, &format!("[n_0,n_{i}]"), "1");
    }
    let bare = g.parse("n_1n_2n_5n_7n_{44}n_{71}n_{89}n_{120}").unwrap();
    assert!((1..=8).any(|i| !g.is_identity(&g.comm(&bare, &g.n(i)))));
}
