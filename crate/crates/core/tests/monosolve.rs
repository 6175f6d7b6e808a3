use chevtori::monosolve::{check_certificate, check_witness, solve, Row, Schema, System, Verdict};
use chevtori::rootsys::CartanType;
use chevtori::tits::{Isogeny, TitsGroup};
use chevtori::words::Word;
use proptest::prelude::*;

fn lemma(g: &TitsGroup, gens: [&str; 3], rels: &[&str]) -> System {
    let mut s = Schema::new(g);
    for (c, u) in ['a', 'b', 'c'].into_iter().zip(gens) {
        s.generator(c, g.parse(u).unwrap());
    }
    for r in rels {
        s.relation(&Word::parse(r).unwrap(), r).unwrap();
    }
    s.system()
}

#[test]
fn e7_adjoint_lemma_is_insoluble() {
    let g = TitsGroup::new(CartanType::E7, Isogeny::Ad);
    let sys = lemma(&g, ["n_2n_5", "n_{49}", "n_{63}"], &["c^2", "[c,a]", "[c,b]"]);
    match solve(&sys).unwrap() {
        Verdict::Unsat(c) => assert!(check_certificate(&sys, &c)),
        Verdict::Sat(_) => panic!("expected a contradiction"),
    }
}

#[test]
fn e7_adjoint_lemma_needs_all_three_relations() {
    let g = TitsGroup::new(CartanType::E7, Isogeny::Ad);
    for drop in 0..3 {
        let rels: Vec<&str> = ["c^2", "[c,a]", "[c,b]"]
            .into_iter()
            .enumerate()
            .filter(|(i, _)| *i != drop)
            .map(|(_, r)| r)
            .collect();
        let sys = lemma(&g, ["n_2n_5", "n_{49}", "n_{63}"], &rels);
        match solve(&sys).unwrap() {
            Verdict::Sat(w) => assert!(check_witness(&sys, &w)),
            Verdict::Unsat(_) => panic!("dropping relation {drop} should leave a solvable system"),
        }
    }
}

#[test]
fn e8_lemma_is_insoluble() {
    let g = TitsGroup::new(CartanType::E8, Isogeny::Sc);
    let sys = lemma(&g, ["n_2n_5", "n_{61}", "n_{97}"], &["b^2", "[a,b]", "[c,b]"]);
    match solve(&sys).unwrap() {
        Verdict::Unsat(c) => assert!(check_certificate(&sys, &c)),
        Verdict::Sat(_) => panic!("expected a contradiction"),
    }
}

#[test]
fn weyl_nontrivial_relation_is_rejected() {
    let g = TitsGroup::new(CartanType::E7, Isogeny::Ad);
    let mut s = Schema::new(&g);
    s.generator('a', g.n(1));
    assert!(s.relation(&Word::parse("a^3").unwrap(), "a^3").is_err());
}

fn arb_system() -> impl Strategy<Value = System> {
    (1usize..5, 1usize..7).prop_flat_map(|(n, m)| {
        prop::collection::vec((prop::collection::vec(-4i64..5, n), any::<bool>()), m).prop_map(
            move |rows| System {
                unknowns: (0..n).map(|i| format!("x{i}")).collect(),
                rows: rows
                    .into_iter()
                    .map(|(exps, negative)| Row {
                        exps,
                        negative,
                        label: String::new(),
                    })
                    .collect(),
            },
        )
    })
}

proptest! {
    #[test]
    fn verdicts_carry_valid_evidence(sys in arb_system()) {
        match solve(&sys).unwrap() {
            Verdict::Sat(w) => prop_assert!(check_witness(&sys, &w)),
            Verdict::Unsat(c) => prop_assert!(check_certificate(&sys, &c)),
        }
    }

    #[test]
    fn positive_systems_are_soluble(sys in arb_system()) {
        let mut sys = sys;
        for r in &mut sys.rows {
            r.negative = false;
        }
        prop_assert!(!solve(&sys).unwrap().is_unsat());
    }
}
