use std::collections::BTreeMap;

use chevtori::data::Dataset;
use chevtori::group::Group;
use chevtori::monosolve::{check_certificate, solve, Row, System, Verdict};
use chevtori::permgroup::{perm_identity, perm_mul, Perm};
use chevtori::rootsys::CartanType;
use chevtori::tits::{Isogeny, TitsElement, TitsGroup};
use chevtori::torus::FieldModel;
use chevtori::verify::common::Options;
use chevtori::verify::mutate::{exponents, shift_exponent};
use chevtori::verify::prose::monomial_exponent;
use chevtori::verify::signed::SignedRep;
use chevtori::verify::structure::structure_order;
use chevtori::verify::{complements, nonsplit, Report, Status};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tits_word(g: &TitsGroup, word: &[(usize, bool)]) -> TitsElement {
    word.iter().fold(g.identity(), |acc, &(k, h)| {
        let x = if h { g.mul(&g.h_simple(&[k]), &g.n(k)) } else { g.n(k) };
        g.mul(&acc, &x)
    })
}

fn perm_order(p: &Perm) -> u64 {
    let id = perm_identity(p.len());
    let mut q = p.clone();
    let mut k = 1;
    while q != id {
        q = perm_mul(&q, p);
        k += 1;
    }
    k
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Each atom contributes its order whatever the bracketing.
    #[test]
    fn structure_order_is_multiplicative(ns in prop::collection::vec(2u128..13, 1..5), nest in any::<bool>()) {
        let atoms: Vec<String> = ns.iter().map(|n| format!("\\mathbb{{Z}}_{{{n}}}")).collect();
        let text = if nest {
            atoms.iter().skip(1).fold(atoms[0].clone(), |acc, a| format!("({acc}):{a}"))
        } else {
            atoms.join("\\times ")
        };
        let s = structure_order(&text).unwrap();
        prop_assert_eq!(s.order, ns.iter().product::<u128>());
        prop_assert!(s.balanced);
    }

    /// Exponents add, and a leading minus adds the exponent of `-1`.
    #[test]
    fn monomial_exponents_add(a in 0i128..24, d in 0i128..24, ka in 1u32..7, kd in 0u32..7, neg in any::<bool>()) {
        let f = FieldModel::new(5, 2);
        let vals: BTreeMap<char, i128> = [('a', a), ('d', d)].into_iter().collect();
        let mut s = String::from(if neg { "-" } else { "" });
        s.push('a');
        if ka > 1 {
            s.push_str(&format!("^{ka}"));
        }
        if kd > 0 {
            s.push('d');
            if kd > 1 {
                s.push_str(&format!("^{kd}"));
            }
        }
        let want = (i128::from(ka) * a + i128::from(kd) * d + if neg { f.minus_one() } else { 0 }).rem_euclid(f.modulus());
        prop_assert_eq!(monomial_exponent(&s, &vals, &f).unwrap(), want);
    }

    /// The signed action is a homomorphism, and faithful on the adjoint
    /// group: element orders agree with the normal-form engine.
    #[test]
    fn signed_action_matches_engine(w1 in prop::collection::vec((1usize..8, any::<bool>()), 0..8),
                                    w2 in prop::collection::vec((1usize..8, any::<bool>()), 0..8)) {
        let g = TitsGroup::new(CartanType::E7, Isogeny::Ad);
        let rep = SignedRep::new(&g);
        let (a, b) = (tits_word(&g, &w1), tits_word(&g, &w2));
        let (pa, pb) = (rep.perm(&g, &a), rep.perm(&g, &b));
        prop_assert_eq!(rep.perm(&g, &g.mul(&a, &b)), perm_mul(&pb, &pa));
        prop_assert_eq!(perm_order(&pa), g.element_order(&a));
    }

    /// Certificates survive a JSON round trip and are rejected once a sign
    /// they rely on is flipped.
    #[test]
    fn certificates_round_trip(rows in prop::collection::vec((prop::collection::vec(-3i64..4, 3), any::<bool>()), 1..6)) {
        let sys = System {
            unknowns: vec!["x".into(), "y".into(), "z".into()],
            rows: rows.into_iter().map(|(exps, negative)| Row { exps, negative, label: String::new() }).collect(),
        };
        if let Verdict::Unsat(cert) = solve(&sys).unwrap() {
            let sys2: System = serde_json::from_str(&serde_json::to_string(&sys).unwrap()).unwrap();
            let cert2 = serde_json::from_str(&serde_json::to_string(&cert).unwrap()).unwrap();
            prop_assert!(check_certificate(&sys2, &cert2));
            let mut flipped = sys2.clone();
            let used = cert2.coefficients.iter().position(|c| c % 2 != 0);
            if let Some(i) = used {
                flipped.rows[i].negative = !flipped.rows[i].negative;
                prop_assert!(!check_certificate(&flipped, &cert2));
            }
        }
    }

    /// A shifted exponent always changes exactly one number.
    #[test]
    fn shifted_exponent_changes_text(seed in any::<u64>(), ks in prop::collection::vec(1u32..15, 1..5)) {
        let text: String = ks.iter().enumerate().map(|(i, k)| format!("{}^{{{k}}}", (b'a' + i as u8) as char)).collect::<Vec<_>>().join("=");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let out = shift_exponent(&text, &mut rng).unwrap();
        prop_assert_ne!(&out, &text);
        prop_assert_eq!(exponents(&out).len(), exponents(&text).len());
    }
}

#[test]
fn recheck_catches_a_tampered_certificate() {
    let data = Dataset::embedded();
    let opts = Options {
        only: Some(2),
        ..Options::default()
    };
    let r = nonsplit::nonsplit(&data, CartanType::E7, &opts);
    assert!(nonsplit::recheck(&r).ok());
    let mut bad: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    let check = bad.checks.iter_mut().find(|c| c.id.ends_with("/system")).unwrap();
    let ev = check.evidence.as_mut().unwrap();
    for row in ev["system"]["rows"].as_array_mut().unwrap() {
        row["negative"] = serde_json::Value::Bool(false);
    }
    let re = nonsplit::recheck(&bad);
    assert!(!re.ok(), "{}", re.to_markdown());
}

#[test]
fn loading_from_a_directory_matches_the_embedded_copy() {
    let dir = std::env::temp_dir().join(format!("chevtori-data-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (name, text) in Dataset::embedded_sources() {
        std::fs::write(dir.join(name), text).unwrap();
    }
    let d = Dataset::from_dir(&dir).unwrap();
    assert_eq!(d.e7.tori.len(), Dataset::embedded().e7.tori.len());
    // A corrupted relation in a file on disk is reported by its row.
    let e8 = std::fs::read_to_string(dir.join("e8.toml")).unwrap();
    std::fs::write(dir.join("e8.toml"), e8.replacen("(cd)^3=(ef)^3=(ce)^2", "(cd)^4=(ef)^3=(ce)^2", 1)).unwrap();
    let d = Dataset::from_dir(&dir).unwrap();
    let r = complements::complements(&d, CartanType::E8, &Options { only: Some(15), ..Options::default() });
    assert!(r.checks.iter().any(|c| c.status == Status::Fail && c.id.contains("/15/")), "{}", r.to_markdown());
    std::fs::remove_dir_all(&dir).unwrap();
}
