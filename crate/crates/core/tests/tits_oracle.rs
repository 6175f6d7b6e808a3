use chevtori::chevalley::AdjointOracle;
use chevtori::group::Group;
use chevtori::rootsys::CartanType;
use chevtori::sparse::SparseMat;
use chevtori::tits::{Isogeny, TitsElement, TitsGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Multiplies random words over `n_i`, `h_i` and a few non-simple `n_r` in
/// both the normal-form engine and the adjoint matrices, then compares.
fn random_words(kind: CartanType, samples: usize, seed: u64) {
    let oracle = AdjointOracle::new(kind);
    let g = TitsGroup::new(kind, Isogeny::Ad);
    let l = g.rank();
    let n = g.sys.num_positive();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let len = rng.gen_range(1..=12);
        let mut e: TitsElement = g.identity();
        let mut m: SparseMat = oracle.identity();
        for _ in 0..len {
            match rng.gen_range(0..3) {
                0 => {
                    let i = rng.gen_range(1..=l);
                    e = g.mul(&e, &g.n(i));
                    m = m.mul(oracle.n(i));
                }
                1 => {
                    let i = rng.gen_range(1..=l);
                    e = g.mul(&e, &g.h_simple(&[i]));
                    m = m.mul(&oracle.h_bits(1 << (i - 1)));
                }
                _ => {
                    let k = rng.gen_range(1..=n);
                    e = g.mul(&e, &g.n(k));
                    m = m.mul(oracle.n(k));
                }
            }
        }
        assert_eq!(g.to_oracle(&oracle, &e), m, "{kind}: {}", g.format(&e));
    }
}

#[test]
fn oracle_equivalence_e6() {
    random_words(CartanType::E6, 500, 1);
}

#[test]
fn oracle_equivalence_e7() {
    random_words(CartanType::E7, 500, 2);
}

#[test]
fn oracle_equivalence_e8() {
    random_words(CartanType::E8, 60, 3);
}

#[test]
fn every_root_element_matches_oracle() {
    for kind in CartanType::ALL {
        let oracle = AdjointOracle::new(kind);
        let g = TitsGroup::new(kind, Isogeny::Ad);
        for k in 1..=g.sys.num_positive() {
            assert_eq!(&g.to_oracle(&oracle, &g.n(k)), oracle.n(k), "{kind} n_{k}");
        }
    }
}

#[test]
fn inverse_matches_oracle() {
    let oracle = AdjointOracle::new(CartanType::E7);
    let g = TitsGroup::new(CartanType::E7, Isogeny::Ad);
    let a = g.parse("h_1n_{23}n_5n_4n_3n_2").unwrap();
    let ai = g.inv(&a);
    let prod = g.to_oracle(&oracle, &a).mul(&g.to_oracle(&oracle, &ai));
    assert!(prod.is_identity());
}
