//! `𝒯` acting on the `±e_r` of the adjoint representation.
//!
//! Every element of the Tits group maps each root vector to `±` another root
//! vector, so its adjoint image is a signed permutation of the `4N` points
//! `±e_r`. The action is faithful on the adjoint quotient, which makes
//! Schreier-Sims on these points an independent way to count `|K|` for a
//! subgroup `K` of `𝒯` (compare `|π(K)|` to see whether `K ∩ ℋ = 1`).

use crate::chevalley::AdjointOracle;
use crate::permgroup::{Perm, StabChain};
use crate::tits::{TitsElement, TitsGroup};

pub struct SignedRep {
    oracle: AdjointOracle,
    roots: usize,
}

impl SignedRep {
    pub fn new(g: &TitsGroup) -> Self {
        let oracle = AdjointOracle::new(g.kind());
        SignedRep {
            roots: 2 * oracle.ch.sys.num_positive(),
            oracle,
        }
    }

    pub fn points(&self) -> usize {
        2 * self.roots
    }

    /// Point `2b` is `e_b`, point `2b+1` is `-e_b`.
    pub fn perm(&self, g: &TitsGroup, e: &TitsElement) -> Perm {
        let m = g.to_oracle(&self.oracle, e);
        let mut image = vec![(0usize, 0i64); self.roots];
        for (i, j, v) in m.triples() {
            if j < self.roots {
                assert!(i < self.roots && v.abs() == 1, "Tits element is not monomial on root vectors");
                image[j] = (i, v);
            }
        }
        let mut p = vec![0u16; self.points()];
        for (b, &(i, v)) in image.iter().enumerate() {
            let flip = usize::from(v < 0);
            p[2 * b] = (2 * i + flip) as u16;
            p[2 * b + 1] = (2 * i + (1 - flip)) as u16;
        }
        p
    }

    pub fn subgroup_order(&self, g: &TitsGroup, gens: &[TitsElement]) -> u128 {
        let perms: Vec<Perm> = gens.iter().map(|e| self.perm(g, e)).collect();
        StabChain::new(self.points(), &perms).order()
    }
}
