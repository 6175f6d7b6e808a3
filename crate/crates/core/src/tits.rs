//! The Tits group `𝒯 = <n_1, ..., n_l>` in normal form `h · n_w`.
//!
//! `n_w` is the product of simple `n_i` along any reduced word of `w` (well
//! defined by the braid relations) and `h` is an element of
//! `ℋ = <h_1, ..., h_l>`, an elementary abelian 2-group stored as a bitmask.
//! Products are formed by folding the reduced word of the right factor into
//! the left one letter at a time:
//!
//! * `n_w n_i = n_{w w_i}` when `l(w w_i) > l(w)`;
//! * otherwise `w = w' w_i` and `n_w n_i = n_{w'} h_i = h_{w'(r_i)} n_{w'}`.
//!
//! Non-simple `n_r` are obtained from `n_s n_{r'} n_s^-1 = h_r(eta) n_r` with
//! signs read off the adjoint oracle once per Cartan type.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::chevalley::{parity_bits, AdjointOracle};
use crate::group::Group;
use crate::rootsys::{sub, CartanType, RootSystem, WeylElement};
use crate::sparse::SparseMat;
use crate::words::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Isogeny {
    Sc,
    Ad,
}

impl FromStr for Isogeny {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sc" => Ok(Isogeny::Sc),
            "ad" => Ok(Isogeny::Ad),
            other => Err(format!("unknown isogeny `{other}` (expected sc or ad)")),
        }
    }
}

impl fmt::Display for Isogeny {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Isogeny::Sc => "sc",
            Isogeny::Ad => "ad",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct TitsElement {
    pub h: u16,
    pub w: WeylElement,
}

impl fmt::Debug for TitsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T(h={:#b}, {:?})", self.h, self.w)
    }
}

/// For each positive root `r_k` (zero-based `k`) of height at least two: the
/// simple index `s` (one-based) used to reach it from `r_k - r_s` and
/// `eta_{s, r_k - r_s}`.
pub type EtaSteps = Vec<Option<(usize, i8)>>;

pub fn eta_steps(oracle: &AdjointOracle) -> EtaSteps {
    let sys = &oracle.ch.sys;
    (0..sys.num_positive())
        .map(|k| {
            let r = sys.coords(k);
            if crate::rootsys::height(&r) == 1 {
                return None;
            }
            let s = (0..sys.rank)
                .find(|&s| {
                    let mut e = [0i8; crate::rootsys::MAX_RANK];
                    e[s] = 1;
                    sys.index_of(&sub(&r, &e)).is_some()
                })
                .expect("a simple root can be peeled off");
            let mut e = [0i8; crate::rootsys::MAX_RANK];
            e[s] = 1;
            let prev = sys.id_of(&sub(&r, &e)).unwrap();
            Some((s + 1, oracle.eta(s + 1, prev)))
        })
        .collect()
}

fn cached_eta(kind: CartanType) -> &'static EtaSteps {
    static CACHE: [OnceLock<EtaSteps>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let slot = match kind {
        CartanType::E6 => &CACHE[0],
        CartanType::E7 => &CACHE[1],
        CartanType::E8 => &CACHE[2],
    };
    slot.get_or_init(|| eta_steps(&AdjointOracle::new(kind)))
}

#[derive(Clone, Debug)]
pub struct TitsGroup {
    pub sys: RootSystem,
    pub isogeny: Isogeny,
    pub char_two: bool,
    center: u16,
    n_roots: Vec<TitsElement>,
    n0: Option<TitsElement>,
}

impl TitsGroup {
    pub fn new(kind: CartanType, isogeny: Isogeny) -> Self {
        Self::with_eta(kind, isogeny, false, cached_eta(kind))
    }

    /// Characteristic two: every `h_r(-1)` is trivial and `𝒯 ≅ W`.
    pub fn char_two(kind: CartanType) -> Self {
        Self::with_eta(kind, Isogeny::Sc, true, cached_eta(kind))
    }

    pub fn with_eta(kind: CartanType, isogeny: Isogeny, char_two: bool, eta: &EtaSteps) -> Self {
        let sys = RootSystem::new(kind);
        let center = match (kind, isogeny) {
            (CartanType::E7, Isogeny::Ad) => 0b101_0010,
            _ => 0,
        };
        let mut g = TitsGroup {
            sys,
            isogeny,
            char_two,
            center,
            n_roots: Vec::new(),
            n0: None,
        };
        let n = g.sys.num_positive();
        let mut n_roots: Vec<TitsElement> = Vec::with_capacity(n);
        for k in 0..n {
            let el = match eta[k] {
                None => TitsElement {
                    h: 0,
                    w: g.sys.reflection(k + 1),
                },
                Some((s, sign)) => {
                    let r = g.sys.coords(k);
                    let mut e = [0i8; crate::rootsys::MAX_RANK];
                    e[s - 1] = 1;
                    let prev = g.sys.index_of(&sub(&r, &e)).unwrap();
                    let ns = n_roots[s - 1];
                    let conj = g.conj(&n_roots[prev - 1], &ns);
                    let hr = if sign == -1 {
                        g.reduce(parity_bits(&r, g.sys.rank))
                    } else {
                        0
                    };
                    TitsElement {
                        h: g.reduce(conj.h ^ hr),
                        w: conj.w,
                    }
                }
            };
            debug_assert_eq!(el.w, g.sys.reflection(k + 1));
            n_roots.push(el);
        }
        g.n_roots = n_roots;
        g.n0 = match kind {
            CartanType::E6 => None,
            CartanType::E7 => Some(g.n_word(&[1, 2, 5, 7, 37, 55, 61])),
            CartanType::E8 => {
                let h = g.h_simple(&[2, 5, 7]);
                Some(g.mul(&h, &g.n_word(&[1, 2, 5, 7, 44, 71, 89, 120])))
            }
        };
        g
    }

    pub fn kind(&self) -> CartanType {
        self.sys.kind
    }

    pub fn rank(&self) -> usize {
        self.sys.rank
    }

    fn reduce(&self, h: u16) -> u16 {
        if self.char_two {
            return 0;
        }
        if self.center != 0 {
            let top = 1 << (15 - self.center.leading_zeros());
            if h & top != 0 {
                return h ^ self.center;
            }
        }
        h
    }

    /// `n_w h n_w^-1` on the `ℋ` part: `h_i ↦ h_{w(r_i)}`.
    pub fn conj_h(&self, w: &WeylElement, h: u16) -> u16 {
        let mut out = 0;
        for i in 0..self.sys.rank {
            if h >> i & 1 == 1 {
                out ^= parity_bits(&w.column(i), self.sys.rank);
            }
        }
        self.reduce(out)
    }

    pub fn element(&self, h: u16, w: WeylElement) -> TitsElement {
        TitsElement {
            h: self.reduce(h),
            w,
        }
    }

    fn mul_letter(&self, e: &TitsElement, i: usize) -> TitsElement {
        let si = self.sys.reflection(i + 1);
        let w = e.w.mul(&si);
        if self.sys.is_right_descent(&e.w, i) {
            let extra = parity_bits(&w.column(i), self.sys.rank);
            TitsElement {
                h: self.reduce(e.h ^ extra),
                w,
            }
        } else {
            TitsElement { h: e.h, w }
        }
    }

    /// `h_{r_k}(-1)` for the positive root `r_k`.
    pub fn h_root(&self, k: usize) -> TitsElement {
        let bits = parity_bits(&self.sys.root(k), self.sys.rank);
        self.element(bits, self.sys.identity())
    }

    /// `h_{i1} h_{i2} ...` for simple indices.
    pub fn h_simple(&self, idx: &[usize]) -> TitsElement {
        let bits = idx.iter().fold(0u16, |acc, &i| acc ^ (1 << (i - 1)));
        self.element(bits, self.sys.identity())
    }

    pub fn h_bits(&self, bits: u16) -> TitsElement {
        self.element(bits, self.sys.identity())
    }

    /// `n_k` for the positive root `r_k` (one-based).
    pub fn n(&self, k: usize) -> TitsElement {
        self.n_roots[k - 1]
    }

    pub fn n_word(&self, ks: &[usize]) -> TitsElement {
        ks.iter()
            .fold(self.identity(), |acc, &k| self.mul(&acc, &self.n(k)))
    }

    /// Canonical lift `n_w`.
    pub fn lift(&self, w: &WeylElement) -> TitsElement {
        TitsElement { h: 0, w: *w }
    }

    /// The central lift `n_0` of `w_0` (E7, E8 only).
    pub fn n0(&self) -> Option<TitsElement> {
        self.n0
    }

    pub fn pi(&self, e: &TitsElement) -> WeylElement {
        e.w
    }

    /// Order of `e`: either `|π(e)|` or twice it.
    pub fn element_order(&self, e: &TitsElement) -> u64 {
        let k = e.w.order();
        let p = self.pow(e, k as i64);
        debug_assert!(p.w.is_identity());
        if p.h == 0 {
            k
        } else {
            2 * k
        }
    }

    pub fn lift_order_check(&self, e: &TitsElement, w: &WeylElement) -> bool {
        e.w == *w && self.element_order(e) == w.order()
    }

    pub fn h_indices(&self, h: u16) -> Vec<usize> {
        (0..self.sys.rank)
            .filter(|&i| h >> i & 1 == 1)
            .map(|i| i + 1)
            .collect()
    }

    /// Normal form in the paper's notation, e.g. `h_2n_1n_3n_4`.
    pub fn format(&self, e: &TitsElement) -> String {
        let mut s = String::new();
        for i in self.h_indices(e.h) {
            s.push_str(&format!("h_{i}"));
        }
        for i in self.sys.reduced_word(&e.w) {
            s.push_str(&format!("n_{i}"));
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    /// Parses a word with no named letters (e.g. `h_2n_1n_{53}n_0`).
    pub fn parse(&self, s: &str) -> Result<TitsElement, String> {
        let w = Word::parse(s)?;
        self.eval_word(&w, &mut |c| Err(format!("unbound name `{c}` in `{s}`")))
    }

    /// Evaluates a word; `names` resolves letters other than `h_k`, `n_k`, `n_0`.
    pub fn eval_word(
        &self,
        w: &Word,
        names: &mut dyn FnMut(char) -> Result<TitsElement, String>,
    ) -> Result<TitsElement, String> {
        let n = self.sys.num_positive();
        w.eval(self, &mut |atom| match atom {
            Word::H(k) if *k <= n => Ok(self.h_root(*k)),
            Word::N(0) => self
                .n0
                .ok_or_else(|| format!("n_0 is not defined for {}", self.kind())),
            Word::N(k) if *k <= n => Ok(self.n(*k)),
            Word::Name(c) => names(*c),
            other => Err(format!("root index out of range in `{other}`")),
        })
    }

    /// Image in the adjoint representation.
    pub fn to_oracle(&self, oracle: &AdjointOracle, e: &TitsElement) -> SparseMat {
        let mut m = oracle.h_bits(e.h);
        for i in self.sys.reduced_word(&e.w) {
            m = m.mul(oracle.n(i));
        }
        m
    }
}

impl Group for TitsGroup {
    type Elem = TitsElement;

    fn identity(&self) -> TitsElement {
        TitsElement {
            h: 0,
            w: self.sys.identity(),
        }
    }

    fn mul(&self, a: &TitsElement, b: &TitsElement) -> TitsElement {
        let mut acc = TitsElement {
            h: self.reduce(a.h ^ self.conj_h(&a.w, b.h)),
            w: a.w,
        };
        for i in self.sys.reduced_word(&b.w) {
            acc = self.mul_letter(&acc, i - 1);
        }
        acc
    }

    fn inv(&self, a: &TitsElement) -> TitsElement {
        let winv = a.w.inverse();
        let y = self.lift(&winv);
        let c = self.mul(&self.lift(&a.w), &y);
        debug_assert!(c.w.is_identity());
        TitsElement {
            h: self.conj_h(&winv, self.reduce(a.h ^ c.h)),
            w: winv,
        }
    }

    fn is_identity(&self, a: &TitsElement) -> bool {
        a.h == 0 && a.w.is_identity()
    }

    fn eq(&self, a: &TitsElement, b: &TitsElement) -> bool {
        a == b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_generators() {
        let g = TitsGroup::new(CartanType::E7, Isogeny::Sc);
        for i in 1..=7 {
            let n = g.n(i);
            assert_eq!(g.mul(&n, &n), g.h_simple(&[i]));
            assert_eq!(g.element_order(&n), 4);
        }
    }

    #[test]
    fn n_root_squares_to_h_root() {
        for t in CartanType::ALL {
            let g = TitsGroup::new(t, Isogeny::Sc);
            for k in 1..=g.sys.num_positive() {
                let n = g.n(k);
                assert_eq!(g.mul(&n, &n), g.h_root(k), "{t} root {k}");
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let g = TitsGroup::new(CartanType::E7, Isogeny::Sc);
        let a = g.parse("h_2n_1n_4n_6n_3n_{53}").unwrap();
        assert!(g.is_identity(&g.mul(&a, &g.inv(&a))));
        assert!(g.is_identity(&g.mul(&g.inv(&a), &a)));
    }

    #[test]
    fn format_parse_roundtrip() {
        let g = TitsGroup::new(CartanType::E8, Isogeny::Sc);
        let a = g.parse("h_4n_2n_3n_{120}n_{86}").unwrap();
        let s = g.format(&a);
        assert_eq!(g.parse(&s).unwrap(), a);
    }

    #[test]
    fn char_two_kills_torus_part() {
        let g = TitsGroup::char_two(CartanType::E7);
        let n = g.n(1);
        assert!(g.is_identity(&g.mul(&n, &n)));
    }
}
