//! Chevalley basis structure constants and the adjoint-representation oracle.
//!
//! The constants are produced from a bimultiplicative sign cocycle on the root
//! lattice (which gives a valid integral form of the Lie algebra) and then
//! renormalised root by root so that every extraspecial pair carries `+1`.
//! Since the constants of a Chevalley basis are determined by their values on
//! extraspecial pairs, the result is the standard table for that choice.

use serde::Serialize;

use crate::rootsys::{add, height, is_positive, CartanType, Coords, RootId, RootSystem};
use crate::sparse::SparseMat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtraspecialPair {
    pub r: usize,
    pub s: usize,
    pub sign: i8,
}

#[derive(Clone, Debug)]
pub struct Chevalley {
    pub sys: RootSystem,
    n2: usize,
    table: Vec<i8>,
    extraspecial: Vec<ExtraspecialPair>,
}

impl Chevalley {
    pub fn new(kind: CartanType) -> Self {
        let sys = RootSystem::new(kind);
        let l = sys.rank;
        let n = sys.num_positive();
        let n2 = 2 * n;

        // eps(a, b) = (-1)^(a^T E b), E upper triangular over the Dynkin edges
        // plus the diagonal, so eps(r, r) = -1 and eps(a,b) eps(b,a) = (-1)^(a,b).
        let mut e = [[0i32; 8]; 8];
        for (i, row) in e.iter_mut().enumerate().take(l) {
            for (j, x) in row.iter_mut().enumerate().take(l) {
                if i == j || (i < j && sys.cartan[i][j] == -1) {
                    *x = 1;
                }
            }
        }
        let eps = |a: &Coords, b: &Coords| -> i8 {
            let mut s = 0i32;
            for i in 0..l {
                for j in 0..l {
                    s += a[i] as i32 * e[i][j] * b[j] as i32;
                }
            }
            if s.rem_euclid(2) == 1 {
                -1
            } else {
                1
            }
        };
        let sig = |a: &Coords| -> i8 {
            if is_positive(a) {
                1
            } else {
                -1
            }
        };
        let mut raw = vec![0i8; n2 * n2];
        for a in 0..n2 {
            let ca = sys.coords(a);
            for b in 0..n2 {
                let cb = sys.coords(b);
                let c = add(&ca, &cb);
                if sys.id_of(&c).is_some() {
                    raw[a * n2 + b] = sig(&ca) * sig(&cb) * sig(&c) * eps(&ca, &cb);
                }
            }
        }

        let extraspecial_ids = extraspecial_ids(&sys);
        let mut scale = vec![0i8; n2];
        for s in scale.iter_mut().take(l) {
            *s = 1;
        }
        // Height order guarantees both summands are already scaled.
        for (xi, &(r, s)) in extraspecial_ids.iter().enumerate() {
            if r != usize::MAX {
                scale[xi] = scale[r] * scale[s] * raw[r * n2 + s];
            }
        }
        for i in 0..n {
            scale[i + n] = scale[i];
        }
        let mut table = vec![0i8; n2 * n2];
        for a in 0..n2 {
            for b in 0..n2 {
                let v = raw[a * n2 + b];
                if v != 0 {
                    let c = sys.id_of(&add(&sys.coords(a), &sys.coords(b))).unwrap();
                    table[a * n2 + b] = scale[a] * scale[b] * scale[c] * v;
                }
            }
        }
        let extraspecial = extraspecial_ids
            .iter()
            .filter(|p| p.0 != usize::MAX)
            .map(|&(r, s)| ExtraspecialPair {
                r: r + 1,
                s: s + 1,
                sign: table[r * n2 + s],
            })
            .collect();
        Chevalley {
            sys,
            n2,
            table,
            extraspecial,
        }
    }

    pub fn kind(&self) -> CartanType {
        self.sys.kind
    }

    /// `N_{a,b}` with `[e_a, e_b] = N_{a,b} e_{a+b}`; zero when `a + b` is not a root.
    pub fn n(&self, a: RootId, b: RootId) -> i8 {
        self.table[a * self.n2 + b]
    }

    pub fn extraspecial_pairs(&self) -> &[ExtraspecialPair] {
        &self.extraspecial
    }

    /// The extraspecial list as `[⟨r, s, sign⟩, ...]`, sorted by `(r, s)`.
    pub fn format_extraspecial(&self) -> String {
        let mut pairs = self.extraspecial.clone();
        pairs.sort_by_key(|p| (p.r, p.s));
        let body: Vec<String> = pairs
            .iter()
            .map(|p| format!("⟨{}, {}, {}⟩", p.r, p.s, p.sign))
            .collect();
        format!("[{}]", body.join(", "))
    }

    pub fn dim(&self) -> usize {
        self.n2 + self.sys.rank
    }

    pub fn export(&self) -> StructureConstantsData {
        let mut entries = Vec::new();
        for a in 0..self.n2 {
            for b in 0..self.n2 {
                let v = self.n(a, b);
                if v != 0 {
                    entries.push((signed_index(&self.sys, a), signed_index(&self.sys, b), v));
                }
            }
        }
        StructureConstantsData {
            kind: self.kind().to_string(),
            extraspecial: self.extraspecial.clone(),
            constants: entries,
        }
    }
}

/// `+k` for the positive root `r_k`, `-k` for its negative.
pub fn signed_index(sys: &RootSystem, id: RootId) -> i32 {
    let n = sys.num_positive();
    if id < n {
        id as i32 + 1
    } else {
        -((id - n) as i32 + 1)
    }
}

/// For each positive root (zero-based), its extraspecial pair as zero-based
/// positive root ids, or `usize::MAX` for simple roots.
fn extraspecial_ids(sys: &RootSystem) -> Vec<(usize, usize)> {
    let n = sys.num_positive();
    (0..n)
        .map(|xi| {
            let c = sys.coords(xi);
            if height(&c) == 1 {
                return (usize::MAX, usize::MAX);
            }
            (0..n)
                .find_map(|r| {
                    let s = crate::rootsys::sub(&c, &sys.coords(r));
                    match sys.id_of(&s) {
                        Some(s) if s < n && r < s => Some((r, s)),
                        _ => None,
                    }
                })
                .expect("every non-simple positive root has a special pair")
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureConstantsData {
    pub kind: String,
    pub extraspecial: Vec<ExtraspecialPair>,
    /// `(a, b, N_{a,b})` with signed one-based root indices.
    pub constants: Vec<(i32, i32, i8)>,
}

/// Adjoint representation on the basis `e_r` (all `2N` roots, in [`RootId`]
/// order) followed by `h_1, ..., h_l`.
#[derive(Clone, Debug)]
pub struct AdjointOracle {
    pub ch: Chevalley,
    n_pos: Vec<SparseMat>,
    n_neg: Vec<SparseMat>,
}

impl AdjointOracle {
    pub fn new(kind: CartanType) -> Self {
        let ch = Chevalley::new(kind);
        let mut o = AdjointOracle {
            ch,
            n_pos: Vec::new(),
            n_neg: Vec::new(),
        };
        let n = o.ch.sys.num_positive();
        o.n_pos = (0..n).map(|i| o.n_of(i)).collect();
        o.n_neg = (0..n).map(|i| o.n_of(i + n)).collect();
        o
    }

    pub fn dim(&self) -> usize {
        self.ch.dim()
    }

    pub fn identity(&self) -> SparseMat {
        SparseMat::identity(self.dim())
    }

    /// Matrix of `ad e_a`.
    pub fn ad_e(&self, a: RootId) -> SparseMat {
        let sys = &self.ch.sys;
        let n2 = 2 * sys.num_positive();
        let ca = sys.coords(a);
        let mut t = Vec::new();
        for b in 0..n2 {
            let cb = sys.coords(b);
            let c = add(&ca, &cb);
            if let Some(id) = sys.id_of(&c) {
                t.push((id, b, self.ch.n(a, b) as i64));
            } else if c.iter().all(|&x| x == 0) {
                for k in 0..sys.rank {
                    t.push((n2 + k, b, ca[k] as i64));
                }
            }
        }
        for k in 0..sys.rank {
            t.push((a, n2 + k, -(sys.pairing(&ca, k) as i64)));
        }
        SparseMat::from_triples(self.dim(), t)
    }

    /// `x_a(t) = exp(t ad e_a)`, exact because `(ad e_a)^3 = 0`.
    pub fn x(&self, a: RootId, t: i64) -> SparseMat {
        let xm = self.ad_e(a);
        let x2 = xm.mul(&xm);
        let half = SparseMat::from_triples(
            x2.dim(),
            x2.triples().map(|(i, j, v)| {
                assert!(v % 2 == 0, "(ad e)^2 not divisible by 2");
                (i, j, v / 2 * t * t)
            }),
        );
        self.identity().add(&xm.scale(t)).add(&half)
    }

    fn n_of(&self, a: RootId) -> SparseMat {
        let b = self.ch.sys.negate_id(a);
        self.x(a, 1).mul(&self.x(b, -1)).mul(&self.x(a, 1))
    }

    /// `n_a = x_a(1) x_{-a}(-1) x_a(1)` for any root id.
    pub fn n_root(&self, a: RootId) -> &SparseMat {
        let n = self.ch.sys.num_positive();
        if a < n {
            &self.n_pos[a]
        } else {
            &self.n_neg[a - n]
        }
    }

    /// `n_k` for the positive root `r_k` (one-based).
    pub fn n(&self, k: usize) -> &SparseMat {
        &self.n_pos[k - 1]
    }

    /// `prod h_i(-1)^{bits_i}`: acts on `e_s` by `(-1)^{sum bits_i <s, r_i>}`.
    pub fn h_bits(&self, bits: u16) -> SparseMat {
        let sys = &self.ch.sys;
        let n2 = 2 * sys.num_positive();
        let mut d = vec![1i64; self.dim()];
        for (s, ds) in d.iter_mut().enumerate().take(n2) {
            let cs = sys.coords(s);
            let p: i32 = (0..sys.rank)
                .filter(|&k| bits >> k & 1 == 1)
                .map(|k| sys.pairing(&cs, k))
                .sum();
            if p.rem_euclid(2) == 1 {
                *ds = -1;
            }
        }
        SparseMat::diagonal(&d)
    }

    /// `h_r(-1)` for a root given by coordinates.
    pub fn h_root(&self, c: &Coords) -> SparseMat {
        self.h_bits(parity_bits(c, self.ch.sys.rank))
    }

    /// `eta_{s,a}` in `n_s n_a n_s^{-1} = h_{w_s(a)}(eta) n_{w_s(a)}`, for a
    /// simple index `s` (one-based) and any root id `a`.
    pub fn eta(&self, s: usize, a: RootId) -> i8 {
        let sys = &self.ch.sys;
        let ns = self.n(s);
        let ns_inv = ns.pow(3);
        let lhs = ns.mul(self.n_root(a)).mul(&ns_inv);
        let img = sys.reflection(s).apply(&sys.coords(a));
        let b = sys.id_of(&img).unwrap();
        let nb = self.n_root(b);
        let plus = &lhs == nb;
        let minus = lhs == self.h_root(&img).mul(nb);
        match (plus, minus) {
            (true, false) => 1,
            (false, true) => -1,
            _ => panic!("eta_{{{s},{a}}} is not determined by the oracle"),
        }
    }

    /// Full `eta` table indexed `[s - 1][root id]`.
    pub fn eta_table(&self) -> Vec<Vec<i8>> {
        let n2 = 2 * self.ch.sys.num_positive();
        (1..=self.ch.sys.rank)
            .map(|s| (0..n2).map(|a| self.eta(s, a)).collect())
            .collect()
    }
}

/// Parity of root coordinates as a bitmask over the simple indices.
pub fn parity_bits(c: &Coords, rank: usize) -> u16 {
    (0..rank)
        .filter(|&k| c[k].rem_euclid(2) == 1)
        .fold(0u16, |acc, k| acc | 1 << k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extraspecial_signs_are_positive() {
        for t in CartanType::ALL {
            let ch = Chevalley::new(t);
            assert_eq!(ch.extraspecial_pairs().len(), ch.sys.num_positive() - ch.sys.rank);
            assert!(ch.extraspecial_pairs().iter().all(|p| p.sign == 1));
        }
    }

    #[test]
    fn chevalley_axioms() {
        for t in CartanType::ALL {
            let ch = Chevalley::new(t);
            let sys = &ch.sys;
            let n2 = 2 * sys.num_positive();
            for a in 0..n2 {
                for b in 0..n2 {
                    let v = ch.n(a, b);
                    assert_eq!(v, -ch.n(b, a));
                    assert_eq!(v, -ch.n(sys.negate_id(a), sys.negate_id(b)));
                    if v != 0 {
                        let c = sys.id_of(&add(&sys.coords(a), &sys.coords(b))).unwrap();
                        let t = sys.negate_id(c);
                        assert_eq!(v, ch.n(b, t));
                        assert_eq!(v, ch.n(t, a));
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_on_root_vectors_e6() {
        let o = AdjointOracle::new(CartanType::E6);
        let n2 = 2 * o.ch.sys.num_positive();
        let ads: Vec<SparseMat> = (0..n2).map(|a| o.ad_e(a)).collect();
        // ad is a homomorphism: ad[x,y] = [ad x, ad y]
        for a in 0..n2 {
            for b in 0..n2 {
                let lhs = ads[a].mul(&ads[b]).add(&ads[b].mul(&ads[a]).scale(-1));
                let ca = o.ch.sys.coords(a);
                let cb = o.ch.sys.coords(b);
                let c = add(&ca, &cb);
                let rhs = if let Some(id) = o.ch.sys.id_of(&c) {
                    ads[id].scale(o.ch.n(a, b) as i64)
                } else if c.iter().all(|&x| x == 0) {
                    // ad h_a, diagonal
                    let d: Vec<i64> = (0..o.dim())
                        .map(|i| {
                            if i < n2 {
                                (0..o.ch.sys.rank)
                                    .map(|k| ca[k] as i64 * o.ch.sys.pairing(&o.ch.sys.coords(i), k) as i64)
                                    .sum()
                            } else {
                                0
                            }
                        })
                        .collect();
                    SparseMat::diagonal(&d)
                } else {
                    SparseMat::from_triples(o.dim(), [])
                };
                assert_eq!(lhs, rhs, "Jacobi fails for ({a},{b})");
            }
        }
    }

    #[test]
    fn n_squared_is_h() {
        let o = AdjointOracle::new(CartanType::E7);
        for k in 1..=o.ch.sys.num_positive() {
            let n = o.n(k);
            assert_eq!(n.mul(n), o.h_root(&o.ch.sys.root(k)));
        }
    }
}
