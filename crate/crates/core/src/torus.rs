//! Torus arithmetic in root-coordinate exponents.
//!
//! A torus element `H = prod h_{r_i}(λ_i)` is written `(λ_1, ..., λ_l)`.
//! Conjugation by a preimage of `w` acts on exponent vectors by the Weyl
//! matrix of `w`, so `H^n` has exponents `A λ` and the Frobenius twist by `q`
//! multiplies exponents by `q`. The fixed torus of `σ n` is therefore
//! `Z^l / (qA - I) Z^l`.

use crate::group::Group;
use crate::lattice::{det, invariant_factors, IMat, Overflow};
use crate::poly::Poly;
use crate::rootsys::WeylElement;
use crate::tits::{Isogeny, TitsElement, TitsGroup};

pub fn conj_matrix(w: &WeylElement) -> IMat {
    w.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect()
}

/// `B = I + A + ... + A^{m-1}`, the exponent matrix of `(H n)^m` before the
/// `n^m` factor.
pub fn power_exponents(w: &WeylElement, m: u64) -> IMat {
    let l = w.rank();
    let mut b = vec![vec![0i128; l]; l];
    let mut p = WeylElement::identity(l);
    for _ in 0..m {
        for (i, row) in b.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x += p.entry(i, j) as i128;
            }
        }
        p = p.mul(w);
    }
    b
}

pub fn twisted_matrix(w: &WeylElement, q: i128) -> IMat {
    let a = conj_matrix(w);
    a.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &x)| q * x - i128::from(i == j))
                .collect()
        })
        .collect()
}

/// `|T_{σn}| = |det(qA - I)|`.
pub fn twisted_order(w: &WeylElement, q: i128) -> Result<u128, Overflow> {
    Ok(det(&twisted_matrix(w, q))?.unsigned_abs())
}

/// Invariant factors of `T_{σn}` in torus coordinates.
pub fn twisted_structure(w: &WeylElement, q: i128) -> Result<Vec<u128>, Overflow> {
    Ok(invariant_factors(&twisted_matrix(w, q))?
        .into_iter()
        .map(i128::unsigned_abs)
        .collect())
}

/// `det(qA - I)` as a polynomial in `q`.
pub fn twisted_polynomial(w: &WeylElement) -> Result<Poly, Overflow> {
    let l = w.rank();
    let chi = crate::lattice::char_poly(&conj_matrix(w))?;
    // det(qA - I) = (-1)^l q^l chi(1/q)
    let sign = if l.is_multiple_of(2) { 1 } else { -1 };
    Ok(Poly::new((0..=l).map(|k| sign * chi[l - k]).collect()))
}

/// `det(q - A)`, the characteristic polynomial of `w`; equals
/// `det(w) det(qA - I)` and is the order polynomial of the torus.
pub fn order_polynomial(w: &WeylElement) -> Result<Poly, Overflow> {
    Ok(Poly::new(crate::lattice::char_poly(&conj_matrix(w))?))
}

/// Canonical invariant factors of `⊕ Z_{c_i}`, ones dropped.
pub fn abelian_invariants(orders: &[u128]) -> Vec<u128> {
    use std::collections::BTreeMap;
    let mut by_prime: BTreeMap<u128, Vec<u128>> = BTreeMap::new();
    for &n in orders {
        for (p, pk) in prime_powers(n) {
            by_prime.entry(p).or_default().push(pk);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u128; len];
    for pows in by_prime.values_mut() {
        pows.sort_unstable_by(|a, b| b.cmp(a));
        for (i, pk) in pows.iter().enumerate() {
            out[len - 1 - i] *= pk;
        }
    }
    out.retain(|&x| x != 1);
    out
}

fn prime_powers(mut n: u128) -> Vec<(u128, u128)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut pk = 1;
            while n.is_multiple_of(p) {
                n /= p;
                pk *= p;
            }
            out.push((p, pk));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

/// The multiplicative group of `F_{q^k}` as exponents of a fixed generator,
/// modulo `q^k - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldModel {
    pub q: i128,
    pub k: u32,
}

impl FieldModel {
    pub fn new(q: i128, k: u32) -> Self {
        assert!(q > 2 && q % 2 == 1, "odd q only");
        FieldModel { q, k }
    }

    pub fn modulus(&self) -> i128 {
        self.q.pow(self.k) - 1
    }

    /// Exponent of `-1`.
    pub fn minus_one(&self) -> i128 {
        self.modulus() / 2
    }

    /// An exponent `e` with `g^{e d} = g^target`, i.e. a solution of
    /// `d e ≡ target (mod q^k - 1)` if one exists.
    pub fn solve(&self, d: i128, target: i128) -> Option<i128> {
        let m = self.modulus();
        let (g, x, _) = ext_gcd(d.rem_euclid(m), m);
        if target.rem_euclid(g) != 0 {
            return None;
        }
        Some((x * (target / g)).rem_euclid(m / g))
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// An element `H u` of the torus normalizer over `F_{q^k}`, `H` given by
/// exponent vector `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormElem {
    pub x: Vec<i128>,
    pub u: TitsElement,
}

/// `N̄` restricted to `F_{q^k}`-points, with `Frobenius σ: λ ↦ λ^q`.
pub struct ConcreteNormalizer<'g> {
    pub g: &'g TitsGroup,
    pub field: FieldModel,
}

impl<'g> ConcreteNormalizer<'g> {
    pub fn new(g: &'g TitsGroup, field: FieldModel) -> Self {
        ConcreteNormalizer { g, field }
    }

    pub fn torus(&self, x: Vec<i128>) -> NormElem {
        let m = self.field.modulus();
        NormElem {
            x: x.into_iter().map(|v| v.rem_euclid(m)).collect(),
            u: self.g.identity(),
        }
    }

    pub fn tits(&self, u: TitsElement) -> NormElem {
        NormElem {
            x: vec![0; self.g.rank()],
            u,
        }
    }

    fn act(&self, w: &WeylElement, x: &[i128]) -> Vec<i128> {
        let m = self.field.modulus();
        let l = x.len();
        (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| w.entry(i, j) as i128 * x[j])
                    .sum::<i128>()
                    .rem_euclid(m)
            })
            .collect()
    }

    /// Exponent vector of an `ℋ` element.
    pub fn signs(&self, h: u16) -> Vec<i128> {
        (0..self.g.rank())
            .map(|i| if h >> i & 1 == 1 { self.field.minus_one() } else { 0 })
            .collect()
    }

    pub fn sigma(&self, e: &NormElem) -> NormElem {
        let m = self.field.modulus();
        NormElem {
            x: e.x.iter().map(|v| (v * self.field.q).rem_euclid(m)).collect(),
            u: e.u,
        }
    }

    /// `e^{σ y} = y σ(e) y^-1`.
    pub fn sigma_conj(&self, e: &NormElem, y: &NormElem) -> NormElem {
        self.conj(&self.sigma(e), y)
    }

    /// Membership in `N̄_{σ y}`.
    pub fn is_fixed(&self, e: &NormElem, y: &NormElem) -> bool {
        self.eq(&self.sigma_conj(e, y), e)
    }

    /// The criterion `H = H^{σn} [n, u]` for `H u ∈ N̄_{σn}`, evaluated
    /// directly on exponents (a second route to [`Self::is_fixed`]).
    pub fn lemma_membership(&self, x: &[i128], u: &TitsElement, n: &TitsElement) -> bool {
        let m = self.field.modulus();
        let c = self.g.comm(n, u);
        if !c.w.is_identity() {
            return false;
        }
        let twisted: Vec<i128> = self
            .act(&n.w, &x.iter().map(|v| v * self.field.q).collect::<Vec<_>>())
            .into_iter()
            .zip(self.signs(c.h))
            .map(|(a, b)| (a + b).rem_euclid(m))
            .collect();
        let diff: Vec<i128> = twisted
            .iter()
            .zip(x)
            .map(|(a, b)| (a - b).rem_euclid(m))
            .collect();
        self.is_central_exponent(&diff)
    }

    fn is_central_exponent(&self, y: &[i128]) -> bool {
        if y.iter().all(|&v| v == 0) {
            return true;
        }
        if self.g.isogeny == Isogeny::Ad && self.g.kind() == crate::rootsys::CartanType::E7 {
            let z = self.signs(0b101_0010);
            return y == z.as_slice();
        }
        false
    }
}

impl Group for ConcreteNormalizer<'_> {
    type Elem = NormElem;

    fn identity(&self) -> NormElem {
        self.tits(self.g.identity())
    }

    fn mul(&self, a: &NormElem, b: &NormElem) -> NormElem {
        let m = self.field.modulus();
        let conj = self.act(&a.u.w, &b.x);
        NormElem {
            x: a.x
                .iter()
                .zip(conj)
                .map(|(p, q)| (p + q).rem_euclid(m))
                .collect(),
            u: self.g.mul(&a.u, &b.u),
        }
    }

    fn inv(&self, a: &NormElem) -> NormElem {
        let m = self.field.modulus();
        let ui = self.g.inv(&a.u);
        NormElem {
            x: self
                .act(&ui.w, &a.x)
                .into_iter()
                .map(|v| (-v).rem_euclid(m))
                .collect(),
            u: ui,
        }
    }

    fn is_identity(&self, a: &NormElem) -> bool {
        if !a.u.w.is_identity() {
            return false;
        }
        let m = self.field.modulus();
        let y: Vec<i128> = a
            .x
            .iter()
            .zip(self.signs(a.u.h))
            .map(|(p, s)| (p + s).rem_euclid(m))
            .collect();
        self.is_central_exponent(&y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{CartanType, RootSystem};

    #[test]
    fn invariants_merge_cyclic_factors() {
        assert_eq!(abelian_invariants(&[2, 3]), vec![6]);
        assert_eq!(abelian_invariants(&[4, 6, 1]), vec![2, 12]);
        assert_eq!(abelian_invariants(&[]), Vec::<u128>::new());
    }

    #[test]
    fn split_torus() {
        let sys = RootSystem::new(CartanType::E7);
        let w = sys.identity();
        assert_eq!(twisted_order(&w, 5).unwrap(), 4u128.pow(7));
        assert_eq!(twisted_structure(&w, 5).unwrap(), vec![4; 7]);
        let p = twisted_polynomial(&w).unwrap();
        assert_eq!(p.eval(5), 4i128.pow(7));
    }

    #[test]
    fn polynomial_agrees_with_determinant() {
        let sys = RootSystem::new(CartanType::E8);
        let w = sys.word(&[1, 4, 6, 3, 7, 120]);
        let p = twisted_polynomial(&w).unwrap();
        for q in [3, 5, 7, -3] {
            assert_eq!(p.eval(q), det(&twisted_matrix(&w, q)).unwrap());
        }
    }

    #[test]
    fn field_solve() {
        let f = FieldModel::new(7, 2);
        let e = f.solve(8, f.minus_one()).unwrap();
        assert_eq!((8 * e).rem_euclid(48), 24);
    }
}
