//! A minimal group interface so that words and relations can be evaluated in
//! the Tits group, the Weyl group, or a concrete torus normalizer alike.
//!
//! Conventions: `x^y = y x y^-1` and `[x, y] = x y x^-1 y^-1`.

pub trait Group {
    type Elem: Clone;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_identity(&self, a: &Self::Elem) -> bool;

    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_identity(&self.mul(a, &self.inv(b)))
    }

    fn pow(&self, a: &Self::Elem, e: i64) -> Self::Elem {
        let base = if e < 0 { self.inv(a) } else { a.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            k >>= 1;
            if k > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    fn comm(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ab = self.mul(a, b);
        let ai = self.inv(a);
        let bi = self.inv(b);
        self.mul(&self.mul(&ab, &ai), &bi)
    }

    /// `a^by = by a by^-1`.
    fn conj(&self, a: &Self::Elem, by: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(by, a), &self.inv(by))
    }

    /// Order of `a`, or `None` if it exceeds `bound`.
    fn order(&self, a: &Self::Elem, bound: u64) -> Option<u64> {
        let mut cur = a.clone();
        for k in 1..=bound {
            if self.is_identity(&cur) {
                return Some(k);
            }
            cur = self.mul(&cur, a);
        }
        None
    }
}
