//! Root systems of type E6, E7, E8 and their Weyl groups.
//!
//! Simple roots follow Bourbaki: `r1 - r3 - r4 - r5 - ... - rl` is a chain and
//! `r2` hangs off `r4`. Positive roots are numbered from 1 by height; roots of
//! equal height are listed with lexicographically larger coordinate vectors
//! first, which reproduces the standard numbering used by computer algebra
//! systems (e.g. `r16 = r2 + r4 + r5` in E7).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub const MAX_RANK: usize = 8;

pub type Coords = [i8; MAX_RANK];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
pub enum CartanType {
    E6,
    E7,
    E8,
}

impl CartanType {
    pub const ALL: [CartanType; 3] = [CartanType::E6, CartanType::E7, CartanType::E8];

    pub fn rank(self) -> usize {
        match self {
            CartanType::E6 => 6,
            CartanType::E7 => 7,
            CartanType::E8 => 8,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}", self.rank())
    }
}

impl FromStr for CartanType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_uppercase().as_str() {
            "E6" => Ok(CartanType::E6),
            "E7" => Ok(CartanType::E7),
            "E8" => Ok(CartanType::E8),
            other => Err(format!("unknown Cartan type `{other}`")),
        }
    }
}

/// An element of the Weyl group stored as the integer matrix of its action on
/// root coordinates: column `j` holds the coordinates of `w(r_j)`.
///
/// Products compose as maps, so `a.mul(&b)` acts as `a(b(x))` and the word
/// `w1 w2 w3` is the matrix `S1 S2 S3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeylElement {
    rank: u8,
    m: [[i8; MAX_RANK]; MAX_RANK],
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut m = [[0i8; MAX_RANK]; MAX_RANK];
        for (i, row) in m.iter_mut().enumerate().take(rank) {
            row[i] = 1;
        }
        WeylElement { rank: rank as u8, m }
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.m[i][j] as i64
    }

    /// Row-major `l x l` copy of the matrix.
    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        let l = self.rank();
        (0..l).map(|i| (0..l).map(|j| self.entry(i, j)).collect()).collect()
    }

    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        let l = self.rank();
        let mut m = [[0i8; MAX_RANK]; MAX_RANK];
        for i in 0..l {
            for j in 0..l {
                let mut acc = 0i32;
                for k in 0..l {
                    acc += self.m[i][k] as i32 * other.m[k][j] as i32;
                }
                m[i][j] = acc as i8;
            }
        }
        WeylElement { rank: self.rank, m }
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.rank())
    }

    pub fn apply(&self, x: &Coords) -> Coords {
        let l = self.rank();
        let mut out = [0i8; MAX_RANK];
        for (i, o) in out.iter_mut().enumerate().take(l) {
            let mut acc = 0i32;
            for (j, xj) in x.iter().enumerate().take(l) {
                acc += self.m[i][j] as i32 * *xj as i32;
            }
            *o = acc as i8;
        }
        out
    }

    /// Image of the simple root `r_j` (`j` zero-based).
    pub fn column(&self, j: usize) -> Coords {
        let mut out = [0i8; MAX_RANK];
        for (i, o) in out.iter_mut().enumerate().take(self.rank()) {
            *o = self.m[i][j];
        }
        out
    }

    /// The element whose column `j` is `cols[j]`.
    pub fn from_columns(cols: &[Coords]) -> Self {
        let mut m = [[0i8; MAX_RANK]; MAX_RANK];
        for (j, c) in cols.iter().enumerate() {
            for (i, row) in m.iter_mut().enumerate().take(cols.len()) {
                row[j] = c[i];
            }
        }
        WeylElement { rank: cols.len() as u8, m }
    }

    pub fn trace(&self) -> i64 {
        (0..self.rank()).map(|i| self.entry(i, i)).sum()
    }

    /// Inverse as `w^(|w| - 1)`; Weyl element orders here never exceed 30.
    pub fn inverse(&self) -> WeylElement {
        let id = WeylElement::identity(self.rank());
        let mut prev = id;
        let mut cur = *self;
        while !cur.is_identity() {
            prev = cur;
            cur = cur.mul(self);
        }
        prev
    }

    pub fn order(&self) -> u64 {
        let mut cur = *self;
        let mut k = 1;
        while !cur.is_identity() {
            cur = cur.mul(self);
            k += 1;
        }
        k
    }

    pub fn pow(&self, e: u64) -> WeylElement {
        let mut acc = WeylElement::identity(self.rank());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn conj(&self, by: &WeylElement) -> WeylElement {
        by.mul(self).mul(&by.inverse())
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{:?}", self.to_rows())
    }
}

pub fn is_positive(c: &Coords) -> bool {
    c.iter().any(|&x| x > 0) && c.iter().all(|&x| x >= 0)
}

pub fn is_negative(c: &Coords) -> bool {
    c.iter().any(|&x| x < 0) && c.iter().all(|&x| x <= 0)
}

pub fn height(c: &Coords) -> i32 {
    c.iter().map(|&x| x as i32).sum()
}

pub fn negate(c: &Coords) -> Coords {
    let mut out = *c;
    for x in out.iter_mut() {
        *x = -*x;
    }
    out
}

pub fn add(a: &Coords, b: &Coords) -> Coords {
    let mut out = [0i8; MAX_RANK];
    for i in 0..MAX_RANK {
        out[i] = a[i] + b[i];
    }
    out
}

pub fn sub(a: &Coords, b: &Coords) -> Coords {
    add(a, &negate(b))
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub kind: CartanType,
    pub rank: usize,
    pub cartan: [[i32; MAX_RANK]; MAX_RANK],
    positive: Vec<Coords>,
    index: HashMap<Coords, usize>,
    reflections: Vec<WeylElement>,
    w0: WeylElement,
}

/// Root identifier over all `2N` roots: `0..N` are the positive roots in
/// order, `N..2N` their negatives.
pub type RootId = usize;

impl RootSystem {
    pub fn new(kind: CartanType) -> Self {
        let l = kind.rank();
        let mut cartan = [[0i32; MAX_RANK]; MAX_RANK];
        for (i, row) in cartan.iter_mut().enumerate().take(l) {
            row[i] = 2;
        }
        let mut edges = vec![(0usize, 2usize), (2, 3), (1, 3)];
        for k in 3..l - 1 {
            edges.push((k, k + 1));
        }
        for (a, b) in edges {
            cartan[a][b] = -1;
            cartan[b][a] = -1;
        }

        let mut positive: Vec<Coords> = (0..l)
            .map(|i| {
                let mut c = [0i8; MAX_RANK];
                c[i] = 1;
                c
            })
            .collect();
        let mut seen: std::collections::HashSet<Coords> = positive.iter().copied().collect();
        let mut frontier = positive.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for r in &frontier {
                for i in 0..l {
                    let p = pairing_raw(&cartan, l, r, i);
                    let mut s = *r;
                    s[i] -= p as i8;
                    if is_positive(&s) && seen.insert(s) {
                        next.push(s);
                    }
                }
            }
            positive.extend(next.iter().copied());
            frontier = next;
        }
        positive.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)));
        let mut index = HashMap::new();
        for (i, r) in positive.iter().enumerate() {
            index.insert(*r, i);
            index.insert(negate(r), i + positive.len());
        }

        let mut sys = RootSystem {
            kind,
            rank: l,
            cartan,
            positive,
            index,
            reflections: Vec::new(),
            w0: WeylElement::identity(l),
        };
        sys.reflections = (0..sys.positive.len()).map(|i| sys.build_reflection(i)).collect();
        sys.w0 = sys.compute_w0();
        sys
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// Positive root `r_k` for the one-based index `k`.
    pub fn root(&self, k: usize) -> Coords {
        self.positive[k - 1]
    }

    pub fn positive_roots(&self) -> &[Coords] {
        &self.positive
    }

    pub fn coords(&self, id: RootId) -> Coords {
        let n = self.positive.len();
        if id < n {
            self.positive[id]
        } else {
            negate(&self.positive[id - n])
        }
    }

    pub fn id_of(&self, c: &Coords) -> Option<RootId> {
        self.index.get(c).copied()
    }

    /// One-based index of a positive root.
    pub fn index_of(&self, c: &Coords) -> Option<usize> {
        match self.index.get(c) {
            Some(&i) if i < self.positive.len() => Some(i + 1),
            _ => None,
        }
    }

    pub fn negate_id(&self, id: RootId) -> RootId {
        let n = self.positive.len();
        if id < n {
            id + n
        } else {
            id - n
        }
    }

    /// `<a, r_k>` for the simple root `r_k` (`k` zero-based).
    pub fn pairing(&self, a: &Coords, k: usize) -> i32 {
        pairing_raw(&self.cartan, self.rank, a, k)
    }

    /// Symmetric bilinear form with `(r, r) = 2`.
    pub fn form(&self, a: &Coords, b: &Coords) -> i32 {
        (0..self.rank).map(|k| b[k] as i32 * self.pairing(a, k)).sum()
    }

    fn build_reflection(&self, i: usize) -> WeylElement {
        let r = self.positive[i];
        let l = self.rank;
        let mut w = WeylElement::identity(l);
        for j in 0..l {
            let p = self.pairing(&r, j);
            for k in 0..l {
                w.m[k][j] -= (p * r[k] as i32) as i8;
            }
        }
        w
    }

    /// Reflection `w_k` in the positive root `r_k` (one-based).
    pub fn reflection(&self, k: usize) -> WeylElement {
        self.reflections[k - 1]
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::identity(self.rank)
    }

    /// Product of reflections `w_{k1} w_{k2} ...` (one-based root indices).
    pub fn word(&self, ks: &[usize]) -> WeylElement {
        ks.iter()
            .fold(self.identity(), |acc, &k| acc.mul(&self.reflection(k)))
    }

    /// True when `l(w w_i) < l(w)`, i.e. `w(r_i)` is negative (`i` zero-based).
    pub fn is_right_descent(&self, w: &WeylElement, i: usize) -> bool {
        is_negative(&w.column(i))
    }

    pub fn length(&self, w: &WeylElement) -> usize {
        self.positive
            .iter()
            .filter(|r| is_negative(&w.apply(r)))
            .count()
    }

    /// Reduced word in simple reflections (one-based), built by repeatedly
    /// stripping the smallest right descent.
    pub fn reduced_word(&self, w: &WeylElement) -> Vec<usize> {
        let mut cur = *w;
        let mut rev = Vec::new();
        'outer: while !cur.is_identity() {
            for i in 0..self.rank {
                if self.is_right_descent(&cur, i) {
                    cur = cur.mul(&self.reflections[i]);
                    rev.push(i + 1);
                    continue 'outer;
                }
            }
            unreachable!("non-identity Weyl element without descent");
        }
        rev.reverse();
        rev
    }

    fn compute_w0(&self) -> WeylElement {
        let mut w = self.identity();
        loop {
            match (0..self.rank).find(|&i| !self.is_right_descent(&w, i)) {
                Some(i) => w = w.mul(&self.reflections[i]),
                None => return w,
            }
        }
    }

    pub fn longest(&self) -> WeylElement {
        self.w0
    }

    /// Action on all `2N` roots as a permutation of [`RootId`]s.
    pub fn root_permutation(&self, w: &WeylElement) -> Vec<u8> {
        (0..2 * self.positive.len())
            .map(|id| {
                let img = w.apply(&self.coords(id));
                self.index[&img] as u8
            })
            .collect()
    }

    pub fn export(&self) -> RootData {
        RootData {
            kind: self.kind.to_string(),
            rank: self.rank,
            cartan: (0..self.rank)
                .map(|i| (0..self.rank).map(|j| self.cartan[i][j]).collect())
                .collect(),
            positive_roots: self
                .positive
                .iter()
                .map(|r| r[..self.rank].to_vec())
                .collect(),
        }
    }
}

fn pairing_raw(cartan: &[[i32; MAX_RANK]; MAX_RANK], l: usize, a: &Coords, k: usize) -> i32 {
    (0..l).map(|j| a[j] as i32 * cartan[j][k]).sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct RootData {
    pub kind: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i32>>,
    pub positive_roots: Vec<Vec<i8>>,
}

/// Parses `w1w4w6w53`, `w_{23}w_5`, or `1` into one-based root indices.
pub fn parse_weyl_word(s: &str) -> Result<Vec<usize>, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "1" || t.is_empty() {
        return Ok(Vec::new());
    }
    let bytes = t.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < bytes.len() {
        if bytes[i] != b'w' {
            return Err(format!("unexpected `{}` in Weyl word `{s}`", bytes[i] as char));
        }
        i += 1;
        if i < bytes.len() && bytes[i] == b'_' {
            i += 1;
        }
        let braced = i < bytes.len() && bytes[i] == b'{';
        if braced {
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if start == i {
            return Err(format!("missing index in Weyl word `{s}`"));
        }
        out.push(t[start..i].parse().unwrap());
        if braced {
            if i >= bytes.len() || bytes[i] != b'}' {
                return Err(format!("unclosed brace in Weyl word `{s}`"));
            }
            i += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[i8]) -> Coords {
        let mut out = [0i8; MAX_RANK];
        out[..v.len()].copy_from_slice(v);
        out
    }

    #[test]
    fn counts() {
        assert_eq!(RootSystem::new(CartanType::E6).num_positive(), 36);
        assert_eq!(RootSystem::new(CartanType::E7).num_positive(), 63);
        assert_eq!(RootSystem::new(CartanType::E8).num_positive(), 120);
    }

    #[test]
    fn numbering_anchors() {
        let e6 = RootSystem::new(CartanType::E6);
        assert_eq!(e6.root(14), c(&[0, 1, 0, 1, 1, 0]));
        assert_eq!(e6.root(36), c(&[1, 2, 2, 3, 2, 1]));
        let e7 = RootSystem::new(CartanType::E7);
        assert_eq!(e7.root(16), c(&[0, 1, 0, 1, 1, 0, 0]));
        assert_eq!(e7.root(53), c(&[1, 2, 2, 3, 2, 1, 0]));
        let e8 = RootSystem::new(CartanType::E8);
        assert_eq!(e8.root(18), c(&[0, 1, 0, 1, 1, 0, 0, 0]));
        assert_eq!(e8.root(26), c(&[0, 1, 0, 1, 1, 1, 0, 0]));
        assert_eq!(e8.root(46), c(&[1, 1, 1, 1, 1, 1, 1, 0]));
        assert_eq!(e8.root(69), c(&[1, 2, 2, 3, 2, 1, 0, 0]));
        assert_eq!(e8.root(74), c(&[0, 1, 1, 2, 2, 2, 2, 1]));
        assert_eq!(e8.root(120), c(&[2, 3, 4, 6, 5, 4, 3, 2]));
    }

    #[test]
    fn longest_element_is_minus_identity_in_e7_e8() {
        for t in [CartanType::E7, CartanType::E8] {
            let sys = RootSystem::new(t);
            let w0 = sys.longest();
            for i in 0..sys.rank {
                for j in 0..sys.rank {
                    assert_eq!(w0.entry(i, j), if i == j { -1 } else { 0 });
                }
            }
            assert_eq!(sys.length(&w0), sys.num_positive());
        }
    }

    #[test]
    fn reduced_word_roundtrip() {
        let sys = RootSystem::new(CartanType::E7);
        let w = sys.word(&[1, 4, 6, 53]);
        let rw = sys.reduced_word(&w);
        assert_eq!(rw.len(), sys.length(&w));
        assert_eq!(sys.word(&rw), w);
    }

    #[test]
    fn parse_words() {
        assert_eq!(parse_weyl_word("w1w4w6w53").unwrap(), vec![1, 4, 6, 53]);
        assert_eq!(parse_weyl_word("w_{23}w_5").unwrap(), vec![23, 5]);
        assert_eq!(parse_weyl_word("1").unwrap(), Vec::<usize>::new());
        assert!(parse_weyl_word("w1x").is_err());
    }
}
