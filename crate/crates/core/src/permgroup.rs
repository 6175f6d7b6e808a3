//! Permutation groups on the roots: a deterministic Schreier-Sims stabilizer
//! chain, subgroup orders, and conjugacy searches in the Weyl group.
//!
//! Permutations act on the right: `x^g = g[x]`, `x^(gh) = h[g[x]]`.

use std::collections::{HashSet, VecDeque};

use crate::rootsys::{RootSystem, WeylElement};

pub type Perm = Vec<u16>;

pub fn perm_identity(n: usize) -> Perm {
    (0..n as u16).collect()
}

pub fn perm_mul(a: &Perm, b: &Perm) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn perm_inv(a: &Perm) -> Perm {
    let mut out = vec![0u16; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u16;
    }
    out
}

fn is_id(a: &Perm) -> bool {
    a.iter().enumerate().all(|(i, &x)| x as usize == i)
}

struct Level {
    point: u16,
    gens: Vec<Perm>,
    /// `trans[β]` maps the base point to `β`.
    trans: Vec<Option<Perm>>,
    orbit: Vec<u16>,
}

impl Level {
    fn new(point: u16, n: usize) -> Self {
        let mut l = Level {
            point,
            gens: Vec::new(),
            trans: vec![None; n],
            orbit: Vec::new(),
        };
        l.rebuild(n);
        l
    }

    fn rebuild(&mut self, n: usize) {
        self.trans = vec![None; n];
        self.trans[self.point as usize] = Some(perm_identity(n));
        self.orbit = vec![self.point];
        let mut k = 0;
        while k < self.orbit.len() {
            let b = self.orbit[k];
            let ub = self.trans[b as usize].clone().unwrap();
            for s in &self.gens {
                let c = s[b as usize];
                if self.trans[c as usize].is_none() {
                    self.trans[c as usize] = Some(perm_mul(&ub, s));
                    self.orbit.push(c);
                }
            }
            k += 1;
        }
    }
}

/// A base and strong generating set.
pub struct StabChain {
    n: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(n: usize, gens: &[Perm]) -> Self {
        Self::with_base(n, gens, &[])
    }

    /// A chain whose base starts with `prefix`.
    pub fn with_base(n: usize, gens: &[Perm], prefix: &[u16]) -> Self {
        let mut chain = StabChain {
            n,
            levels: prefix.iter().map(|&p| Level::new(p, n)).collect(),
        };
        let gens: Vec<Perm> = gens.iter().filter(|g| !is_id(g)).cloned().collect();
        for g in &gens {
            if chain.levels.iter().all(|l| g[l.point as usize] == l.point) {
                chain.push_level(g);
            }
        }
        for l in 0..chain.levels.len() {
            let fixing: Vec<Perm> = gens
                .iter()
                .filter(|g| chain.levels[..l].iter().all(|x| g[x.point as usize] == x.point))
                .cloned()
                .collect();
            chain.levels[l].gens = fixing;
            chain.levels[l].rebuild(n);
        }
        chain.complete();
        chain
    }

    fn push_level(&mut self, g: &Perm) {
        let p = (0..self.n).find(|&x| g[x] as usize != x).unwrap() as u16;
        self.levels.push(Level::new(p, self.n));
    }

    /// Strips `g` through levels `from..`; returns the residue and the level
    /// at which it stopped.
    fn sift(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for l in from..self.levels.len() {
            let lev = &self.levels[l];
            let b = g[lev.point as usize];
            match &lev.trans[b as usize] {
                Some(u) => g = perm_mul(&g, &perm_inv(u)),
                None => return (g, l),
            }
        }
        let k = self.levels.len();
        (g, k)
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let mut added = None;
            'scan: for &b in &self.levels[lvl].orbit.clone() {
                let ub = self.levels[lvl].trans[b as usize].clone().unwrap();
                for s in self.levels[lvl].gens.clone() {
                    let c = s[b as usize];
                    let uc = self.levels[lvl].trans[c as usize].as_ref().unwrap();
                    let sg = perm_mul(&perm_mul(&ub, &s), &perm_inv(uc));
                    if is_id(&sg) {
                        continue;
                    }
                    let (h, j) = self.sift(sg, lvl + 1);
                    if j < self.levels.len() || !is_id(&h) {
                        added = Some((h, j));
                        break 'scan;
                    }
                }
            }
            match added {
                Some((h, j)) => {
                    if j == self.levels.len() {
                        self.push_level(&h);
                    }
                    for l in lvl + 1..=j {
                        self.levels[l].gens.push(h.clone());
                        self.levels[l].rebuild(self.n);
                    }
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<u16> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        let (h, j) = self.sift(g.clone(), 0);
        j == self.levels.len() && is_id(&h)
    }
}

impl StabChain {
    /// Elements `g` with `a^g = b` as permutations, i.e. `g[a[x]] = b[g[x]]`,
    /// by backtracking over base images. Pruning relies on the base starting
    /// with whole cycles of `a`. Returns the number found (stopping at the
    /// first if `first_only`) and one of them, or `None` once more than
    /// `budget` nodes have been visited.
    pub fn intertwiners(&self, a: &Perm, b: &Perm, first_only: bool, budget: u64) -> Option<(u128, Option<Perm>)> {
        self.search(a, b, &[], first_only, budget).map(|(c, f, _)| (c, f))
    }

    /// As `intertwiners`, with the image of base point `i` pinned to
    /// `forced[i]` where given. Also returns the nodes visited.
    fn search(
        &self,
        a: &Perm,
        b: &Perm,
        forced: &[Option<u16>],
        first_only: bool,
        budget: u64,
    ) -> Option<(u128, Option<Perm>, u64)> {
        let n = self.n;
        let cyc = |p: &Perm| -> Vec<usize> {
            let mut len = vec![0; n];
            for x in 0..n {
                if len[x] == 0 {
                    let mut orbit = vec![x];
                    let mut y = p[x] as usize;
                    while y != x {
                        orbit.push(y);
                        y = p[y] as usize;
                    }
                    for &z in &orbit {
                        len[z] = orbit.len();
                    }
                }
            }
            len
        };
        let mut st = Search {
            chain: self,
            a,
            b,
            ca: cyc(a),
            cb: cyc(b),
            forced,
            f: vec![u16::MAX; n],
            used: vec![false; n],
            count: 0,
            found: None,
            nodes: 0,
            budget,
            first_only,
        };
        let id = perm_identity(n);
        if st.go(0, &id, &id) {
            Some((st.count, st.found, st.nodes))
        } else {
            None
        }
    }
}

struct Search<'c> {
    chain: &'c StabChain,
    a: &'c Perm,
    b: &'c Perm,
    ca: Vec<usize>,
    cb: Vec<usize>,
    forced: &'c [Option<u16>],
    f: Vec<u16>,
    used: Vec<bool>,
    count: u128,
    found: Option<Perm>,
    nodes: u64,
    budget: u64,
    first_only: bool,
}

impl Search<'_> {
    /// `p` is the product of the chosen transversal elements so far, `pinv`
    /// its inverse. Returns `false` when the budget runs out.
    fn go(&mut self, i: usize, p: &Perm, pinv: &Perm) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if self.first_only && self.count > 0 {
            return true;
        }
        let levels = &self.chain.levels;
        if i == levels.len() {
            if (0..p.len()).all(|x| p[self.a[x] as usize] == self.b[p[x] as usize]) {
                self.count += 1;
                if self.found.is_none() {
                    self.found = Some(p.clone());
                }
            }
            return true;
        }
        let bi = levels[i].point as usize;
        let pinned = self.forced.get(i).copied().flatten();
        let cands: Vec<u16> = if self.f[bi] != u16::MAX {
            if pinned.is_some_and(|c| c != self.f[bi]) {
                return true;
            }
            vec![self.f[bi]]
        } else if let Some(c) = pinned {
            if self.used[c as usize] || self.cb[c as usize] != self.ca[bi] {
                return true;
            }
            vec![c]
        } else {
            (0..p.len() as u16)
                .filter(|&c| !self.used[c as usize] && self.cb[c as usize] == self.ca[bi])
                .collect()
        };
        for c in cands {
            let d = pinv[c as usize] as usize;
            let Some(u) = &levels[i].trans[d] else { continue };
            let mut set = Vec::new();
            let mut ok = true;
            let (mut x, mut y) = (bi, c as usize);
            for _ in 0..self.ca[bi] {
                if self.f[x] == u16::MAX {
                    if self.used[y] {
                        ok = false;
                        break;
                    }
                    self.f[x] = y as u16;
                    self.used[y] = true;
                    set.push(x);
                } else if self.f[x] as usize != y {
                    ok = false;
                    break;
                }
                x = self.a[x] as usize;
                y = self.b[y] as usize;
            }
            if ok {
                let p2 = perm_mul(u, p);
                let pinv2 = perm_mul(pinv, &perm_inv(u));
                if !self.go(i + 1, &p2, &pinv2) {
                    return false;
                }
            }
            for x in set {
                self.used[self.f[x] as usize] = false;
                self.f[x] = u16::MAX;
            }
            if self.first_only && self.count > 0 {
                break;
            }
        }
        true
    }
}

/// Base points grouped by the cycles of `w` on the roots, longest first.
fn cycle_base(w: &Perm) -> Vec<u16> {
    let n = w.len();
    let mut seen = vec![false; n];
    let mut cycles: Vec<Vec<u16>> = Vec::new();
    for x in 0..n {
        if !seen[x] {
            let mut c = Vec::new();
            let mut y = x;
            while !seen[y] {
                seen[y] = true;
                c.push(y as u16);
                y = w[y] as usize;
            }
            cycles.push(c);
        }
    }
    cycles.sort_by_key(|c| std::cmp::Reverse(c.len()));
    cycles.into_iter().flatten().collect()
}

fn weyl_chain(sys: &RootSystem, prefix: &[u16]) -> StabChain {
    let gens: Vec<Perm> = (1..=sys.rank)
        .map(|i| weyl_perm(sys, &sys.reflection(i)))
        .collect();
    StabChain::with_base(2 * sys.num_positive(), &gens, prefix)
}

/// The Weyl element acting on roots as `p`.
pub fn perm_to_weyl(sys: &RootSystem, p: &Perm) -> WeylElement {
    let cols: Vec<_> = (1..=sys.rank)
        .map(|j| {
            let id = sys.id_of(&sys.root(j)).unwrap();
            sys.coords(p[id] as usize)
        })
        .collect();
    WeylElement::from_columns(&cols)
}

/// `|C_W(w)|` by backtrack search, `None` past `budget` search nodes.
///
/// The centralizer is built from the bottom of the base up: at level `i`
/// the orbit of the base point under the centralizing elements found so far
/// is extended by one first-found search per missing candidate image, and
/// the order is the product of the final orbit lengths.
pub fn centralizer_order_backtrack(sys: &RootSystem, w: &WeylElement, budget: u64) -> Option<u128> {
    let pw = weyl_perm(sys, w);
    let chain = weyl_chain(sys, &cycle_base(&pw));
    centralizer_from_chain(&chain, &pw, budget)
}

fn centralizer_from_chain(chain: &StabChain, a: &Perm, budget: u64) -> Option<u128> {
    let base = chain.base();
    let mut found: Vec<Perm> = Vec::new();
    let mut order: u128 = 1;
    let mut spent = 0u64;
    for i in (0..base.len()).rev() {
        let fixes = |g: &Perm| base[..i].iter().all(|&b| g[b as usize] == b);
        let orbit_of = |found: &[Perm]| -> HashSet<u16> {
            let gens: Vec<&Perm> = found.iter().filter(|g| fixes(g)).collect();
            let mut seen: HashSet<u16> = [base[i]].into_iter().collect();
            let mut queue = VecDeque::from([base[i]]);
            while let Some(x) = queue.pop_front() {
                for g in &gens {
                    let y = g[x as usize];
                    if seen.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
            seen
        };
        let mut orbit = orbit_of(&found);
        let mut forced: Vec<Option<u16>> = base[..i].iter().map(|&b| Some(b)).collect();
        forced.push(None);
        for &gamma in &chain.levels[i].orbit {
            if orbit.contains(&gamma) {
                continue;
            }
            forced[i] = Some(gamma);
            let (_, g, nodes) = chain.search(a, a, &forced, true, budget.checked_sub(spent)?)?;
            spent += nodes;
            if let Some(g) = g {
                found.push(g);
                orbit = orbit_of(&found);
            }
        }
        order *= orbit.len() as u128;
    }
    Some(order)
}

/// `x` with `x a x^-1 = b` by backtrack search.
pub fn conjugator_backtrack(sys: &RootSystem, a: &WeylElement, b: &WeylElement, budget: u64) -> Conjugacy {
    if a == b {
        return Conjugacy::Equal;
    }
    if class_invariants(sys, a) != class_invariants(sys, b) {
        return Conjugacy::NotConjugate;
    }
    let (pa, pb) = (weyl_perm(sys, a), weyl_perm(sys, b));
    let chain = weyl_chain(sys, &cycle_base(&pa));
    match chain.intertwiners(&pa, &pb, true, budget) {
        None => Conjugacy::Undecided,
        Some((0, _)) => Conjugacy::NotConjugate,
        Some((_, Some(g))) => Conjugacy::Conjugate(perm_to_weyl(sys, &g)),
        Some(_) => unreachable!(),
    }
}

pub fn weyl_perm(sys: &RootSystem, w: &WeylElement) -> Perm {
    sys.root_permutation(w).into_iter().map(u16::from).collect()
}

/// `|W|` from the simple reflections.
pub fn weyl_order(sys: &RootSystem) -> u128 {
    let gens: Vec<Perm> = (1..=sys.rank)
        .map(|i| weyl_perm(sys, &sys.reflection(i)))
        .collect();
    StabChain::new(2 * sys.num_positive(), &gens).order()
}

/// Order of the subgroup of `W` generated by `gens`.
pub fn subgroup_order(sys: &RootSystem, gens: &[WeylElement]) -> u128 {
    let perms: Vec<Perm> = gens.iter().map(|w| weyl_perm(sys, w)).collect();
    StabChain::new(2 * sys.num_positive(), &perms).order()
}

/// Size of the conjugacy class of `w`, by breadth-first search under the
/// simple reflections; `None` past `budget` elements.
pub fn class_size(sys: &RootSystem, w: &WeylElement, budget: usize) -> Option<usize> {
    let mut seen: HashSet<WeylElement> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(*w);
    queue.push_back(*w);
    let refl: Vec<WeylElement> = (1..=sys.rank).map(|i| sys.reflection(i)).collect();
    while let Some(x) = queue.pop_front() {
        for s in &refl {
            let y = x.conj(s);
            if seen.insert(y) {
                if seen.len() > budget {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen.len())
}

/// `|C_W(w)| = |W| / |w^W|`, when the class fits in `budget`.
pub fn centralizer_order(sys: &RootSystem, w: &WeylElement, budget: usize) -> Option<u128> {
    let c = class_size(sys, w, budget)?;
    Some(weyl_order(sys) / c as u128)
}

/// Conjugacy invariants: order, characteristic polynomial of the reflection
/// representation (through traces of powers) and the number of fixed roots.
pub fn class_invariants(sys: &RootSystem, w: &WeylElement) -> Vec<i64> {
    let o = w.order();
    let mut v = vec![o as i64];
    for k in 1..=o.min(30) {
        let p = w.pow(k);
        v.push(p.trace());
        let fixed = (0..2 * sys.num_positive())
            .filter(|&id| p.apply(&sys.coords(id)) == sys.coords(id))
            .count();
        v.push(fixed as i64);
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conjugacy {
    Equal,
    /// `x` with `x a x^-1 = b`.
    Conjugate(WeylElement),
    NotConjugate,
    Undecided,
}

/// Decides whether `a` and `b` are conjugate: equal elements, distinct
/// invariants, or a breadth-first search of the class of `a` within `budget`.
pub fn conjugacy_witness(sys: &RootSystem, a: &WeylElement, b: &WeylElement, budget: usize) -> Conjugacy {
    if a == b {
        return Conjugacy::Equal;
    }
    if class_invariants(sys, a) != class_invariants(sys, b) {
        return Conjugacy::NotConjugate;
    }
    let refl: Vec<WeylElement> = (1..=sys.rank).map(|i| sys.reflection(i)).collect();
    let mut seen: HashSet<WeylElement> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(*a);
    queue.push_back((*a, sys.identity()));
    while let Some((x, by)) = queue.pop_front() {
        for s in &refl {
            let y = x.conj(s);
            if seen.insert(y) {
                let by2 = s.mul(&by);
                if y == *b {
                    return Conjugacy::Conjugate(by2);
                }
                if seen.len() > budget {
                    return Conjugacy::Undecided;
                }
                queue.push_back((y, by2));
            }
        }
    }
    Conjugacy::NotConjugate
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CartanType;

    #[test]
    fn symmetric_group_orders() {
        // S5 from a transposition and a 5-cycle
        let t: Perm = vec![1, 0, 2, 3, 4];
        let c: Perm = vec![1, 2, 3, 4, 0];
        let ch = StabChain::new(5, &[t.clone(), c.clone()]);
        assert_eq!(ch.order(), 120);
        // A5 from two 3-cycles
        let a: Perm = vec![1, 2, 0, 3, 4];
        let b: Perm = vec![0, 1, 3, 4, 2];
        let ch = StabChain::new(5, &[a, b]);
        assert_eq!(ch.order(), 60);
        assert!(!ch.contains(&t));
        assert!(ch.contains(&perm_mul(&c, &c)));
    }

    #[test]
    fn weyl_e6() {
        let sys = RootSystem::new(CartanType::E6);
        assert_eq!(weyl_order(&sys), 51840);
        let w = sys.identity();
        assert_eq!(centralizer_order(&sys, &w, 10), Some(51840));
        let w0 = sys.longest();
        let s1 = sys.reflection(1);
        let c = conjugacy_witness(&sys, &s1, &sys.reflection(36), 100_000);
        match c {
            Conjugacy::Conjugate(x) => assert_eq!(s1.conj(&x), sys.reflection(36)),
            other => panic!("{other:?}"),
        }
        match conjugator_backtrack(&sys, &s1, &sys.reflection(36), 1 << 20) {
            Conjugacy::Conjugate(x) => assert_eq!(s1.conj(&x), sys.reflection(36)),
            other => panic!("{other:?}"),
        }
        assert_eq!(centralizer_order_backtrack(&sys, &s1, 1 << 20), Some(1440));
        let c = sys.word(&[1, 2, 3, 4, 5, 6]);
        assert_eq!(
            centralizer_order_backtrack(&sys, &c, 1 << 20),
            centralizer_order(&sys, &c, 100_000)
        );
        assert_eq!(
            conjugacy_witness(&sys, &s1, &w0, 100_000),
            Conjugacy::NotConjugate
        );
    }
}
