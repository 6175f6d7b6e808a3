//! Monomial equations `prod_j x_j^{e_ij} = ±1` over `F̄_p^*` (`p` odd).
//!
//! `F̄_p^*` is divisible, so such a system is solvable exactly when every
//! integer vector `v` with `v E = 0` has `prod s_i^{v_i} = 1`. A kernel vector
//! hitting an odd number of `-1` right-hand sides is a certificate of
//! insolubility that can be checked with integer arithmetic alone.
//!
//! Relations among elements `N_k = H_k u_k` (unknown `H_k`, fixed Tits
//! elements `u_k`) become such systems by evaluating them in a symbolic
//! normalizer whose torus part is a linear form in the unknown exponents.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::group::Group;
use crate::lattice::{left_kernel, smith, IMat, Overflow};
use crate::rootsys::CartanType;
use crate::tits::{Isogeny, TitsElement, TitsGroup};
use crate::words::Word;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Row {
    pub exps: Vec<i64>,
    pub negative: bool,
    pub label: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct System {
    pub unknowns: Vec<String>,
    pub rows: Vec<Row>,
}

/// Integer combination of rows: exponents cancel, signs multiply to `-1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub coefficients: Vec<i128>,
}

/// `x_j = g^{e_j}` in a cyclic group of even order `modulus`, with
/// `-1 = g^{modulus/2}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub modulus: i128,
    pub exponents: Vec<i128>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum Verdict {
    Sat(Witness),
    Unsat(Certificate),
}

impl Verdict {
    pub fn is_unsat(&self) -> bool {
        matches!(self, Verdict::Unsat(_))
    }
}

impl System {
    fn matrix(&self) -> IMat {
        self.rows
            .iter()
            .map(|r| r.exps.iter().map(|&e| e as i128).collect())
            .collect()
    }

    /// Rows `0 = -1`: contradictions visible without combination.
    pub fn trivially_false(&self) -> Option<usize> {
        self.rows
            .iter()
            .position(|r| r.negative && r.exps.iter().all(|&e| e == 0))
    }
}

pub fn solve(sys: &System) -> Result<Verdict, Overflow> {
    let n = sys.unknowns.len();
    if sys.rows.is_empty() {
        return Ok(Verdict::Sat(Witness {
            modulus: 2,
            exponents: vec![0; n],
        }));
    }
    let e = sys.matrix();
    if n == 0 {
        if let Some(i) = sys.trivially_false() {
            let mut c = vec![0; sys.rows.len()];
            c[i] = 1;
            return Ok(Verdict::Unsat(Certificate { coefficients: c }));
        }
        return Ok(Verdict::Sat(Witness {
            modulus: 2,
            exponents: vec![],
        }));
    }
    for v in left_kernel(&e)? {
        let parity: i128 = v
            .iter()
            .zip(&sys.rows)
            .filter(|(_, r)| r.negative)
            .map(|(c, _)| c.rem_euclid(2))
            .sum();
        if parity % 2 == 1 {
            return Ok(Verdict::Unsat(Certificate { coefficients: v }));
        }
    }
    let s = smith(&e)?;
    let mut lcm = 1i128;
    for &d in s.diag.iter().filter(|&&d| d != 0) {
        lcm = lcm / gcd(lcm, d.abs()) * d.abs();
    }
    let modulus = 2 * lcm;
    let half = modulus / 2;
    let c: Vec<i128> = sys.rows.iter().map(|r| if r.negative { half } else { 0 }).collect();
    let mut z = vec![0i128; n];
    for (i, zi) in z.iter_mut().enumerate().take(s.rank) {
        let bi: i128 = (0..c.len()).map(|j| s.u[i][j] * c[j]).sum::<i128>().rem_euclid(modulus);
        *zi = bi / s.diag[i];
    }
    let x: Vec<i128> = (0..n)
        .map(|i| (0..n).map(|j| s.v[i][j] * z[j]).sum::<i128>().rem_euclid(modulus))
        .collect();
    Ok(Verdict::Sat(Witness {
        modulus,
        exponents: x,
    }))
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Independent check of an insolubility certificate.
pub fn check_certificate(sys: &System, cert: &Certificate) -> bool {
    if cert.coefficients.len() != sys.rows.len() {
        return false;
    }
    let n = sys.unknowns.len();
    for j in 0..n {
        let s: i128 = sys
            .rows
            .iter()
            .zip(&cert.coefficients)
            .map(|(r, c)| r.exps[j] as i128 * c)
            .sum();
        if s != 0 {
            return false;
        }
    }
    let odd: i128 = sys
        .rows
        .iter()
        .zip(&cert.coefficients)
        .filter(|(r, _)| r.negative)
        .map(|(_, c)| c.rem_euclid(2))
        .sum();
    odd % 2 == 1
}

/// Independent check of a solution.
pub fn check_witness(sys: &System, w: &Witness) -> bool {
    if w.modulus % 2 != 0 || w.exponents.len() != sys.unknowns.len() {
        return false;
    }
    sys.rows.iter().all(|r| {
        let lhs: i128 = r
            .exps
            .iter()
            .zip(&w.exponents)
            .map(|(&e, &x)| e as i128 * x)
            .sum::<i128>()
            .rem_euclid(w.modulus);
        lhs == if r.negative { w.modulus / 2 } else { 0 }
    })
}

/// `H u` with `H` a linear form in the unknown exponents (`rows` is `l × cols`).
#[derive(Clone, Debug)]
pub struct SymElem {
    pub lin: Vec<Vec<i64>>,
    pub u: TitsElement,
}

pub struct SymNormalizer<'g> {
    pub g: &'g TitsGroup,
    pub cols: usize,
}

impl SymNormalizer<'_> {
    fn act(&self, u: &TitsElement, lin: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let l = self.g.rank();
        (0..l)
            .map(|i| {
                (0..self.cols)
                    .map(|c| (0..l).map(|j| u.w.entry(i, j) * lin[j][c]).sum())
                    .collect()
            })
            .collect()
    }
}

impl Group for SymNormalizer<'_> {
    type Elem = SymElem;

    fn identity(&self) -> SymElem {
        SymElem {
            lin: vec![vec![0; self.cols]; self.g.rank()],
            u: self.g.identity(),
        }
    }

    fn mul(&self, a: &SymElem, b: &SymElem) -> SymElem {
        let conj = self.act(&a.u, &b.lin);
        SymElem {
            lin: a
                .lin
                .iter()
                .zip(conj)
                .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect())
                .collect(),
            u: self.g.mul(&a.u, &b.u),
        }
    }

    fn inv(&self, a: &SymElem) -> SymElem {
        let ui = self.g.inv(&a.u);
        let lin = self
            .act(&ui, &a.lin)
            .into_iter()
            .map(|r| r.into_iter().map(|v| -v).collect())
            .collect();
        SymElem { lin, u: ui }
    }

    fn is_identity(&self, _a: &SymElem) -> bool {
        unreachable!("symbolic elements are turned into constraints, not compared")
    }
}

/// Builds the system expressing that elements `N_k = H_k u_k` satisfy given
/// relations. In adjoint E7 each relation may hold up to the centre
/// `<h_2h_5h_7>`, encoded by an extra unknown `ε` with `ε^2 = 1`.
pub struct Schema<'g> {
    g: &'g TitsGroup,
    blocks: Vec<(char, TitsElement)>,
    relations: Vec<(String, Vec<Vec<i64>>, u16)>,
}

impl<'g> Schema<'g> {
    pub fn new(g: &'g TitsGroup) -> Self {
        Schema {
            g,
            blocks: Vec::new(),
            relations: Vec::new(),
        }
    }

    pub fn generator(&mut self, name: char, u: TitsElement) -> &mut Self {
        assert!(self.relations.is_empty(), "declare generators first");
        self.blocks.push((name, u));
        self
    }

    fn central_mask(&self) -> u16 {
        if self.g.isogeny == Isogeny::Ad && self.g.kind() == CartanType::E7 {
            0b101_0010
        } else {
            0
        }
    }

    /// Adds the relation `word = 1`; its image in `W` must be trivial.
    pub fn relation(&mut self, word: &Word, label: &str) -> Result<&mut Self, String> {
        let l = self.g.rank();
        let cols = self.blocks.len() * l;
        let sg = SymNormalizer { g: self.g, cols };
        let index: HashMap<char, usize> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, (c, _))| (*c, i))
            .collect();
        let g = self.g;
        let n = g.sys.num_positive();
        let blocks = &self.blocks;
        let val = word.eval(&sg, &mut |atom| {
            let fixed = |u: TitsElement| SymElem {
                lin: vec![vec![0; cols]; l],
                u,
            };
            match atom {
                Word::Name(c) => {
                    let k = *index
                        .get(c)
                        .ok_or_else(|| format!("unknown generator `{c}` in `{label}`"))?;
                    let mut lin = vec![vec![0; cols]; l];
                    for (i, row) in lin.iter_mut().enumerate() {
                        row[k * l + i] = 1;
                    }
                    Ok(SymElem { lin, u: blocks[k].1 })
                }
                Word::H(k) if *k <= n => Ok(fixed(g.h_root(*k))),
                Word::N(0) => g.n0().map(fixed).ok_or_else(|| "n_0 undefined".to_string()),
                Word::N(k) if *k <= n => Ok(fixed(g.n(*k))),
                other => Err(format!("bad atom `{other}`")),
            }
        })?;
        if !val.u.w.is_identity() {
            return Err(format!("relation `{label}` does not hold in the Weyl group"));
        }
        self.relations.push((label.to_string(), val.lin, val.u.h));
        Ok(self)
    }

    pub fn system(&self) -> System {
        let l = self.g.rank();
        let base = self.blocks.len() * l;
        let center = self.central_mask();
        let n_eps = if center != 0 { self.relations.len() } else { 0 };
        let mut unknowns: Vec<String> = self
            .blocks
            .iter()
            .flat_map(|(c, _)| (1..=l).map(move |i| format!("{c}{i}")))
            .collect();
        unknowns.extend((0..n_eps).map(|k| format!("eps{}", k + 1)));
        let mut rows = Vec::new();
        for (k, (label, lin, h)) in self.relations.iter().enumerate() {
            for (i, lrow) in lin.iter().enumerate() {
                let mut exps = lrow.clone();
                exps.resize(base + n_eps, 0);
                if center != 0 && center >> i & 1 == 1 {
                    exps[base + k] = 1;
                }
                rows.push(Row {
                    exps,
                    negative: h >> i & 1 == 1,
                    label: format!("{label} [coordinate {}]", i + 1),
                });
            }
            if center != 0 {
                let mut exps = vec![0; base + n_eps];
                exps[base + k] = 2;
                rows.push(Row {
                    exps,
                    negative: false,
                    label: format!("{label} [eps^2 = 1]"),
                });
            }
        }
        System { unknowns, rows }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(exps: &[i64], negative: bool) -> Row {
        Row {
            exps: exps.to_vec(),
            negative,
            label: String::new(),
        }
    }

    #[test]
    fn square_equal_minus_one_is_solvable() {
        let sys = System {
            unknowns: vec!["x".into()],
            rows: vec![row(&[2], true)],
        };
        match solve(&sys).unwrap() {
            Verdict::Sat(w) => assert!(check_witness(&sys, &w)),
            Verdict::Unsat(_) => panic!(),
        }
    }

    #[test]
    fn contradictory_pair() {
        // x^2 y = 1, x^-2 y^-1 = -1
        let sys = System {
            unknowns: vec!["x".into(), "y".into()],
            rows: vec![row(&[2, 1], false), row(&[-2, -1], true)],
        };
        match solve(&sys).unwrap() {
            Verdict::Unsat(c) => assert!(check_certificate(&sys, &c)),
            Verdict::Sat(_) => panic!(),
        }
    }

    #[test]
    fn central_lift_has_no_involution_preimage_in_sc_e7() {
        let g = TitsGroup::new(CartanType::E7, Isogeny::Sc);
        let mut s = Schema::new(&g);
        s.generator('a', g.n0().unwrap());
        s.relation(&Word::parse("a^2").unwrap(), "a^2").unwrap();
        let sys = s.system();
        assert!(sys.trivially_false().is_some());
        let v = solve(&sys).unwrap();
        match v {
            Verdict::Unsat(c) => assert!(check_certificate(&sys, &c)),
            Verdict::Sat(_) => panic!("expected insoluble"),
        }
    }
}
