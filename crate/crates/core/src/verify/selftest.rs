//! Engine self-checks: root data, the extraspecial list, the calibration
//! example, braid relations, normal form against adjoint matrices, and the
//! displayed anchor identities.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::common::{weyl, Options};
use super::{Report, Status};
use crate::chevalley::{AdjointOracle, Chevalley};
use crate::data::{Calibration, Dataset, Identity};
use crate::group::Group;
use crate::monosolve::{SymElem, SymNormalizer};
use crate::rootsys::{CartanType, RootSystem};
use crate::sparse::SparseMat;
use crate::tits::{Isogeny, TitsElement, TitsGroup};
use crate::torus::{conj_matrix, power_exponents};

#[derive(Clone, Copy, Debug)]
pub struct OracleSamples {
    pub e6: usize,
    pub e7: usize,
    pub e8: usize,
}

impl Default for OracleSamples {
    fn default() -> Self {
        OracleSamples {
            e6: 10_000,
            e7: 10_000,
            e8: 200,
        }
    }
}

pub fn selftest(data: &Dataset, opts: &Options, samples: OracleSamples) -> Report {
    let mut r = Report::new("selftest", opts.seed);
    root_data(&mut r, data);
    if let Some(c) = &data.e7.calibration {
        calibration(&mut r, c);
    }
    for kind in CartanType::ALL {
        braid(&mut r, kind);
    }
    for (kind, n) in [
        (CartanType::E6, samples.e6),
        (CartanType::E7, samples.e7),
        (CartanType::E8, samples.e8),
    ] {
        oracle(&mut r, kind, n, opts.seed);
    }
    for (kind, d) in [(CartanType::E7, &data.e7), (CartanType::E8, &data.e8)] {
        n0(&mut r, kind, &d.n0);
        for id in &d.identities {
            identity(&mut r, kind, id);
        }
    }
    r
}

fn root_data(r: &mut Report, data: &Dataset) {
    let t = Instant::now();
    for (kind, want) in [(CartanType::E6, 36), (CartanType::E7, 63), (CartanType::E8, 120)] {
        let n = RootSystem::new(kind).num_positive();
        r.expect(format!("selftest/roots/{kind}"), n == want, format!("{n} positive roots"));
    }
    let ch = Chevalley::new(CartanType::E7);
    let ours = ch.format_extraspecial();
    let printed = data
        .e7
        .extraspecial
        .as_deref()
        .map(printed_extraspecial)
        .unwrap_or_default();
    let pairs = ch.extraspecial_pairs();
    r.expect(
        "selftest/extraspecial/E7",
        ours == printed,
        if ours == printed {
            format!("{} pairs, byte-identical", pairs.len())
        } else {
            format!("computed {ours}")
        },
    );
    r.expect(
        "selftest/extraspecial/E7/signs",
        pairs.len() == 56 && pairs.iter().all(|p| p.sign == 1),
        format!("{} pairs, {} negative", pairs.len(), pairs.iter().filter(|p| p.sign < 0).count()),
    );
    let ms = t.elapsed().as_millis();
    r.expect("selftest/roots/time", ms < 1000, format!("{ms} ms"));
}

/// The printed list with its math delimiters removed.
pub fn printed_extraspecial(s: &str) -> String {
    s.replace("$\\langle", "⟨")
        .replace("\\rangle]$", "⟩]")
        .replace("\\rangle$", "⟩")
}

fn calibration(r: &mut Report, c: &Calibration) {
    let g = TitsGroup::new(CartanType::E7, Isogeny::Sc);
    let w = match weyl(&g.sys, &c.w) {
        Ok(w) => w,
        Err(e) => {
            r.push("selftest/calibration", Status::Fail, e);
            return;
        }
    };
    let a: Vec<Vec<i64>> = conj_matrix(&w)
        .into_iter()
        .map(|row| row.into_iter().map(|x| x as i64).collect())
        .collect();
    r.expect("selftest/calibration/A", a == c.a, format!("{a:?}"));
    let b: Vec<Vec<i64>> = power_exponents(&w, c.m)
        .into_iter()
        .map(|row| row.into_iter().map(|x| x as i64).collect())
        .collect();
    r.expect("selftest/calibration/B", b == c.b, format!("{b:?}"));

    let n = match g.parse(&c.n) {
        Ok(n) => n,
        Err(e) => {
            r.push("selftest/calibration/n", Status::Fail, e);
            return;
        }
    };
    let sg = SymNormalizer { g: &g, cols: 7 };
    let h = SymElem {
        lin: (0..7).map(|i| (0..7).map(|j| i64::from(i == j)).collect()).collect(),
        u: g.identity(),
    };
    let nn = SymElem {
        lin: vec![vec![0; 7]; 7],
        u: n,
    };
    let conj = sg.conj(&h, &nn);
    let conj_text = format_monomials(&conj.lin, 0);
    r.expect(
        "selftest/calibration/conjugate",
        conj_text == c.conjugate,
        conj_text.clone(),
    );
    let power = sg.pow(&sg.mul(&h, &nn), c.m as i64);
    let sym_b = power.lin.clone();
    let power_text = format_monomials(&power.lin, power.u.h);
    r.expect(
        "selftest/calibration/symbolic-B",
        sym_b == b && power.u.w.is_identity(),
        "symbolic (Hn)^m exponents agree with the summed matrix",
    );
    let ev = json!({ "computed": power_text, "printed": c.power });
    if power_text == c.power {
        r.push_evidence("selftest/calibration/power", Status::Pass, power_text, ev);
    } else if c.power_erratum.as_deref() == Some(power_text.as_str()) {
        r.push_evidence(
            "selftest/calibration/power",
            Status::Erratum,
            format!(
                "printed {} differs; computed {} ({})",
                c.power,
                power_text,
                c.power_note.as_deref().unwrap_or("")
            ),
            ev,
        );
    } else {
        r.push_evidence(
            "selftest/calibration/power",
            Status::Fail,
            format!("computed {power_text}"),
            ev,
        );
    }
}

/// `(λ_3^{-1}λ_4, ...)`: component `i` is `±prod_j λ_j^{m_ij}`, negative where
/// bit `i` of `signs` is set.
pub fn format_monomials(m: &[Vec<i64>], signs: u16) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut s = String::new();
            if signs >> i & 1 == 1 {
                s.push('-');
            }
            let mut any = false;
            for (j, &e) in row.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                any = true;
                s.push_str(&format!("\\lambda_{}", j + 1));
                match e {
                    1 => {}
                    2..=9 => s.push_str(&format!("^{e}")),
                    _ => s.push_str(&format!("^{{{e}}}")),
                }
            }
            if !any {
                s.push('1');
            }
            s
        })
        .collect();
    format!("({})", parts.join(","))
}

fn braid(r: &mut Report, kind: CartanType) {
    let g = TitsGroup::new(kind, Isogeny::Sc);
    let l = g.rank();
    let mut bad = Vec::new();
    for i in 1..=l {
        if g.pow(&g.n(i), 2) != g.h_simple(&[i]) {
            bad.push(format!("n_{i}^2"));
        }
        for j in i + 1..=l {
            let m = g.sys.reflection(i).mul(&g.sys.reflection(j)).order();
            let alt = |a: usize, b: usize| {
                (0..m).fold(g.identity(), |acc, k| g.mul(&acc, &g.n(if k % 2 == 0 { a } else { b })))
            };
            if alt(i, j) != alt(j, i) {
                bad.push(format!("braid({i},{j})"));
            }
        }
    }
    r.expect(
        format!("selftest/braid/{kind}"),
        bad.is_empty(),
        if bad.is_empty() {
            "n_i^2 = h_i and all braid relations".to_string()
        } else {
            bad.join(", ")
        },
    );
}

/// Random words multiplied in the normal-form engine and as adjoint matrices.
pub fn oracle_mismatches(kind: CartanType, samples: usize, seed: u64) -> Vec<String> {
    let oracle = AdjointOracle::new(kind);
    let g = TitsGroup::new(kind, Isogeny::Ad);
    let l = g.rank();
    let n = g.sys.num_positive();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (kind.rank() as u64) << 32);
    let mut bad = Vec::new();
    for _ in 0..samples {
        let len = rng.gen_range(1..=12);
        let mut e: TitsElement = g.identity();
        let mut m: SparseMat = oracle.identity();
        let mut text = String::new();
        for _ in 0..len {
            match rng.gen_range(0..3) {
                0 => {
                    let i = rng.gen_range(1..=l);
                    e = g.mul(&e, &g.n(i));
                    m = m.mul(oracle.n(i));
                    text.push_str(&format!("n_{{{i}}}"));
                }
                1 => {
                    let i = rng.gen_range(1..=l);
                    e = g.mul(&e, &g.h_simple(&[i]));
                    m = m.mul(&oracle.h_bits(1 << (i - 1)));
                    text.push_str(&format!("h_{{{i}}}"));
                }
                _ => {
                    let k = rng.gen_range(1..=n);
                    e = g.mul(&e, &g.n(k));
                    m = m.mul(oracle.n(k));
                    text.push_str(&format!("n_{{{k}}}"));
                }
            }
        }
        if g.to_oracle(&oracle, &e) != m {
            bad.push(text);
        }
    }
    bad
}

fn oracle(r: &mut Report, kind: CartanType, samples: usize, seed: u64) {
    let bad = oracle_mismatches(kind, samples, seed);
    r.expect(
        format!("selftest/oracle/{kind}"),
        bad.is_empty(),
        format!(
            "{samples} random words, {} mismatches{}",
            bad.len(),
            bad.first().map(|w| format!(", first {w}")).unwrap_or_default()
        ),
    );
}

fn n0(r: &mut Report, kind: CartanType, text: &str) {
    let g = TitsGroup::new(kind, Isogeny::Sc);
    let ok = match (g.parse(text), g.n0()) {
        (Ok(a), Some(b)) => a == b && a.w == g.sys.longest(),
        _ => false,
    };
    r.expect(format!("selftest/n0/{kind}"), ok, format!("n_0 = {text}"));
}

fn identity(r: &mut Report, kind: CartanType, id: &Identity) {
    let iso: Isogeny = id.isogeny.parse().unwrap_or(Isogeny::Sc);
    let g = TitsGroup::new(kind, iso);
    let cases: Vec<(String, String)> = if id.for_each_simple {
        (1..=g.rank())
            .map(|i| (id.lhs.replace("n_i", &format!("n_{i}")), id.rhs.clone()))
            .collect()
    } else {
        vec![(id.lhs.clone(), id.rhs.clone())]
    };
    let mut bad = Vec::new();
    for (lhs, rhs) in &cases {
        match (g.parse(lhs), g.parse(rhs)) {
            (Ok(a), Ok(b)) if g.eq(&a, &b) => {}
            (Ok(a), Ok(_)) => bad.push(format!("{lhs} = {}", g.format(&a))),
            (Err(e), _) | (_, Err(e)) => bad.push(e),
        }
    }
    r.expect(
        format!("selftest/identity/{kind}{iso}/{}", id.lhs),
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} = {} ({} cases)", id.lhs, id.rhs, cases.len())
        } else {
            bad.join("; ")
        },
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_format() {
        let m = vec![vec![0, 0, -1, 1], vec![0, 0, 0, 12]];
        assert_eq!(format_monomials(&m, 0b10), "(\\lambda_3^{-1}\\lambda_4,-\\lambda_4^{12})");
    }
}
