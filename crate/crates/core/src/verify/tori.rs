//! Torus orders and structures, centralizer orders, and the combined
//! splitting table.

use std::time::Instant;

use super::common::{centralizer_order, conjugate, weyl, Options};
use super::structure::structure_order;
use super::{Report, Status};
use crate::data::{Dataset, KindData, Splits, Table9};
use crate::lattice::{det, IMat};
use crate::permgroup::{class_invariants, weyl_order};
use crate::poly::{parse_order_string, OrderString};
use crate::rootsys::{CartanType, RootSystem, WeylElement};
use crate::torus::{abelian_invariants, order_polynomial, twisted_order, twisted_polynomial, twisted_structure};

pub const DEFAULT_QS: [i128; 6] = [3, 5, 7, 9, 11, 13];

pub fn tori(data: &Dataset, kind: CartanType, qs: &[i128], opts: &Options) -> Report {
    let mut r = Report::new(format!("tori {kind}"), opts.seed);
    let sys = RootSystem::new(kind);
    match data.kind(kind) {
        Some(d) => {
            if opts.only.is_none() {
                let w0 = weyl(&sys, &d.w0);
                r.expect(
                    format!("tori/{kind}/w0"),
                    w0.as_ref().is_ok_and(|w| *w == sys.longest() && w.mul(w) == sys.identity()),
                    format!("w_0 = {}", d.w0),
                );
                weyl_group_order(&mut r, &sys);
            }
            for row in d.tori.iter().filter(|t| opts.wants(t.index)) {
                torus_row(&mut r, &sys, d, row.index, qs);
            }
            if opts.only.is_none() {
                table9(&mut r, &sys, &data.table9, d);
                if kind == CartanType::E7 {
                    order_four(&mut r, &sys, d);
                }
                if kind == CartanType::E8 {
                    remarks(&mut r, &sys, d);
                }
            }
        }
        None => e6(&mut r, &sys, data, qs),
    }
    r
}

fn weyl_group_order(r: &mut Report, sys: &RootSystem) {
    let kind = sys.kind;
    let t = Instant::now();
    let o = weyl_order(sys);
    let ms = t.elapsed().as_millis();
    let want: u128 = match kind {
        CartanType::E6 => 51_840,
        CartanType::E7 => 2_903_040,
        CartanType::E8 => 696_729_600,
    };
    r.expect(format!("tori/{kind}/weyl-order"), o == want, format!("|W| = {o} by Schreier-Sims"));
    r.expect(format!("tori/{kind}/weyl-order/time"), ms < 60_000, format!("{ms} ms"));
}

fn torus_row(r: &mut Report, sys: &RootSystem, d: &KindData, index: usize, qs: &[i128]) {
    let kind = sys.kind;
    let row = d.torus(index).unwrap();
    let id = format!("tori/{kind}/{index}");
    let w = match weyl(sys, &row.rep) {
        Ok(w) => w,
        Err(e) => {
            r.push(id, Status::Fail, e);
            return;
        }
    };
    r.expect(
        format!("{id}/order"),
        w.order() == row.order,
        format!("|w| = {}, table {}", w.order(), row.order),
    );

    let computed = order_polynomial(&w);
    let printed = parse_order_string(&row.factors);
    let agrees = |os: &OrderString| computed.as_ref().is_ok_and(|p| *p == os.poly);
    let os = match (&printed, &row.factors_erratum) {
        (Ok(os), _) if agrees(os) => {
            r.push(format!("{id}/polynomial"), Status::Pass, format!("det(q - w) = {}", os.poly));
            os.clone()
        }
        (_, Some(fix)) if parse_order_string(fix).is_ok_and(|f| agrees(&f)) => {
            let why = match &printed {
                Ok(os) => format!("printed `{}` gives {}", row.factors, os.poly),
                Err(e) => format!("printed `{}` does not parse ({e})", row.factors),
            };
            let fixed = parse_order_string(fix).unwrap();
            r.push(
                format!("{id}/polynomial"),
                Status::Erratum,
                format!(
                    "{why}; det(q - w) = {}, read as `{}` ({})",
                    fixed.poly,
                    fixed.text,
                    row.factors_note.as_deref().unwrap_or("")
                ),
            );
            fixed
        }
        (Ok(os), _) => {
            let got = computed.as_ref().map_or("overflow".to_string(), |p| p.to_string());
            r.push(
                format!("{id}/polynomial"),
                Status::Fail,
                format!("det(q - w) = {got}, table {}", os.poly),
            );
            os.clone()
        }
        (Err(e), _) => {
            r.push(format!("{id}/polynomial"), Status::Fail, e.clone());
            return;
        }
    };
    let mut bad = Vec::new();
    let mut structure = Vec::new();
    for &q in qs {
        match twisted_order(&w, q) {
            Ok(o) if o == os.poly.eval(q).unsigned_abs() => {}
            Ok(o) => bad.push(format!("q = {q}: |det| = {o}, table {}", os.poly.eval(q))),
            Err(_) => bad.push(format!("q = {q}: overflow")),
        }
        let table: Vec<u128> = os.cyclic.iter().map(|c| c.eval(q).unsigned_abs()).collect();
        let want = abelian_invariants(&table);
        match twisted_structure(&w, q) {
            Ok(s) => {
                let got = abelian_invariants(&s);
                if got != want {
                    structure.push(format!("q = {q}: {got:?} vs table {want:?}"));
                }
            }
            Err(_) => structure.push(format!("q = {q}: overflow")),
        }
    }
    r.expect(
        format!("{id}/det"),
        bad.is_empty(),
        if bad.is_empty() {
            format!("|det(qA - I)| matches {} at q = {qs:?}", os.text)
        } else {
            bad.join("; ")
        },
    );
    if structure.is_empty() {
        r.push(format!("{id}/structure"), Status::Pass, "invariant factors agree with the cyclic factors");
    } else {
        r.push(format!("{id}/structure"), Status::Logged, structure.join("; "));
    }

    let cw = centralizer_order(sys, &w);
    if let Some(t) = row.centralizer_order {
        r.expect(
            format!("{id}/centralizer"),
            cw == Some(u128::from(t)),
            format!("|C_W(w)| = {cw:?} by backtrack, table {t}"),
        );
    }
    match structure_order(&row.structure) {
        Ok(s) => {
            let agree = cw == Some(s.order);
            let status = match (agree, s.balanced) {
                (true, true) => Status::Pass,
                (false, _) if cw.is_some() => Status::Erratum,
                _ => Status::Logged,
            };
            r.push(
                format!("{id}/centralizer/structure"),
                status,
                format!(
                    "`{}` has order {}, backtrack {cw:?}{}",
                    row.structure,
                    s.order,
                    if s.balanced { "" } else { "; unbalanced parentheses" }
                ),
            );
        }
        Err(e) => r.push(format!("{id}/centralizer/structure"), Status::Logged, e),
    }
}

/// A product of reflections in the named roots, e.g. `\alpha\delta\zeta\mu`.
pub fn table9_element(sys: &RootSystem, t: &Table9, rep: &str) -> Result<WeylElement, String> {
    let mut w = sys.identity();
    if rep.trim() == "1" {
        return Ok(w);
    }
    let c: Vec<char> = rep.chars().filter(|c| !c.is_whitespace()).collect();
    let mut i = 0;
    while i < c.len() {
        if c[i] != '\\' {
            return Err(format!("unexpected `{}` in `{rep}`", c[i]));
        }
        let start = i;
        i += 1;
        while i < c.len() && c[i].is_ascii_alphabetic() {
            i += 1;
        }
        let name: String = c[start..i].iter().collect();
        let v = t.letters.get(&name).ok_or_else(|| format!("unknown letter `{name}`"))?;
        let l = sys.rank;
        if v[l..].iter().any(|&x| x != 0) {
            return Err(format!("`{name}` is not a root of {}", sys.kind));
        }
        let mut coords = [0i8; 8];
        coords[..l].copy_from_slice(&v[..l]);
        let k = sys
            .index_of(&coords)
            .ok_or_else(|| format!("`{name}` is not a root of {}", sys.kind))?;
        w = w.mul(&sys.reflection(k));
    }
    Ok(w)
}

fn table9(r: &mut Report, sys: &RootSystem, t: &Table9, d: &KindData) {
    let kind = sys.kind;
    for row in &t.rows {
        let verdict = match kind {
            CartanType::E7 => row.e7,
            _ => row.e8,
        };
        let Some(verdict) = verdict else { continue };
        let id = format!("tori/{kind}/table9/{}", row.index);
        let Some(main) = d.torus(row.index) else {
            r.push(id, Status::Fail, "no row with this index in the main table");
            continue;
        };
        match (table9_element(sys, t, &row.rep), weyl(sys, &main.rep)) {
            (Ok(a), Ok(b)) => {
                let c = conjugate(sys, &a, &b);
                r.expect(
                    format!("{id}/class"),
                    c == Some(true),
                    format!("{} ~ {}: {c:?}", row.rep, main.rep),
                );
            }
            (Err(e), _) | (_, Err(e)) => r.push(format!("{id}/class"), Status::Fail, e),
        }
        r.expect(
            format!("{id}/verdict"),
            verdict == main.splits,
            format!("{verdict:?}, main table {:?}", main.splits),
        );
    }
}

/// `|w|` divides 4 exactly when `w` or `w w_0` is in the non-split list.
fn order_four(r: &mut Report, sys: &RootSystem, d: &KindData) {
    let w0 = sys.longest();
    let listed: Vec<WeylElement> = d.theorem.nonsplit.iter().filter_map(|s| weyl(sys, s).ok()).collect();
    let inv: Vec<Vec<i64>> = listed.iter().map(|w| class_invariants(sys, w)).collect();
    let mut bad = Vec::new();
    for row in &d.tori {
        let Ok(w) = weyl(sys, &row.rep) else { continue };
        let hit = [w, w.mul(&w0)].iter().any(|x| {
            let ix = class_invariants(sys, x);
            listed
                .iter()
                .zip(&inv)
                .any(|(l, i)| *i == ix && conjugate(sys, x, l) == Some(true))
        });
        if (4 % w.order() == 0) != hit {
            bad.push(row.index);
        }
    }
    r.expect(
        "tori/E7/order-divides-4",
        bad.is_empty(),
        format!("checked {} tori; disagreements at {bad:?}", d.tori.len()),
    );
}

fn remarks(r: &mut Report, sys: &RootSystem, d: &KindData) {
    let w0 = sys.longest();
    let other50 = d.remarks.iter().find(|x| x.index == 50).map(|x| x.other.clone());
    for rem in &d.remarks {
        let id = format!("tori/E8/remark/{}", rem.index);
        let (Ok(chosen), Ok(other)) = (weyl(sys, &rem.chosen), weyl(sys, &rem.other)) else {
            r.push(id, Status::Review, "representative does not parse");
            continue;
        };
        let mut checks: Vec<(String, bool)> = Vec::new();
        if let Some(t) = d.torus(rem.index).and_then(|t| weyl(sys, &t.rep).ok()) {
            checks.push(("chosen is the main-table representative".into(), t == chosen));
        }
        if rem.index == 50 {
            checks.push((
                "chosen ~ other*w_0".into(),
                conjugate(sys, &chosen, &other.mul(&w0)) == Some(true),
            ));
        }
        if rem.index == 51 {
            if let Some(Ok(o50)) = other50.as_deref().map(|s| weyl(sys, s)) {
                checks.push((
                    "other ~ the other representative of 50".into(),
                    conjugate(sys, &other, &o50) == Some(true),
                ));
            }
        }
        for (label, text, w) in [
            ("other", &rem.other_factors, &other),
            ("chosen", &rem.chosen_factors, &chosen),
        ] {
            if let Some(text) = text {
                let ok = match (parse_order_string(text), order_polynomial(w)) {
                    (Ok(p), Ok(q)) => p.poly == q,
                    _ => false,
                };
                checks.push((format!("torus of {label} is {text}"), ok));
            }
        }
        let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect();
        let status = if failed.is_empty() { Status::Pass } else { Status::Review };
        r.push(
            id,
            status,
            if failed.is_empty() {
                checks.iter().map(|c| c.0.as_str()).collect::<Vec<_>>().join("; ")
            } else {
                format!("for review: {}", failed.join("; "))
            },
        );
    }
}

/// The diagram automorphism of E6 as a matrix on simple-root coordinates.
pub fn e6_graph_matrix() -> IMat {
    let perm = [6usize, 2, 5, 4, 3, 1];
    (0..6)
        .map(|i| (0..6).map(|j| i128::from(perm[j] == i + 1)).collect())
        .collect()
}

fn imat(w: &WeylElement) -> IMat {
    w.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect()
}

fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn e6(r: &mut Report, sys: &RootSystem, data: &Dataset, qs: &[i128]) {
    let named = [(14usize, [0i8, 1, 0, 1, 1, 0]), (36, [1, 2, 2, 3, 2, 1])];
    for (k, c) in named {
        r.expect(
            format!("tori/E6/root/{k}"),
            sys.root(k)[..6] == c,
            format!("r_{k} = {:?}", &sys.root(k)[..6]),
        );
    }
    weyl_group_order(r, sys);
    let gamma = e6_graph_matrix();
    let w0 = sys.longest();
    let cartan_ok = (1..=6).all(|i| {
        (1..=6).all(|j| {
            let pi = |k: usize| [6usize, 2, 5, 4, 3, 1][k - 1];
            sys.pairing(&sys.root(i), j - 1) == sys.pairing(&sys.root(pi(i)), pi(j) - 1)
        })
    });
    let minus_w0: IMat = imat(&w0).into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect();
    r.expect(
        "tori/E6/graph",
        cartan_ok && minus_w0 == gamma,
        "the diagram automorphism preserves the Cartan matrix and equals -w_0",
    );

    let t = &data.table9;
    let e6d = &data.e6;
    let listed: Vec<WeylElement> = e6d.nonsplit.iter().filter_map(|s| weyl(sys, s).ok()).collect();
    let cond = weyl(sys, &e6d.conditional).ok();
    let mut rows = 0;
    for row in &t.rows {
        let Some(verdict) = row.e6 else { continue };
        rows += 1;
        let id = format!("tori/E6/table9/{}", row.index);
        let w = match table9_element(sys, t, &row.rep) {
            Ok(w) => w,
            Err(e) => {
                r.push(id, Status::Fail, e);
                continue;
            }
        };
        let ix = class_invariants(sys, &w);
        let in_class = |l: &WeylElement| class_invariants(sys, l) == ix && conjugate(sys, &w, l) == Some(true);
        let derived = if listed.iter().any(in_class) {
            Splits::Nonsplit
        } else if cond.as_ref().is_some_and(in_class) {
            Splits::Conditional
        } else {
            Splits::Split
        };
        r.expect(
            format!("{id}/verdict"),
            derived == verdict,
            format!("table {verdict:?}, from the theorem list {derived:?}"),
        );
        // Twisted form: |T| = |det(q A Γ - I)| = |P_{w w_0}(-q)|.
        let ag = mat_mul(&imat(&w), &gamma);
        let p = twisted_polynomial(&w.mul(&w0));
        let mut bad = Vec::new();
        for &q in qs {
            let m: IMat = ag
                .iter()
                .enumerate()
                .map(|(i, row)| row.iter().enumerate().map(|(j, &x)| q * x - i128::from(i == j)).collect())
                .collect();
            let twisted = det(&m).map(i128::unsigned_abs);
            let via = p.as_ref().map(|p| p.eval(-q).unsigned_abs());
            let untwisted = twisted_order(&w, q);
            match (twisted, via, untwisted) {
                (Ok(a), Ok(b), Ok(u)) if a == b && u > 0 => {}
                other => bad.push(format!("q = {q}: {other:?}")),
            }
        }
        r.expect(
            format!("{id}/twisted"),
            bad.is_empty(),
            if bad.is_empty() {
                format!("|T(q)| and |T^-(q)| = |P_{{ww_0}}(-q)| at q = {qs:?}")
            } else {
                bad.join("; ")
            },
        );
    }
    r.expect("tori/E6/rows", rows == 25, format!("{rows} rows in the E6 column"));
}
