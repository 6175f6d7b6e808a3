//! Non-splitting: monomial systems whose insolubility rules out a complement,
//! with certificates attached to the report for independent rechecking.

use std::collections::BTreeSet;

use serde_json::json;

use super::common::{conjugate, natural_preimage, weyl, Bindings, Options};
use super::{Report, Status};
use crate::data::{Dataset, KindData, Lemma, Special};
use crate::group::Group;
use crate::monosolve::{check_certificate, check_witness, solve, Schema, System, Verdict};
use crate::permgroup::class_invariants;
use crate::rootsys::{CartanType, RootSystem, WeylElement};
use crate::tits::{Isogeny, TitsElement, TitsGroup};
use crate::words::parse_relations;

/// Solves `sys` and records the verdict; UNSAT certificates are rechecked and
/// attached as evidence.
pub fn expect_unsat(r: &mut Report, id: &str, sys: &System) -> bool {
    if let Some(row) = sys.trivially_false() {
        let note = format!("row {} reads 1 = -1", sys.rows[row].label);
        return certify(r, id, sys, note);
    }
    certify(r, id, sys, String::new())
}

fn certify(r: &mut Report, id: &str, sys: &System, note: String) -> bool {
    match solve(sys) {
        Ok(Verdict::Unsat(cert)) => {
            let ok = check_certificate(sys, &cert);
            let ev = json!({ "system": sys, "certificate": cert });
            let detail = format!(
                "UNSAT, {} unknowns, {} rows, certificate {}{}",
                sys.unknowns.len(),
                sys.rows.len(),
                if ok { "verified" } else { "REJECTED" },
                if note.is_empty() { String::new() } else { format!("; {note}") }
            );
            r.push_evidence(id, if ok { Status::Pass } else { Status::Fail }, detail, ev);
            ok
        }
        Ok(Verdict::Sat(w)) => {
            r.push_evidence(
                id,
                Status::Fail,
                "SAT: a solution exists",
                json!({ "system": sys, "witness": w }),
            );
            false
        }
        Err(_) => {
            r.push(id, Status::Fail, "integer overflow in the solver");
            false
        }
    }
}

/// Re-verifies every certificate and witness attached to `saved`, using only
/// the serialized systems.
pub fn recheck(saved: &Report) -> Report {
    let mut r = Report::new(format!("recheck {}", saved.command), saved.seed);
    for c in &saved.checks {
        let Some(ev) = c.evidence.as_ref().filter(|e| e.get("system").is_some()) else {
            continue;
        };
        let sys: System = match serde_json::from_value(ev["system"].clone()) {
            Ok(s) => s,
            Err(e) => {
                r.push(c.id.clone(), Status::Fail, format!("unreadable system: {e}"));
                continue;
            }
        };
        if let Some(cert) = ev.get("certificate") {
            let ok = serde_json::from_value(cert.clone()).is_ok_and(|cert| check_certificate(&sys, &cert));
            r.expect(c.id.clone(), ok, if ok { "certificate verified" } else { "certificate rejected" });
        } else if let Some(w) = ev.get("witness") {
            let ok = serde_json::from_value(w.clone()).is_ok_and(|w| check_witness(&sys, &w));
            r.push(
                c.id.clone(),
                if ok { Status::Logged } else { Status::Fail },
                if ok { "witness verified (system is SAT)" } else { "witness rejected" },
            );
        }
    }
    r
}

/// Builds the system for generators `gens` (named Tits elements) and the
/// relations in `text`.
pub fn schema_system(
    g: &TitsGroup,
    gens: &[(char, TitsElement)],
    text: &str,
) -> Result<System, String> {
    let names: Vec<char> = gens.iter().map(|(c, _)| *c).collect();
    let rels = parse_relations(text, &names)?;
    let mut s = Schema::new(g);
    for (c, u) in gens {
        s.generator(*c, *u);
    }
    for rel in &rels {
        s.relation(&rel.word, &rel.text)?;
    }
    Ok(s.system())
}

fn lemma_generators(
    g: &TitsGroup,
    gens: &std::collections::BTreeMap<String, String>,
) -> Result<Vec<(char, TitsElement)>, String> {
    gens.iter()
        .map(|(k, v)| {
            let c = k.chars().next().ok_or("empty generator name")?;
            Ok((c, g.parse(v)?))
        })
        .collect()
}

pub fn nonsplit(data: &Dataset, kind: CartanType, opts: &Options) -> Report {
    let mut r = Report::new(format!("nonsplit {kind}"), opts.seed);
    let Some(d) = data.kind(kind) else {
        r.push(format!("nonsplit/{kind}"), Status::Fail, "no non-splitting data for this type");
        return r;
    };
    let iso: Isogeny = d.lemma.isogeny.parse().unwrap_or(Isogeny::Ad);
    let g = TitsGroup::new(kind, iso);
    let prefix = format!("nonsplit/{kind}{iso}");
    lemma(&mut r, &g, &format!("{prefix}/lemma"), &d.lemma, false);
    if opts.only.is_none() && d.lemma.printed_generators.is_some() {
        lemma(&mut r, &g, &format!("{prefix}/lemma-printed"), &d.lemma, true);
    }
    let lemma_gens = lemma_generators(&g, &d.lemma.generators).unwrap_or_default();
    let w0 = g.sys.longest();
    let n0 = g.n0().expect("n_0");
    for row in d.nonsplit.iter().filter(|x| opts.wants(x.index)) {
        let id = format!("{prefix}/{}", row.index);
        let (w, wp) = match (weyl(&g.sys, &row.w), weyl(&g.sys, &row.w_prime)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                r.push(id, Status::Fail, e);
                continue;
            }
        };
        let c = conjugate(&g.sys, &w, &wp);
        r.expect(
            format!("{id}/conjugate"),
            c == Some(true),
            format!("{} ~ {}: {c:?}", row.w, row.w_prime),
        );
        match g.parse(&row.preimage) {
            Ok(p) => {
                r.expect(format!("{id}/preimage"), g.pi(&p) == wp, format!("π({}) = w'", row.preimage));
                let bad: Vec<char> = lemma_gens
                    .iter()
                    .filter(|(_, y)| !g.is_identity(&g.comm(&p, y)))
                    .map(|(c, _)| *c)
                    .collect();
                let commutes = r.expect(
                    format!("{id}/commutes"),
                    bad.is_empty() && !lemma_gens.is_empty(),
                    if bad.is_empty() {
                        "preimage centralizes the lemma generators".to_string()
                    } else {
                        format!("fails to commute with {bad:?}")
                    },
                );
                if commutes {
                    match row_system(&g, &lemma_gens, &d.lemma.relations, p) {
                        Ok(sys) => {
                            expect_unsat(&mut r, &format!("{id}/system"), &sys);
                        }
                        Err(e) => {
                            r.push(format!("{id}/system"), Status::Fail, e);
                        }
                    }
                }
            }
            Err(e) => r.push(format!("{id}/preimage"), Status::Fail, e),
        }
        check_lift_pair(&mut r, &g, &format!("{id}/lift"), &row.lift, &wp, &w0, &n0);
    }
    if kind == CartanType::E8 {
        let sc = TitsGroup::new(kind, Isogeny::Sc);
        for s in d.special.iter().filter(|x| opts.wants(x.index)) {
            special(&mut r, &sc, d, s);
        }
    }
    if kind == CartanType::E7 {
        e7_sc(&mut r, d, opts);
    }
    if opts.only.is_none() {
        cross_checks(&mut r, &g.sys, d, kind);
    }
    r
}

/// The lemma schema with the row's preimage `p` added as a further generator
/// `H p` required to commute with each lemma generator.
fn row_system(g: &TitsGroup, lemma_gens: &[(char, TitsElement)], relations: &str, p: TitsElement) -> Result<System, String> {
    let name = ['d', 'e', 'f', 'g', 'k']
        .into_iter()
        .find(|c| lemma_gens.iter().all(|(d, _)| d != c))
        .ok_or("no free generator name")?;
    let mut gens = lemma_gens.to_vec();
    gens.push((name, p));
    let mut text = relations.to_string();
    for (c, _) in lemma_gens {
        text.push_str(&format!(", [{name},{c}]"));
    }
    schema_system(g, &gens, &text)
}

fn lemma(r: &mut Report, g: &TitsGroup, id: &str, l: &Lemma, printed: bool) -> bool {
    let gens_map = if printed {
        l.printed_generators.as_ref().unwrap()
    } else {
        &l.generators
    };
    let sys = lemma_generators(g, gens_map).and_then(|gens| schema_system(g, &gens, &l.relations));
    match (sys, printed) {
        (Ok(sys), false) => expect_unsat(r, id, &sys),
        (Ok(sys), true) => {
            let v = solve(&sys).map(|v| v.is_unsat());
            r.push(
                id,
                Status::Logged,
                format!(
                    "printed generators give {}; {}",
                    match v {
                        Ok(true) => "UNSAT",
                        Ok(false) => "SAT",
                        Err(_) => "overflow",
                    },
                    l.note.as_deref().unwrap_or("")
                ),
            );
            true
        }
        (Err(e), false) => r.expect(id, false, e),
        (Err(e), true) => {
            r.push(id, Status::Logged, format!("printed generators: {e}"));
            true
        }
    }
}

/// The lift has `π = w` and order `|w|`, and `lift * n_0` has order `|w w_0|`.
fn check_lift_pair(
    r: &mut Report,
    g: &TitsGroup,
    id: &str,
    text: &str,
    w: &WeylElement,
    w0: &WeylElement,
    n0: &TitsElement,
) {
    match g.parse(text) {
        Ok(e) => {
            let o = g.element_order(&e);
            r.expect(
                id,
                g.pi(&e) == *w && o == w.order(),
                format!("{text}: order {o}, |w'| = {}", w.order()),
            );
            let e0 = g.mul(&e, n0);
            let ww0 = w.mul(w0);
            let o0 = g.element_order(&e0);
            r.expect(
                format!("{id}/n0"),
                o0 == ww0.order(),
                format!("lift*n_0 order {o0}, |w'w_0| = {}", ww0.order()),
            );
        }
        Err(e) => {
            r.push(id, Status::Fail, e);
        }
    }
}

fn special(r: &mut Report, g: &TitsGroup, d: &KindData, s: &Special) {
    let id = format!("nonsplit/{}sc/special/{}", g.kind(), s.index);
    let n = match g.parse(&s.n) {
        Ok(n) => n,
        Err(e) => {
            r.push(id, Status::Fail, e);
            return;
        }
    };
    let b = Bindings::with('n', n);
    let gens: Result<Vec<(char, TitsElement)>, String> = s
        .generators
        .iter()
        .map(|(k, v)| Ok((k.chars().next().unwrap(), b.eval_str(g, v)?)))
        .collect();
    let gens = match gens {
        Ok(x) => x,
        Err(e) => {
            r.push(id, Status::Fail, e);
            return;
        }
    };
    for c in &s.centralizes {
        let ch = c.chars().next().unwrap();
        let ok = gens
            .iter()
            .find(|(x, _)| *x == ch)
            .is_some_and(|(_, y)| g.is_identity(&g.comm(&n, y)));
        r.expect(format!("{id}/centralizes/{c}"), ok, format!("[n, {c}] = 1"));
    }
    if let Some(row) = d.torus(s.index) {
        match weyl(&g.sys, &row.rep) {
            Ok(rep) => {
                let c = conjugate(&g.sys, &g.pi(&n), &rep);
                let status = match (c, &s.note) {
                    (Some(true), _) => Status::Pass,
                    (_, Some(_)) => Status::Logged,
                    _ => Status::Fail,
                };
                r.push(
                    format!("{id}/class"),
                    status,
                    format!(
                        "π(n) conjugate to {}: {c:?}{}",
                        row.rep,
                        s.note.as_deref().map(|x| format!("; {x}")).unwrap_or_default()
                    ),
                );
                let lift_id = format!("{id}/lift");
                match b.eval_str(g, &s.lift) {
                    Ok(l) => {
                        let o = g.element_order(&l);
                        r.expect(
                            &lift_id,
                            o == row.order && o == g.pi(&l).order(),
                            format!("{}: order {o}, table |w| = {}", s.lift, row.order),
                        );
                        let l0 = g.mul(&l, &g.n0().unwrap());
                        let ww0 = g.pi(&l0);
                        let o0 = g.element_order(&l0);
                        r.expect(
                            format!("{lift_id}/n0"),
                            o0 == ww0.order(),
                            format!("lift*n_0 order {o0}, |ww_0| = {}", ww0.order()),
                        );
                    }
                    Err(e) => {
                        r.push(lift_id, Status::Fail, e);
                    }
                }
            }
            Err(e) => r.push(format!("{id}/class"), Status::Fail, e),
        }
    }
    match schema_system(g, &gens, &s.relations) {
        Ok(sys) => {
            expect_unsat(r, &format!("{id}/system"), &sys);
        }
        Err(e) => {
            r.push(format!("{id}/system"), Status::Fail, e);
        }
    }
}

/// Simply connected E7: no preimage of `w_0` has order 2, and `ww_0` has no
/// lift of order `|ww_0|` when that order is `2 mod 4`.
fn e7_sc(r: &mut Report, d: &KindData, opts: &Options) {
    let g = TitsGroup::new(CartanType::E7, Isogeny::Sc);
    let n0 = g.n0().unwrap();
    let w0 = g.sys.longest();
    if opts.only.is_none() {
        match schema_system(&g, &[('a', n0)], "a^2") {
            Ok(sys) => {
                expect_unsat(r, "nonsplit/E7sc/global", &sys);
            }
            Err(e) => r.push("nonsplit/E7sc/global", Status::Fail, e),
        }
    }
    for row in d.lifts.iter().filter(|x| opts.wants(x.index)) {
        let id = format!("nonsplit/E7sc/table1/{}", row.index);
        let w = match weyl(&g.sys, &row.rep) {
            Ok(w) => w,
            Err(e) => {
                r.push(id, Status::Fail, e);
                continue;
            }
        };
        let ww0 = w.mul(&w0);
        let (l, l0) = (g.sys.length(&w), g.sys.length(&ww0));
        r.expect(format!("{id}/length"), l < l0, format!("l(w) = {l}, l(ww_0) = {l0}"));
        let m = ww0.order();
        if row.ww0_lift.is_some() {
            r.expect(
                format!("{id}/ww0"),
                m % 4 == 0 && w.order() % 4 == 0,
                format!("ww_0 lift listed; |w| = {}, |ww_0| = {m}", w.order()),
            );
            continue;
        }
        if m % 4 != 2 {
            r.expect(format!("{id}/ww0"), false, format!("no ww_0 lift listed but |ww_0| = {m}"));
            continue;
        }
        let n = natural_preimage(&g, &row.rep).unwrap();
        match schema_system(&g, &[('a', g.mul(&n, &n0))], &format!("a^{{{m}}}")) {
            Ok(sys) => {
                expect_unsat(r, &format!("{id}/ww0"), &sys);
            }
            Err(e) => r.push(format!("{id}/ww0"), Status::Fail, e),
        }
    }
}

fn cross_checks(r: &mut Report, sys: &RootSystem, d: &KindData, kind: CartanType) {
    use crate::data::Splits;
    let marked: BTreeSet<usize> = d
        .tori
        .iter()
        .filter(|t| t.splits == Splits::Nonsplit)
        .map(|t| t.index)
        .collect();
    let proved: BTreeSet<usize> = d
        .nonsplit
        .iter()
        .map(|x| x.index)
        .chain(d.special.iter().map(|s| s.index))
        .collect();
    r.expect(
        format!("nonsplit/{kind}/coverage"),
        marked == proved,
        format!(
            "{} tori marked non-split, {} certified; only marked {:?}, only certified {:?}",
            marked.len(),
            proved.len(),
            marked.difference(&proved).collect::<Vec<_>>(),
            proved.difference(&marked).collect::<Vec<_>>()
        ),
    );
    let w0 = sys.longest();
    let reps: Vec<WeylElement> = proved
        .iter()
        .filter_map(|&i| d.torus(i))
        .filter_map(|t| weyl(sys, &t.rep).ok())
        .collect();
    let inv: Vec<Vec<i64>> = reps.iter().map(|w| class_invariants(sys, w)).collect();
    let mut missing = Vec::new();
    for t in &d.theorem.nonsplit {
        let Ok(w) = weyl(sys, t) else {
            missing.push(t.clone());
            continue;
        };
        let found = [w, w.mul(&w0)].iter().any(|x| {
            let ix = class_invariants(sys, x);
            reps.iter()
                .zip(&inv)
                .any(|(rep, i)| *i == ix && conjugate(sys, x, rep) == Some(true))
        });
        if !found {
            missing.push(t.clone());
        }
    }
    r.expect(
        format!("nonsplit/{kind}/theorem"),
        missing.is_empty(),
        format!(
            "{} listed classes; unmatched {:?}",
            d.theorem.nonsplit.len(),
            missing
        ),
    );
}
