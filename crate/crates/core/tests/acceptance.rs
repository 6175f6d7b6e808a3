//! One PASS/FAIL line per acceptance criterion.
//!
//! A criterion passes when every check under it is `pass` or `logged`. A
//! criterion whose only shortfall is a documented misprint (`erratum`) or an
//! equivalent mutant still prints FAIL, with the reason; the test itself fails
//! only on genuine `fail` checks.

use std::time::Instant;

use chevtori::data::Dataset;
use chevtori::rootsys::CartanType;
use chevtori::tits::Isogeny;
use chevtori::verify::common::Options;
use chevtori::verify::mutate::{detection, mutations};
use chevtori::verify::selftest::{selftest, OracleSamples};
use chevtori::verify::tori::DEFAULT_QS;
use chevtori::verify::{complements, lifts, nonsplit, prose, tori, Check, Report, Status};

struct Line {
    n: usize,
    pass: bool,
    hard_failures: Vec<String>,
    detail: String,
}

fn judge(n: usize, checks: &[&Check], extra: &[(bool, String)]) -> Line {
    let hard: Vec<String> = checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| format!("{}: {}", c.id, c.detail))
        .chain(extra.iter().filter(|e| !e.0).map(|e| e.1.clone()))
        .collect();
    let errata: Vec<&str> = checks
        .iter()
        .filter(|c| c.status == Status::Erratum)
        .map(|c| c.id.as_str())
        .collect();
    let mut detail = format!("{} checks", checks.len());
    for (ok, d) in extra {
        detail.push_str(&format!("; {d}{}", if *ok { "" } else { " [not met]" }));
    }
    if !errata.is_empty() {
        detail.push_str(&format!("; printed value disagrees, corrected value holds: {}", errata.join(", ")));
    }
    if !hard.is_empty() {
        detail.push_str(&format!("; failing: {}", hard.join(" | ")));
    }
    Line {
        n,
        pass: hard.is_empty() && errata.is_empty(),
        hard_failures: hard,
        detail,
    }
}

fn sel<'a>(r: &'a Report, prefixes: &[&str]) -> Vec<&'a Check> {
    r.checks
        .iter()
        .filter(|c| prefixes.iter().any(|p| c.id.starts_with(p)))
        .collect()
}

fn count(checks: &[&Check], suffix: &str) -> usize {
    checks.iter().filter(|c| c.id.ends_with(suffix)).count()
}

#[test]
fn acceptance() {
    let data = Dataset::embedded();
    let opts = Options::default();
    let start = Instant::now();
    let mut lines = Vec::new();

    let st = selftest(&data, &opts, OracleSamples::default());

    // 1. Root data.
    let c = sel(&st, &["selftest/roots/", "selftest/extraspecial/"]);
    lines.push(judge(1, &c, &[]));

    // 2. Calibration: A, B and the printed (Hn)^6 string.
    let c = sel(&st, &["selftest/calibration/"]);
    lines.push(judge(2, &c, &[]));

    // 3. Oracle equivalence.
    let c = sel(&st, &["selftest/oracle/", "selftest/braid/"]);
    let samples = OracleSamples::default();
    let sizes = (samples.e6 >= 10_000 && samples.e7 >= 10_000 && samples.e8 >= 200, format!(
        "{} / {} / {} words for E6 / E7 / E8",
        samples.e6, samples.e7, samples.e8
    ));
    lines.push(judge(3, &c, &[sizes]));

    // 4. Anchor identities.
    let c = sel(&st, &["selftest/identity/", "selftest/n0/"]);
    let anchors = [
        "E7sc/n_0^2",
        "E7sc/[n_0,n_i]",
        "E8sc/[n_0,n_i]",
        "E7sc/n_{63}^2",
        "E7ad/[n_{63},n_2n_5]",
        "E7ad/[n_{63},n_{49}]",
        "E8sc/n_{61}^2",
        "E8sc/(n_7n_6n_8)^4",
    ];
    let missing: Vec<&str> = anchors
        .iter()
        .copied()
        .filter(|a| !c.iter().any(|x| x.id.ends_with(a)))
        .collect();
    let anchor_note = if missing.is_empty() {
        format!("all {} anchors checked", anchors.len())
    } else {
        format!("anchors missing: {missing:?}")
    };
    lines.push(judge(4, &c, &[(missing.is_empty(), anchor_note)]));

    // 5. Lifts.
    let l7 = lifts::lifts(&data, CartanType::E7, Isogeny::Sc, &opts);
    let l8 = lifts::lifts(&data, CartanType::E8, Isogeny::Ad, &opts);
    let c: Vec<&Check> = l7.checks.iter().chain(&l8.checks).collect();
    let t1 = c.iter().filter(|x| x.id.contains("/table1/") && x.id.ends_with("/lift")).count();
    let t2 = c.iter().filter(|x| x.id.contains("/table2/")).count();
    let t5 = c.iter().filter(|x| x.id.contains("/table5/")).count();
    let anchored = count(&c, "/lift-n0");
    lines.push(judge(
        5,
        &c,
        &[
            (t1 == 30, format!("Table 1: {t1} rows")),
            (t2 == 10, format!("Table 2 lifts: {t2}")),
            (t5 >= 24, format!("Table 5 lifts: {t5}")),
            (anchored == 10, format!("(N n_0)^(4k) = 1 on {anchored} rows")),
        ],
    ));

    // 6. Non-splitting certificates, rechecked from their JSON form.
    let n7 = nonsplit::nonsplit(&data, CartanType::E7, &opts);
    let n8 = nonsplit::nonsplit(&data, CartanType::E8, &opts);
    let mut both = Report::new("nonsplit", 0);
    both.extend(n7.clone());
    both.extend(n8.clone());
    let json = serde_json::to_string(&both).unwrap();
    let back: Report = serde_json::from_str(&json).unwrap();
    let re = nonsplit::recheck(&back);
    let c: Vec<&Check> = both.checks.iter().collect();
    let certified = |p: &str| {
        re.checks
            .iter()
            .filter(|x| x.id.starts_with(p) && x.status == Status::Pass)
            .count()
    };
    let e7_rows = certified("nonsplit/E7ad/") - certified("nonsplit/E7ad/lemma");
    let e8_rows = certified("nonsplit/E8sc/") - certified("nonsplit/E8sc/lemma") - certified("nonsplit/E8sc/special/");
    let specials = certified("nonsplit/E8sc/special/");
    let global = certified("nonsplit/E7sc/global");
    let schema = certified("nonsplit/E7sc/table1/");
    let sat = both.checks.iter().filter(|x| x.detail.starts_with("SAT")).count();
    lines.push(judge(
        6,
        &c,
        &[
            (e7_rows == 10, format!("Table 2: {e7_rows} certificates")),
            (
                e8_rows >= 24,
                format!("Table 5: {e8_rows} certificates (the transcribed table has 25 rows)"),
            ),
            (specials == 4, format!("special tori: {specials}")),
            (global == 1, format!("E7 sc global: {global}")),
            (schema > 0, format!("4k+2 schema: {schema} rows")),
            (re.ok() && re.checks.len() == e7_rows + e8_rows + specials + global + schema + 2, format!("{} certificates rechecked from JSON", re.checks.len())),
            (sat == 0, format!("{sat} SAT verdicts")),
        ],
    ));

    // 7. Splitting.
    let s7 = complements::complements(&data, CartanType::E7, &opts);
    let s8 = complements::complements(&data, CartanType::E8, &opts);
    let pr = prose::prose(&data, &[5, 7], &opts);
    let c: Vec<&Check> = s7.checks.iter().chain(&s8.checks).chain(&pr.checks).collect();
    let prose_rows: Vec<usize> = data.e7.prose.iter().map(|p| p.index).collect();
    lines.push(judge(
        7,
        &c,
        &[(
            prose_rows == [4, 6, 9, 13, 19, 20, 26, 30],
            format!("prose tori {prose_rows:?} at q = 5, 7"),
        )],
    ));

    // 8 and 9. Torus structures and group orders.
    let t6 = tori::tori(&data, CartanType::E6, &DEFAULT_QS, &opts);
    let t7 = tori::tori(&data, CartanType::E7, &DEFAULT_QS, &opts);
    let t8 = tori::tori(&data, CartanType::E8, &DEFAULT_QS, &opts);
    let all: Vec<&Check> = t6.checks.iter().chain(&t7.checks).chain(&t8.checks).collect();
    let structural: Vec<&Check> = all
        .iter()
        .copied()
        .filter(|x| {
            ["/polynomial", "/det", "/structure", "/order", "/factors"]
                .iter()
                .any(|s| x.id.ends_with(s))
                && (x.id.starts_with("tori/E7/") || x.id.starts_with("tori/E8/"))
        })
        .collect();
    let polys = count(&structural, "/polynomial");
    lines.push(judge(
        8,
        &structural,
        &[(
            polys == data.e7.tori.len() + data.e8.tori.len(),
            format!("{polys} order polynomials at q = {DEFAULT_QS:?}"),
        )],
    ));
    let orders: Vec<&Check> = all
        .iter()
        .copied()
        .filter(|x| {
            x.id.contains("/weyl-order")
                || (x.id.starts_with("tori/E7/") && x.id.ends_with("/centralizer"))
        })
        .collect();
    let cw = count(&orders, "/centralizer");
    lines.push(judge(9, &orders, &[(cw == data.e7.tori.len(), format!("{cw} centralizer orders in Table 4"))]));

    // 10. Mutations.
    let m = mutations(&data, 24, 1);
    let [(ld, lt), (rd, rt)] = detection(&m);
    let mut ten = judge(10, &m.checks.iter().collect::<Vec<_>>(), &[]);
    ten.detail = format!(
        "{} of 24 detected: relation exponent shifts {rd}/{rt}, lift sign flips {ld}/{lt} \
         (an undetected flip is again a lift of the same order, so the row stays true)",
        ld + rd
    );
    ten.hard_failures = if rd == rt { Vec::new() } else { vec!["a relation mutation went undetected".into()] };
    lines.push(ten);

    println!();
    for l in &lines {
        println!("criterion {:2}: {}  {}", l.n, if l.pass { "PASS" } else { "FAIL" }, l.detail);
    }
    println!("acceptance suite: {:.1} s", start.elapsed().as_secs_f64());

    let hard: Vec<String> = lines
        .iter()
        .flat_map(|l| l.hard_failures.iter().map(move |f| format!("criterion {}: {f}", l.n)))
        .collect();
    assert!(hard.is_empty(), "{}", hard.join("\n"));
}
