//! Claimed lifts: an element of `𝒯` over `w` (or a conjugate) whose order is
//! `|w|`.

use super::common::{conjugate, weyl, Options};
use super::{Report, Status};
use crate::group::Group;
use crate::data::Dataset;
use crate::rootsys::{CartanType, WeylElement};
use crate::tits::{Isogeny, TitsGroup};

pub fn lifts(data: &Dataset, kind: CartanType, iso: Isogeny, opts: &Options) -> Report {
    let mut r = Report::new(format!("lifts {kind} {iso}"), opts.seed);
    let Some(d) = data.kind(kind) else {
        r.push(format!("lifts/{kind}"), Status::Fail, "no lift tables for this type");
        return r;
    };
    if kind == CartanType::E7 {
        let g = TitsGroup::new(kind, iso);
        let w0 = g.sys.longest();
        let n0 = g.n0().expect("n_0");
        for row in d.lifts.iter().filter(|x| opts.wants(x.index)) {
            let id = format!("lifts/{kind}{iso}/table1/{}", row.index);
            let w = match weyl(&g.sys, &row.rep) {
                Ok(w) => w,
                Err(e) => {
                    r.push(id, Status::Fail, e);
                    continue;
                }
            };
            r.expect(
                format!("{id}/order"),
                w.order() == row.order,
                format!("|w| = {}, table {}", w.order(), row.order),
            );
            check_lift(&mut r, &g, &format!("{id}/lift"), &row.lift, &w, row.order);
            if row.order % 4 == 0 {
                // n_0 is central, so (N n_0)^{4k} = N^{4k} n_0^{4k} = 1.
                let res = g.parse(&row.lift).map(|n| {
                    let x = g.pow(&g.mul(&n, &n0), row.order as i64);
                    g.is_identity(&x)
                });
                r.expect(
                    format!("{id}/lift-n0"),
                    res == Ok(true),
                    format!("(N n_0)^{} = 1: {res:?}", row.order),
                );
            }
            if let Some(l) = &row.ww0_lift {
                let ww0 = w.mul(&w0);
                check_lift(&mut r, &g, &format!("{id}/ww0"), l, &ww0, ww0.order());
            }
        }
    }
    let g = TitsGroup::new(kind, Isogeny::Ad);
    let table = if kind == CartanType::E7 { "table2" } else { "table5" };
    for row in d.nonsplit.iter().filter(|x| opts.wants(x.index)) {
        let id = format!("lifts/{kind}ad/{table}/{}", row.index);
        match weyl(&g.sys, &row.w_prime) {
            Ok(w) => check_lift(&mut r, &g, &id, &row.lift, &w, w.order()),
            Err(e) => r.push(id, Status::Fail, e),
        }
    }
    r
}

/// `π(lift)` equals `w` (or is conjugate to it) and the lift has order `order`.
pub fn check_lift(r: &mut Report, g: &TitsGroup, id: &str, text: &str, w: &WeylElement, order: u64) {
    let e = match g.parse(text) {
        Ok(e) => e,
        Err(err) => {
            r.push(id, Status::Fail, err);
            return;
        }
    };
    let pi = g.pi(&e);
    let image = if pi == *w {
        Ok("π = w")
    } else {
        match conjugate(&g.sys, &pi, w) {
            Some(true) => Ok("π conjugate to w"),
            Some(false) => Err("π not conjugate to w".to_string()),
            None => Err("conjugacy undecided".to_string()),
        }
    };
    let o = g.element_order(&e);
    match image {
        Ok(how) => r.expect(id, o == order, format!("{text}: {how}, order {o}, expected {order}")),
        Err(e) => r.expect(id, false, format!("{text}: {e}")),
    };
}
