//! Splitting: the tabulated generators of a complement to `T̄_{σx}` in
//! `N̄_{σx}`.

use super::common::{centralizer_order, natural_preimage, Bindings, Options};
use super::signed::SignedRep;
use super::{Report, Status};
use crate::data::{ComplementRow, Dataset, KindData};
use crate::group::Group;
use crate::permgroup::subgroup_order;
use crate::rootsys::CartanType;
use crate::tits::{Isogeny, TitsElement, TitsGroup};
use crate::torus::twisted_order;
use crate::words::parse_relations;

/// Odd `q` at which odd-order tori are checked to be odd.
pub const ODD_SAMPLES: [i128; 6] = [3, 5, 7, 9, 11, 13];

pub fn complements(data: &Dataset, kind: CartanType, opts: &Options) -> Report {
    let mut r = Report::new(format!("complements {kind}"), opts.seed);
    let Some(d) = data.kind(kind) else {
        r.push(format!("complements/{kind}"), Status::Fail, "no complement tables for this type");
        return r;
    };
    let g = TitsGroup::new(kind, Isogeny::Ad);
    let signed = SignedRep::new(&g);
    for row in d.complements.iter().filter(|x| opts.wants(x.index)) {
        check_row(&mut r, &g, &signed, d, row);
    }
    r
}

/// Generators of a row in order of first definition, with `x` bound.
pub fn row_generators(
    g: &TitsGroup,
    d: &KindData,
    row: &ComplementRow,
) -> Result<(Bindings, Vec<char>), String> {
    let t = d.torus(row.index).ok_or("torus row missing")?;
    let n = natural_preimage(g, &t.rep)?;
    let mut b = Bindings::with('n', n);
    if let Some(x) = &row.x {
        b.define(g, &format!("x={x}"))?;
    }
    b.define(g, &row.generator_text())?;
    b.values.entry('x').or_insert(n);
    let gens: Vec<char> = b.order.iter().copied().filter(|&c| c != 'n' && c != 'x').collect();
    Ok((b, gens))
}

/// Text of the relations a row refers to.
pub fn row_relations(d: &KindData, row: &ComplementRow) -> String {
    match row.same_as.and_then(|i| d.complements.iter().find(|c| c.index == i)) {
        Some(other) => other.relation_text(),
        None => row.relation_text(),
    }
}

/// Relators of `text` that fail, with a reason each.
pub fn failing_relations(
    g: &TitsGroup,
    b: &Bindings,
    gens: &[char],
    text: &str,
) -> Result<Vec<String>, String> {
    let mut bad = Vec::new();
    for rel in parse_relations(text, gens)? {
        let v = b.eval(g, &rel.word)?;
        if !v.w.is_identity() {
            bad.push(format!("{} fails in W", rel.text));
        } else if !g.is_identity(&v) {
            bad.push(format!("{} = {}", rel.text, g.format(&v)));
        }
    }
    Ok(bad)
}

fn check_row(r: &mut Report, g: &TitsGroup, signed: &SignedRep, d: &KindData, row: &ComplementRow) {
    let table = match (g.kind(), row.odd) {
        (CartanType::E7, _) => "table3",
        (_, false) => "table6",
        (_, true) => "table7",
    };
    let id = format!("complements/{}/{table}/{}", g.kind(), row.index);
    let (b, gens) = match row_generators(g, d, row) {
        Ok(x) => x,
        Err(e) => {
            r.push(id, Status::Fail, e);
            return;
        }
    };
    let x = b.values[&'x'];
    let elems: Vec<TitsElement> = gens.iter().map(|c| b.values[c]).collect();

    let outside: Vec<char> = gens
        .iter()
        .zip(&elems)
        .filter(|(_, e)| !g.is_identity(&g.comm(&x, e)))
        .map(|(c, _)| *c)
        .collect();
    r.expect(
        format!("{id}/membership"),
        outside.is_empty(),
        if outside.is_empty() {
            format!("[x, g] = 1 for {}", gens.iter().collect::<String>())
        } else {
            format!("[x, g] != 1 for {outside:?}")
        },
    );
    if let Some(note) = &row.x_note {
        r.push(format!("{id}/x"), Status::Logged, note.clone());
    }

    let w = g.pi(&x);
    let cw = centralizer_order(&g.sys, &w);
    let images: Vec<_> = elems.iter().map(|e| g.pi(e)).collect();
    let pk = subgroup_order(&g.sys, &images);
    let table_cw = d.torus(row.index).and_then(|t| t.centralizer_order).map(u128::from);
    r.expect(
        format!("{id}/image"),
        cw == Some(pk) && table_cw.is_none_or(|t| t == pk),
        format!(
            "|π(K)| = {pk}, |C_W(π(x))| = {}{}",
            cw.map_or("undecided".to_string(), |c| c.to_string()),
            table_cw.map(|t| format!(", table {t}")).unwrap_or_default()
        ),
    );

    if row.odd {
        let even: Vec<i128> = ODD_SAMPLES
            .iter()
            .copied()
            .filter(|&q| twisted_order(&w, q).map_or(true, |o| o % 2 == 0))
            .collect();
        r.expect(
            format!("{id}/odd"),
            even.is_empty(),
            if even.is_empty() {
                format!("|T| odd at q = {ODD_SAMPLES:?}, so K ∩ T = 1")
            } else {
                format!("|T| even at q = {even:?}")
            },
        );
        return;
    }

    let k = signed.subgroup_order(g, &elems);
    r.expect(
        format!("{id}/faithful"),
        k == pk,
        format!("|K| = {k} in the signed root action, |π(K)| = {pk}"),
    );

    let text = row_relations(d, row);
    let verbatim = failing_relations(g, &b, &gens, &text);
    let rid = format!("{id}/relations");
    match verbatim {
        Ok(bad) if bad.is_empty() => {
            r.push(rid, Status::Pass, format!("all relations hold: {text}"));
        }
        Ok(bad) => {
            let fixed = row.erratum.as_ref().map(|e| {
                failing_relations(g, &b, &gens, &crate::data::join_cells(e))
            });
            match fixed {
                Some(Ok(f)) if f.is_empty() => r.push(
                    rid,
                    Status::Erratum,
                    format!(
                        "printed set fails ({}); corrected set holds; {}",
                        bad.join("; "),
                        row.erratum_note.as_deref().unwrap_or("")
                    ),
                ),
                _ => r.push(rid, Status::Fail, bad.join("; ")),
            }
        }
        Err(e) => r.push(rid, Status::Fail, e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e8_torus_44_is_cyclic_times_two() {
        let data = Dataset::embedded();
        let opts = Options {
            only: Some(44),
            ..Options::default()
        };
        let r = complements(&data, CartanType::E8, &opts);
        assert!(r.ok(), "{}", r.to_markdown());
        assert!(r.checks.iter().any(|c| c.id.ends_with("/relations") && c.status == Status::Pass));
    }
}
