//! Tori whose complements are built from torus elements over `F_{q^k}`:
//! concrete instantiation at sample `q`, checking membership in `N̄_{σn}`,
//! every relation, and the order of the generated group.

use std::collections::{BTreeMap, HashSet, VecDeque};

use super::common::{conjugate, weyl, Bindings, Options};
use super::{Report, Status};
use crate::data::{Dataset, Param, Prose, ProseGenerator};
use crate::group::Group;
use crate::rootsys::{CartanType, WeylElement};
use crate::tits::{Isogeny, TitsElement, TitsGroup};
use crate::torus::{ConcreteNormalizer, FieldModel, NormElem};
use crate::words::{parse_relations, Word};

/// Whether a `q%m==r` condition holds (no condition always holds).
pub fn condition(when: Option<&str>, q: i128) -> Result<bool, String> {
    let Some(s) = when else { return Ok(true) };
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (lhs, rhs) = t.split_once("==").ok_or_else(|| format!("bad condition `{s}`"))?;
    let m = lhs
        .strip_prefix("q%")
        .and_then(|m| m.parse::<i128>().ok())
        .ok_or_else(|| format!("bad condition `{s}`"))?;
    let r: i128 = rhs.parse().map_err(|_| format!("bad condition `{s}`"))?;
    Ok(q.rem_euclid(m) == r)
}

fn param_equation(p: &Param, f: &FieldModel) -> Result<(i128, i128), String> {
    let q = f.q;
    let d = match p.power.as_str() {
        "q+1" => q + 1,
        "q-1" => q - 1,
        s => s.parse().map_err(|_| format!("bad power `{s}`"))?,
    };
    let target = match p.value.as_str() {
        "-1" => f.minus_one(),
        "1" => 0,
        "(-1)^{(q+1)/2}" => {
            if ((q + 1) / 2) % 2 == 0 {
                0
            } else {
                f.minus_one()
            }
        }
        s => return Err(format!("bad value `{s}`")),
    };
    Ok((d, target))
}

/// The smallest field `F_{q^k}` in which every active parameter exists,
/// with one solution for each.
pub fn instantiate(params: &[Param], q: i128) -> Result<(FieldModel, BTreeMap<char, i128>), String> {
    let active: Vec<&Param> = params
        .iter()
        .filter(|p| condition(p.when.as_deref(), q).unwrap_or(false))
        .collect();
    'k: for k in 1..=12 {
        let f = FieldModel::new(q, k);
        let mut vals = BTreeMap::new();
        for p in &active {
            let (d, t) = param_equation(p, &f)?;
            match f.solve(d, t) {
                Some(e) => {
                    vals.insert(p.name.chars().next().unwrap(), e);
                }
                None => continue 'k,
            }
        }
        return Ok((f, vals));
    }
    Err(format!("no field F_{{{q}^k}}, k <= 12, contains the parameters"))
}

/// Exponent of a signed monomial such as `-ad^6` in the parameters.
pub fn monomial_exponent(s: &str, vals: &BTreeMap<char, i128>, f: &FieldModel) -> Result<i128, String> {
    let m = f.modulus();
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let mut e: i128 = if neg { f.minus_one() } else { 0 };
    if body != "1" {
        let c: Vec<char> = body.chars().collect();
        let mut i = 0;
        while i < c.len() {
            let v = *vals
                .get(&c[i])
                .ok_or_else(|| format!("unknown parameter `{}` in `{s}`", c[i]))?;
            i += 1;
            let mut k = 1i128;
            if c.get(i) == Some(&'^') {
                let start = i + 1;
                let mut j = start;
                while c.get(j).is_some_and(|d| d.is_ascii_digit()) {
                    j += 1;
                }
                k = c[start..j]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| format!("bad exponent in `{s}`"))?;
                i = j;
            }
            e += k * v;
        }
    }
    Ok(e.rem_euclid(m))
}

/// Canonical key of `H u`: signs of `u` folded into `H`, and in adjoint E7
/// the smaller of `H` and `H z` for the central `z`.
fn key(cn: &ConcreteNormalizer, e: &NormElem) -> (Vec<i128>, WeylElement) {
    let m = cn.field.modulus();
    let x: Vec<i128> = e
        .x
        .iter()
        .zip(cn.signs(e.u.h))
        .map(|(a, b)| (a + b).rem_euclid(m))
        .collect();
    if cn.g.isogeny == Isogeny::Ad && cn.g.kind() == CartanType::E7 {
        let xz: Vec<i128> = x
            .iter()
            .zip(cn.signs(0b101_0010))
            .map(|(a, b)| (a + b).rem_euclid(m))
            .collect();
        return (x.min(xz), e.u.w);
    }
    (x, e.u.w)
}

/// `(|K|, |π(K)|)` by breadth-first closure, `None` past `bound` elements.
pub fn enumerate(cn: &ConcreteNormalizer, gens: &[NormElem], bound: usize) -> Option<(usize, usize)> {
    let mut seen = HashSet::new();
    let mut images = HashSet::new();
    let mut queue = VecDeque::new();
    let id = cn.identity();
    seen.insert(key(cn, &id));
    images.insert(id.u.w);
    queue.push_back(id);
    while let Some(a) = queue.pop_front() {
        for g in gens {
            let b = cn.mul(&a, g);
            if seen.insert(key(cn, &b)) {
                if seen.len() > bound {
                    return None;
                }
                images.insert(b.u.w);
                queue.push_back(b);
            }
        }
    }
    Some((seen.len(), images.len()))
}

pub fn prose(data: &Dataset, qs: &[i128], opts: &Options) -> Report {
    let mut r = Report::new("prose E7", opts.seed);
    let g = TitsGroup::new(CartanType::E7, Isogeny::Ad);
    for p in data.e7.prose.iter().filter(|p| opts.wants(p.index)) {
        let id = format!("prose/E7ad/{}", p.index);
        let Some(row) = data.e7.torus(p.index) else {
            r.push(id, Status::Fail, "torus row missing");
            continue;
        };
        let n = match g.parse(&p.n) {
            Ok(n) => n,
            Err(e) => {
                r.push(id, Status::Fail, e);
                continue;
            }
        };
        let x = match &p.x {
            Some(s) => match Bindings::with('n', n).eval_str(&g, s) {
                Ok(x) => x,
                Err(e) => {
                    r.push(format!("{id}/x"), Status::Fail, e);
                    continue;
                }
            },
            None => n,
        };
        class_check(&mut r, &g, &id, p, &g.pi(&x), &row.rep);
        for note in [&p.x_note, &p.note].into_iter().flatten() {
            r.push(format!("{id}/note"), Status::Logged, note.clone());
        }
        let cw = row.centralizer_order.unwrap_or(0) as usize;
        for &q in qs {
            instance(&mut r, &g, &format!("{id}/q{q}"), p, (n, x), q, cw);
        }
    }
    r
}

fn class_check(r: &mut Report, g: &TitsGroup, id: &str, p: &Prose, pi: &WeylElement, table_rep: &str) {
    let table = weyl(&g.sys, table_rep);
    let res = match (&p.rep, table) {
        (Some(rep), Ok(t)) => weyl(&g.sys, rep).map(|w| {
            (
                *pi == w && conjugate(&g.sys, &w, &t) == Some(true),
                format!("π(n) = {rep}, conjugate to {table_rep}"),
            )
        }),
        (None, Ok(t)) => Ok((
            conjugate(&g.sys, pi, &t) == Some(true),
            format!("π(n) conjugate to {table_rep}"),
        )),
        (_, Err(e)) => Err(e),
    };
    match res {
        Ok((ok, d)) => r.expect(format!("{id}/class"), ok, d),
        Err(e) => r.expect(format!("{id}/class"), false, e),
    };
}

fn generator(
    cn: &ConcreteNormalizer,
    b: &Bindings,
    gen: &ProseGenerator,
    vals: &BTreeMap<char, i128>,
) -> Result<NormElem, String> {
    let u = b.eval_str(cn.g, &gen.word)?;
    let x = match &gen.torus {
        Some(t) => t
            .iter()
            .map(|s| monomial_exponent(s, vals, &cn.field))
            .collect::<Result<Vec<_>, _>>()?,
        None => vec![0; cn.g.rank()],
    };
    Ok(cn.mul(&cn.torus(x), &cn.tits(u)))
}

/// One sample `q`; `nx` is `n` (bound in the generator words) and the
/// twisting element `x`.
fn instance(r: &mut Report, g: &TitsGroup, id: &str, p: &Prose, nx: (TitsElement, TitsElement), q: i128, cw: usize) {
    let (n, x) = nx;
    let (field, vals) = match instantiate(&p.params, q) {
        Ok(x) => x,
        Err(e) => {
            r.push(id, Status::Fail, e);
            return;
        }
    };
    let cn = ConcreteNormalizer::new(g, field);
    let b = Bindings::with('n', n);
    let xy = cn.tits(x);
    let mut gens: Vec<(char, NormElem)> = Vec::new();
    let mut outside = Vec::new();
    for gen in &p.generators {
        if !condition(gen.when.as_deref(), q).unwrap_or(false) {
            continue;
        }
        let c = gen.name.chars().next().unwrap();
        match generator(&cn, &b, gen, &vals) {
            Ok(e) => {
                let fixed = cn.is_fixed(&e, &xy);
                let lemma = cn.lemma_membership(&e.x, &e.u, &x);
                if !(fixed && lemma) {
                    outside.push(format!("{c} (fixed {fixed}, criterion {lemma})"));
                }
                gens.push((c, e));
            }
            Err(e) => {
                r.push(id, Status::Fail, e);
                return;
            }
        }
    }
    r.expect(
        format!("{id}/membership"),
        outside.is_empty(),
        if outside.is_empty() {
            format!("{} generators in N_σn over F_{{{q}^{}}}", gens.len(), field.k)
        } else {
            format!("outside N_σn: {}", outside.join(", "))
        },
    );
    let names: Vec<char> = gens.iter().map(|(c, _)| *c).collect();
    match parse_relations(&p.relations, &names) {
        Ok(rels) => {
            let mut bad = Vec::new();
            for rel in &rels {
                let v = rel.word.eval(&cn, &mut |atom| match atom {
                    Word::Name(c) => gens
                        .iter()
                        .find(|(x, _)| x == c)
                        .map(|(_, e)| e.clone())
                        .ok_or_else(|| format!("unbound `{c}`")),
                    other => Ok(cn.tits(g.eval_word(other, &mut |c| Err(format!("unbound `{c}`")))?)),
                });
                match v {
                    Ok(v) if cn.is_identity(&v) => {}
                    Ok(_) => bad.push(rel.text.clone()),
                    Err(e) => bad.push(e),
                }
            }
            r.expect(
                format!("{id}/relations"),
                bad.is_empty(),
                if bad.is_empty() {
                    format!("{} relators hold", rels.len())
                } else {
                    format!("failing: {}", bad.join(", "))
                },
            );
        }
        Err(e) => {
            r.push(format!("{id}/relations"), Status::Fail, e);
        }
    }
    let elems: Vec<NormElem> = gens.into_iter().map(|(_, e)| e).collect();
    match enumerate(&cn, &elems, 2 * cw + 1) {
        Some((k, pk)) => r.expect(
            format!("{id}/order"),
            k == pk && pk == cw,
            format!("|K| = {k}, |π(K)| = {pk}, |C_W(w)| = {cw}"),
        ),
        None => r.expect(format!("{id}/order"), false, format!("|K| exceeds {}", 2 * cw + 1)),
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conditions() {
        assert!(condition(Some("q%4==3"), 7).unwrap());
        assert!(!condition(Some("q%4==3"), 5).unwrap());
        assert!(condition(None, 5).unwrap());
    }

    #[test]
    fn monomials() {
        let f = FieldModel::new(5, 1);
        let vals: BTreeMap<char, i128> = [('a', 1), ('d', 3)].into_iter().collect();
        assert_eq!(monomial_exponent("-ad^2", &vals, &f).unwrap(), (2 + 1 + 6) % 4);
        assert_eq!(monomial_exponent("1", &vals, &f).unwrap(), 0);
        assert_eq!(monomial_exponent("-1", &vals, &f).unwrap(), 2);
    }
}
