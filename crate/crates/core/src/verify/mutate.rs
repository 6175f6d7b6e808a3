//! Seeded corruption of the transcribed data: toggling one `h_i` in a stored
//! lift, or moving one relation exponent by one. Each corrupted dataset is fed
//! to the command that owns the row, restricted to that row, and the mutation
//! counts as detected when that command reports a failure.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::common::Options;
use super::{complements, lifts, nonsplit, prose, Report, Status};
use crate::data::Dataset;
use crate::rootsys::CartanType;
use crate::tits::Isogeny;

#[derive(Clone, Debug)]
pub enum Target {
    Table1Lift(usize),
    Table1Ww0Lift(usize),
    NonsplitLift(CartanType, usize),
    SpecialLift(usize),
    ComplementRelations(CartanType, usize),
    ProseRelations(usize),
    SpecialRelations(usize),
}

#[derive(Clone, Debug)]
pub struct Mutation {
    pub target: Target,
    pub before: String,
    pub after: String,
}

fn lift_targets(d: &Dataset) -> Vec<Target> {
    let mut t = Vec::new();
    for l in &d.e7.lifts {
        t.push(Target::Table1Lift(l.index));
        if l.ww0_lift.is_some() {
            t.push(Target::Table1Ww0Lift(l.index));
        }
    }
    for (kind, k) in [(CartanType::E7, &d.e7), (CartanType::E8, &d.e8)] {
        t.extend(k.nonsplit.iter().map(|n| Target::NonsplitLift(kind, n.index)));
    }
    t.extend(d.e8.special.iter().map(|s| Target::SpecialLift(s.index)));
    t
}

fn relation_targets(d: &Dataset) -> Vec<Target> {
    let mut t = Vec::new();
    for (kind, k) in [(CartanType::E7, &d.e7), (CartanType::E8, &d.e8)] {
        for c in &k.complements {
            if c.same_as.is_none() && !c.odd && !exponents(&c.relation_text()).is_empty() {
                t.push(Target::ComplementRelations(kind, c.index));
            }
        }
    }
    t.extend(d.e7.prose.iter().map(|p| Target::ProseRelations(p.index)));
    t.extend(d.e8.special.iter().map(|s| Target::SpecialRelations(s.index)));
    t
}

/// Byte ranges of the non-negative integer exponents after `^`.
pub fn exponents(s: &str) -> Vec<(usize, usize)> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'^' {
            let mut j = i + 1;
            let braced = j < b.len() && b[j] == b'{';
            if braced {
                j += 1;
            }
            let start = j;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
                if !braced {
                    break;
                }
            }
            if j > start {
                out.push((start, j));
            }
            i = j;
        } else {
            i += 1;
        }
    }
    out
}

/// Moves one exponent of `s` by `±1`, keeping it at least 1.
pub fn shift_exponent(s: &str, rng: &mut impl Rng) -> Option<String> {
    let spots = exponents(s);
    let &(a, b) = spots.choose(rng)?;
    let k: i64 = s[a..b].parse().ok()?;
    let k2 = if k <= 1 || rng.gen_bool(0.5) { k + 1 } else { k - 1 };
    let body = if k2 >= 10 && s.as_bytes()[a - 1] != b'{' {
        format!("{{{k2}}}")
    } else {
        k2.to_string()
    };
    Some(format!("{}{}{}", &s[..a], body, &s[b..]))
}

/// Toggles `h_i` at the front of a word, a sign change in one coordinate.
pub fn flip_sign(s: &str, rank: usize, rng: &mut impl Rng) -> String {
    let i = rng.gen_range(1..=rank);
    if s == "1" {
        format!("h_{i}")
    } else {
        format!("h_{i}{s}")
    }
}

/// Applies a random mutation of the given kind to a copy of `d`.
pub fn mutate(d: &Dataset, lift: bool, rng: &mut impl Rng) -> (Dataset, Mutation) {
    let mut m = d.clone();
    loop {
        let targets = if lift { lift_targets(d) } else { relation_targets(d) };
        let target = targets.choose(rng).unwrap().clone();
        let slot: Option<&mut String> = match &target {
            Target::Table1Lift(i) => m.e7.lifts.iter_mut().find(|l| l.index == *i).map(|l| &mut l.lift),
            Target::Table1Ww0Lift(i) => m
                .e7
                .lifts
                .iter_mut()
                .find(|l| l.index == *i)
                .and_then(|l| l.ww0_lift.as_mut()),
            Target::NonsplitLift(k, i) => {
                let kd = if *k == CartanType::E7 { &mut m.e7 } else { &mut m.e8 };
                kd.nonsplit.iter_mut().find(|n| n.index == *i).map(|n| &mut n.lift)
            }
            Target::SpecialLift(i) => m.e8.special.iter_mut().find(|s| s.index == *i).map(|s| &mut s.lift),
            Target::ProseRelations(i) => m.e7.prose.iter_mut().find(|p| p.index == *i).map(|p| &mut p.relations),
            Target::SpecialRelations(i) => {
                m.e8.special.iter_mut().find(|s| s.index == *i).map(|s| &mut s.relations)
            }
            Target::ComplementRelations(k, i) => {
                let kd = if *k == CartanType::E7 { &mut m.e7 } else { &mut m.e8 };
                let row = kd.complements.iter_mut().find(|c| c.index == *i).unwrap();
                // The corrected set is the one that decides the row when present.
                let cells = row.erratum.as_mut().unwrap_or(&mut row.relations);
                let with: Vec<usize> = (0..cells.len()).filter(|&j| !exponents(&cells[j]).is_empty()).collect();
                with.choose(rng).map(|&j| &mut cells[j])
            }
        };
        let Some(slot) = slot else { continue };
        let before = slot.clone();
        let rank = match target {
            Target::Table1Lift(_) | Target::Table1Ww0Lift(_) => 7,
            Target::NonsplitLift(k, _) => k.rank(),
            _ => 8,
        };
        let after = if lift {
            Some(flip_sign(&before, rank, rng))
        } else {
            shift_exponent(&before, rng)
        };
        let Some(after) = after else { continue };
        *slot = after.clone();
        return (m, Mutation { target, before, after });
    }
}

/// Runs the command that owns the mutated row, restricted to that row.
pub fn rerun(d: &Dataset, t: &Target, seed: u64) -> Report {
    let opts = |i: usize| Options {
        seed,
        only: Some(i),
    };
    match *t {
        Target::Table1Lift(i) | Target::Table1Ww0Lift(i) => {
            lifts::lifts(d, CartanType::E7, Isogeny::Sc, &opts(i))
        }
        Target::NonsplitLift(k, i) => lifts::lifts(d, k, Isogeny::Ad, &opts(i)),
        Target::SpecialLift(i) | Target::SpecialRelations(i) => nonsplit::nonsplit(d, CartanType::E8, &opts(i)),
        Target::ComplementRelations(k, i) => complements::complements(d, k, &opts(i)),
        Target::ProseRelations(i) => prose::prose(d, &[5, 7], &opts(i)),
    }
}

/// Detection counts `(lift, relation)`, each as `(detected, tried)`.
pub fn detection(r: &Report) -> [(usize, usize); 2] {
    let mut out = [(0, 0); 2];
    for c in r.checks.iter().filter(|c| c.id.starts_with("mutate/") && c.id[7..].parse::<usize>().is_ok()) {
        let slot = usize::from(!c.detail.starts_with("lift"));
        out[slot].1 += 1;
        out[slot].0 += usize::from(c.status == Status::Pass);
    }
    out
}

pub fn mutations(data: &Dataset, count: usize, seed: u64) -> Report {
    let mut r = Report::new("mutate", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..count {
        let lift = k % 2 == 0;
        let (d, m) = mutate(data, lift, &mut rng);
        let rep = rerun(&d, &m.target, seed);
        let caught = !rep.ok();
        let first = rep.failures().next().map(|c| c.id.clone()).unwrap_or_default();
        let outcome = match (caught, lift) {
            (true, _) => format!("detected at {first}"),
            (false, true) => "not detected: the mutated word passes every lift check, so it is another lift of the same order".into(),
            (false, false) => "not detected".into(),
        };
        r.push(
            format!("mutate/{k}"),
            if caught { Status::Pass } else { Status::Fail },
            format!(
                "{} {:?}: `{}` -> `{}`; {outcome}",
                if lift { "lift" } else { "relation" },
                m.target,
                m.before,
                m.after
            ),
        );
    }
    let [(ld, lt), (rd, rt)] = detection(&r);
    r.expect(
        "mutate/rate",
        ld + rd == count,
        format!("{}/{count} detected: lift sign flips {ld}/{lt}, relation exponents {rd}/{rt}", ld + rd),
    );
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_shift() {
        assert_eq!(exponents("a^6=b^{10}=(bc)^3"), vec![(2, 3), (7, 9), (16, 17)]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let s = shift_exponent("a^9=1", &mut rng).unwrap();
            assert!(s == "a^8=1" || s == "a^{10}=1", "{s}");
        }
    }
}
