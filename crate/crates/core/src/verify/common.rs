//! Helpers shared by the verification commands.

use std::collections::BTreeMap;

use crate::group::Group;
use crate::permgroup::{centralizer_order_backtrack, conjugator_backtrack, Conjugacy};
use crate::rootsys::{parse_weyl_word, RootSystem, WeylElement};
use crate::tits::{TitsElement, TitsGroup};
use crate::words::{parse_definitions, Word};

/// Search-node budget for Weyl-group backtracks.
pub const BUDGET: u64 = 50_000_000;

/// Options shared by every command.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub seed: u64,
    /// Restrict to one table row.
    pub only: Option<usize>,
}

impl Options {
    pub fn wants(&self, index: usize) -> bool {
        self.only.is_none_or(|i| i == index)
    }
}

pub fn weyl(sys: &RootSystem, s: &str) -> Result<WeylElement, String> {
    let ks = parse_weyl_word(s)?;
    if let Some(&k) = ks.iter().find(|&&k| k == 0 || k > sys.num_positive()) {
        return Err(format!("root index {k} out of range in `{s}`"));
    }
    Ok(sys.word(&ks))
}

/// `n_{k_1} ... n_{k_m}` for the listed `w_{k_1} ... w_{k_m}`.
pub fn natural_preimage(g: &TitsGroup, rep: &str) -> Result<TitsElement, String> {
    let ks = parse_weyl_word(rep)?;
    Ok(g.n_word(&ks))
}

/// Conjugacy in `W`, `None` if undecided within the budget.
pub fn conjugate(sys: &RootSystem, a: &WeylElement, b: &WeylElement) -> Option<bool> {
    match conjugator_backtrack(sys, a, b, BUDGET) {
        Conjugacy::Equal | Conjugacy::Conjugate(_) => Some(true),
        Conjugacy::NotConjugate => Some(false),
        Conjugacy::Undecided => None,
    }
}

pub fn centralizer_order(sys: &RootSystem, w: &WeylElement) -> Option<u128> {
    centralizer_order_backtrack(sys, w, BUDGET)
}

/// Named Tits elements, bound in the order they are defined.
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    pub values: BTreeMap<char, TitsElement>,
    /// Names in order of first definition.
    pub order: Vec<char>,
}

impl Bindings {
    pub fn with(name: char, e: TitsElement) -> Self {
        let mut b = Bindings::default();
        b.values.insert(name, e);
        b.order.push(name);
        b
    }

    pub fn eval(&self, g: &TitsGroup, w: &Word) -> Result<TitsElement, String> {
        g.eval_word(w, &mut |c| {
            self.values
                .get(&c)
                .copied()
                .ok_or_else(|| format!("unbound name `{c}`"))
        })
    }

    pub fn eval_str(&self, g: &TitsGroup, s: &str) -> Result<TitsElement, String> {
        self.eval(g, &Word::parse(s)?)
    }

    /// Binds a definition list such as `a=x=h_4n, a=x, b=n_0`. A name may be
    /// defined twice only with the same value.
    pub fn define(&mut self, g: &TitsGroup, text: &str) -> Result<(), String> {
        for def in parse_definitions(text)? {
            let v = self.eval(g, &def.expr)?;
            for c in def.names {
                match self.values.get(&c) {
                    Some(old) if !g.eq(old, &v) => {
                        return Err(format!("`{c}` redefined inconsistently in `{}`", def.text))
                    }
                    Some(_) => {}
                    None => {
                        self.values.insert(c, v);
                        self.order.push(c);
                    }
                }
            }
        }
        Ok(())
    }
}

/// Parses a comma-separated list of odd `q`.
pub fn parse_qs(s: &str) -> Result<Vec<i128>, String> {
    s.split(',')
        .map(|t| {
            let q: i128 = t.trim().parse().map_err(|_| format!("bad q `{t}`"))?;
            if q < 3 || q % 2 == 0 {
                return Err(format!("q = {q} must be odd and at least 3"));
            }
            Ok(q)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CartanType;
    use crate::tits::Isogeny;

    #[test]
    fn redefinition_must_agree() {
        let g = TitsGroup::new(CartanType::E7, Isogeny::Ad);
        let n = natural_preimage(&g, "w_1w_2").unwrap();
        let mut b = Bindings::with('n', n);
        b.define(&g, "a=x=h_4n, a=x, b=n_0").unwrap();
        assert_eq!(b.order, vec!['n', 'a', 'x', 'b']);
        assert!(b.define(&g, "a=n_0").is_err());
    }
}
