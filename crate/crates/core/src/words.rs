//! Words in the notation used for Tits group elements and relations:
//! `h_2n_1n_4`, `n_{53}`, `h3n1`, `x^2n_0`, `(bd)^3`, `[a,b]`, `c^{-1}a(d^{-1}c^{-1})^2`.
//!
//! `h_k` is `h_{r_k}(-1)`, `n_k` the standard preimage of the reflection in
//! `r_k`, `n_0` the central lift of `w_0`, and any other lowercase letter
//! (including a bare `n`) a named element supplied at evaluation time.

use std::fmt;

use crate::group::Group;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    One,
    H(usize),
    N(usize),
    Name(char),
    Seq(Vec<Word>),
    Pow(Box<Word>, i64),
    Comm(Box<Word>, Box<Word>),
}

impl Word {
    pub fn parse(s: &str) -> Result<Word, String> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars == ['1'] {
            return Ok(Word::One);
        }
        let mut p = Parser { c: &chars, i: 0, src: s };
        let w = p.seq()?;
        if p.i != chars.len() {
            return Err(format!("trailing `{}` in `{s}`", chars[p.i..].iter().collect::<String>()));
        }
        Ok(w)
    }

    pub fn eval<G: Group>(
        &self,
        g: &G,
        atom: &mut dyn FnMut(&Word) -> Result<G::Elem, String>,
    ) -> Result<G::Elem, String> {
        Ok(match self {
            Word::One => g.identity(),
            Word::H(_) | Word::N(_) | Word::Name(_) => atom(self)?,
            Word::Seq(v) => {
                let mut acc = g.identity();
                for w in v {
                    acc = g.mul(&acc, &w.eval(g, atom)?);
                }
                acc
            }
            Word::Pow(b, e) => g.pow(&b.eval(g, atom)?, *e),
            Word::Comm(a, b) => g.comm(&a.eval(g, atom)?, &b.eval(g, atom)?),
        })
    }

    /// All named letters used in the word.
    pub fn names(&self) -> Vec<char> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_names(&self, out: &mut Vec<char>) {
        match self {
            Word::Name(c) => out.push(*c),
            Word::Seq(v) => v.iter().for_each(|w| w.collect_names(out)),
            Word::Pow(b, _) => b.collect_names(out),
            Word::Comm(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            _ => {}
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn idx(k: usize) -> String {
            if k < 10 {
                format!("{k}")
            } else {
                format!("{{{k}}}")
            }
        }
        match self {
            Word::One => write!(f, "1"),
            Word::H(k) => write!(f, "h_{}", idx(*k)),
            Word::N(k) => write!(f, "n_{}", idx(*k)),
            Word::Name(c) => write!(f, "{c}"),
            Word::Seq(v) => v.iter().try_for_each(|w| write!(f, "{w}")),
            Word::Pow(b, e) => {
                let base = match **b {
                    Word::Seq(_) => format!("({b})"),
                    _ => b.to_string(),
                };
                if (0..10).contains(e) {
                    write!(f, "{base}^{e}")
                } else {
                    write!(f, "{base}^{{{e}}}")
                }
            }
            Word::Comm(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

struct Parser<'a> {
    c: &'a [char],
    i: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.c.get(self.i).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T, String> {
        Err(format!("{msg} at position {} in `{}`", self.i, self.src))
    }

    fn seq(&mut self) -> Result<Word, String> {
        let mut items = Vec::new();
        while let Some(ch) = self.peek() {
            if ch == ')' || ch == ']' || ch == ',' || ch == '=' {
                break;
            }
            let w = self.factor()?;
            if w != Word::One {
                items.push(w);
            }
        }
        Ok(match items.len() {
            0 => Word::One,
            1 => items.pop().unwrap(),
            _ => Word::Seq(items),
        })
    }

    fn factor(&mut self) -> Result<Word, String> {
        let base = self.primary()?;
        if self.peek() == Some('^') {
            self.i += 1;
            let e = self.exponent()?;
            return Ok(Word::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Word, String> {
        match self.peek() {
            Some('(') => {
                self.i += 1;
                let w = self.seq()?;
                if self.peek() != Some(')') {
                    return self.err("expected `)`");
                }
                self.i += 1;
                Ok(w)
            }
            Some('[') => {
                self.i += 1;
                let a = self.seq()?;
                if self.peek() != Some(',') {
                    return self.err("expected `,` in commutator");
                }
                self.i += 1;
                let b = self.seq()?;
                if self.peek() != Some(']') {
                    return self.err("expected `]`");
                }
                self.i += 1;
                Ok(Word::Comm(Box::new(a), Box::new(b)))
            }
            Some('h') => {
                self.i += 1;
                match self.index()? {
                    Some(k) if k > 0 => Ok(Word::H(k)),
                    _ => self.err("`h` needs a positive root index"),
                }
            }
            Some('n') => {
                self.i += 1;
                match self.index()? {
                    Some(k) => Ok(Word::N(k)),
                    None => Ok(Word::Name('n')),
                }
            }
            Some(ch) if ch.is_ascii_lowercase() && ch != 'w' => {
                self.i += 1;
                Ok(Word::Name(ch))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end"),
        }
    }

    /// `_k`, `_{k}`, or bare digits directly after `h`/`n`.
    fn index(&mut self) -> Result<Option<usize>, String> {
        let underscore = self.peek() == Some('_');
        if underscore {
            self.i += 1;
        }
        let braced = self.peek() == Some('{');
        if braced {
            self.i += 1;
        }
        let start = self.i;
        let max_digits = if underscore && !braced { 1 } else { usize::MAX };
        while self.i - start < max_digits && self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            if underscore || braced {
                return self.err("missing index");
            }
            return Ok(None);
        }
        let k: usize = self.c[start..self.i].iter().collect::<String>().parse().unwrap();
        if braced {
            if self.peek() != Some('}') {
                return self.err("expected `}`");
            }
            self.i += 1;
        }
        Ok(Some(k))
    }

    fn exponent(&mut self) -> Result<i64, String> {
        let braced = self.peek() == Some('{');
        if braced {
            self.i += 1;
        }
        let neg = self.peek() == Some('-');
        if neg {
            self.i += 1;
        }
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
            if !braced {
                break;
            }
        }
        if start == self.i {
            return self.err("missing exponent");
        }
        let v: i64 = self.c[start..self.i].iter().collect::<String>().parse().unwrap();
        if braced {
            if self.peek() != Some('}') {
                return self.err("expected `}` after exponent");
            }
            self.i += 1;
        }
        Ok(if neg { -v } else { v })
    }
}

/// Splits at commas that are not nested in brackets or parentheses.
pub fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    out.push(cur);
    out.into_iter()
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

/// A relator: a word that must evaluate to the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Relator {
    pub text: String,
    pub word: Word,
}

/// Parses a relation list such as `a^6=b^2=[a,b]=1, (bd)^3=1, R(a)`.
/// Every side of an equality chain other than `1` becomes a relator, and
/// `R(a)` expands to `[a, g]` for each other generator `g`.
pub fn parse_relations(s: &str, generators: &[char]) -> Result<Vec<Relator>, String> {
    let mut out = Vec::new();
    for chunk in split_top_level(s) {
        if let Some(inner) = chunk.strip_prefix("R(").and_then(|t| t.strip_suffix(')')) {
            let a: Vec<char> = inner.chars().collect();
            if a.len() != 1 || !generators.contains(&a[0]) {
                return Err(format!("bad shorthand `{chunk}`"));
            }
            for &g in generators.iter().filter(|&&g| g != a[0]) {
                out.push(Relator {
                    text: format!("[{},{}]", a[0], g),
                    word: Word::Comm(Box::new(Word::Name(a[0])), Box::new(Word::Name(g))),
                });
            }
            continue;
        }
        for side in chunk.split('=') {
            let side = side.trim();
            let w = Word::parse(side)?;
            if w != Word::One {
                out.push(Relator {
                    text: side.to_string(),
                    word: w,
                });
            }
        }
    }
    Ok(out)
}

/// A generator definition `a=x=h_4n`: every name in the chain is bound to the
/// final expression (or to an earlier name when the chain is only names).
#[derive(Clone, Debug, PartialEq)]
pub struct Definition {
    pub names: Vec<char>,
    pub expr: Word,
    pub text: String,
}

/// Definitions are separated by commas; a bare space before `x=` also
/// separates them.
pub fn parse_definitions(s: &str) -> Result<Vec<Definition>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut joined = String::new();
    for (i, &ch) in chars.iter().enumerate() {
        let starts_def = chars[i + 1..]
            .iter()
            .skip_while(|c| c.is_whitespace())
            .take(2)
            .copied()
            .collect::<Vec<_>>();
        let prev = chars[..i].iter().rev().find(|c| !c.is_whitespace());
        if ch.is_whitespace()
            && starts_def.len() == 2
            && starts_def[0].is_ascii_lowercase()
            && starts_def[1] == '='
            && prev.is_some_and(|&c| c != ',' && c != '=')
        {
            joined.push(',');
        } else {
            joined.push(ch);
        }
    }
    split_top_level(&joined)
        .into_iter()
        .map(|chunk| {
            let parts: Vec<&str> = chunk.split('=').map(str::trim).collect();
            if parts.len() < 2 {
                return Err(format!("definition `{chunk}` has no `=`"));
            }
            let mut names = Vec::new();
            for p in &parts[..parts.len() - 1] {
                let cs: Vec<char> = p.chars().collect();
                if cs.len() != 1 || !cs[0].is_ascii_lowercase() || cs[0] == 'h' {
                    return Err(format!("bad generator name `{p}` in `{chunk}`"));
                }
                names.push(cs[0]);
            }
            Ok(Definition {
                names,
                expr: Word::parse(parts[parts.len() - 1])?,
                text: chunk.clone(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_paper_forms() {
        assert_eq!(
            Word::parse("h_2n_1n_{53}").unwrap(),
            Word::Seq(vec![Word::H(2), Word::N(1), Word::N(53)])
        );
        assert_eq!(
            Word::parse("h3n1").unwrap(),
            Word::Seq(vec![Word::H(3), Word::N(1)])
        );
        assert_eq!(
            Word::parse("h_4n").unwrap(),
            Word::Seq(vec![Word::H(4), Word::Name('n')])
        );
        assert_eq!(
            Word::parse("n_0n").unwrap(),
            Word::Seq(vec![Word::N(0), Word::Name('n')])
        );
        assert_eq!(
            Word::parse("x^2n_0").unwrap(),
            Word::Seq(vec![Word::Pow(Box::new(Word::Name('x')), 2), Word::N(0)])
        );
        let w = Word::parse("c^{-1}a(d^{-1}c^{-1})^2d^{-1}").unwrap();
        assert_eq!(w.names(), vec!['a', 'c', 'd']);
        assert!(Word::parse("h_").is_err());
        assert!(Word::parse("a)").is_err());
    }

    #[test]
    fn underscore_takes_one_digit() {
        assert!(Word::parse("n_53").is_err());
        assert!(Word::parse("n_51").is_err());
        assert!(Word::parse("a^10").is_err());
        assert_eq!(Word::parse("n53").unwrap(), Word::N(53));
    }

    #[test]
    fn relation_lists() {
        let rels = parse_relations("a^6=b^2=[a,b]=1, R(a)", &['a', 'b', 'c']).unwrap();
        let texts: Vec<&str> = rels.iter().map(|r| r.text.as_str()).collect();
        assert_eq!(texts, vec!["a^6", "b^2", "[a,b]", "[a,b]", "[a,c]"]);
        let defs = parse_definitions("a=x=h_4n, b=n_0, c=h_{120}n_8").unwrap();
        assert_eq!(defs[0].names, vec!['a', 'x']);
        assert_eq!(defs[2].expr, Word::Seq(vec![Word::H(120), Word::N(8)]));
        let defs = parse_definitions("d=h_2n_{69} e=h_{120}n_8").unwrap();
        assert_eq!(defs.len(), 2);
        assert_eq!(defs[1].names, vec!['e']);
    }
}
