//! Integer polynomials in `q` and a parser for torus order strings such as
//! `(q-1)^5\times(q^2-1)` or `q^8+q^7-q^5-q^4-q^3+q+1`.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly(Vec<i128>);

impl Poly {
    pub fn new(mut c: Vec<i128>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly(c)
    }

    pub fn constant(c: i128) -> Self {
        Poly::new(vec![c])
    }

    pub fn q() -> Self {
        Poly(vec![0, 1])
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&0) + o.0.get(i).unwrap_or(&0))
                .collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.0.is_empty() || o.0.is_empty() {
            return Poly::default();
        }
        let mut c = vec![0i128; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::constant(1), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, q: i128) -> i128 {
        self.0.iter().rev().fold(0, |acc, c| acc * q + c)
    }

    /// `p(-q)`.
    pub fn negate_variable(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { *c })
                .collect(),
        )
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            let mono = match i {
                0 => format!("{a}"),
                1 if a == 1 => "q".to_string(),
                1 => format!("{a}q"),
                _ if a == 1 => format!("q^{i}"),
                _ => format!("{a}q^{i}"),
            };
            write!(f, "{sign}{mono}")?;
            first = false;
        }
        Ok(())
    }
}

/// A parsed order string: its value and the cyclic factors named by the
/// top-level `\times` decomposition (`(P)^k` at top level counts `k` times).
#[derive(Clone, Debug)]
pub struct OrderString {
    pub text: String,
    pub poly: Poly,
    pub cyclic: Vec<Poly>,
}

pub fn parse_order_string(s: &str) -> Result<OrderString, String> {
    let norm = s.replace("\\times", "×").replace(' ', "");
    let chars: Vec<char> = norm.chars().collect();
    let mut cyclic = Vec::new();
    let mut total = Poly::constant(1);
    for comp in split_times(&chars) {
        let mut p = P { c: &comp, i: 0 };
        let value = p.expr()?;
        if p.i != comp.len() {
            return Err(format!("unexpected `{}` in `{s}`", comp[p.i]));
        }
        // (X)^k with X spanning up to the exponent: k cyclic copies of X.
        let copies = top_level_power(&comp);
        match copies {
            Some((inner, k)) => {
                let mut ip = P { c: &inner, i: 0 };
                let base = ip.expr()?;
                for _ in 0..k {
                    cyclic.push(base.clone());
                }
            }
            None => cyclic.push(value.clone()),
        }
        total = total.mul(&value);
    }
    Ok(OrderString {
        text: s.to_string(),
        poly: total,
        cyclic,
    })
}

fn split_times(c: &[char]) -> Vec<Vec<char>> {
    let mut out = vec![Vec::new()];
    let mut depth = 0;
    for &ch in c {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == '×' && depth == 0 {
            out.push(Vec::new());
        } else {
            out.last_mut().unwrap().push(ch);
        }
    }
    out
}

/// Recognises a component `( ... )^k` whose parenthesised group spans the
/// whole base.
fn top_level_power(c: &[char]) -> Option<(Vec<char>, u32)> {
    if c.first() != Some(&'(') {
        return None;
    }
    let mut depth = 0;
    let mut close = None;
    for (i, &ch) in c.iter().enumerate() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    close = Some(i);
                    break;
                }
            }
            _ => {}
        }
    }
    let close = close?;
    let rest: String = c[close + 1..].iter().collect();
    let exp = rest.strip_prefix('^')?;
    let exp = exp.trim_start_matches('{').trim_end_matches('}');
    let k: u32 = exp.parse().ok()?;
    Some((c[1..close].to_vec(), k))
}

struct P<'a> {
    c: &'a [char],
    i: usize,
}

impl P<'_> {
    fn peek(&self) -> Option<char> {
        self.c.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<Poly, String> {
        let mut acc = Poly::default();
        let mut sign = 1;
        if self.peek() == Some('-') {
            sign = -1;
            self.i += 1;
        } else if self.peek() == Some('+') {
            self.i += 1;
        }
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc.add(&t.neg()) } else { acc.add(&t) };
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => return Ok(acc),
            }
            self.i += 1;
        }
    }

    fn term(&mut self) -> Result<Poly, String> {
        let mut acc = self.factor()?;
        while let Some(ch) = self.peek() {
            if ch == '(' || ch == 'q' || ch.is_ascii_digit() {
                acc = acc.mul(&self.factor()?);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, String> {
        let base = match self.peek() {
            Some('q') => {
                self.i += 1;
                Poly::q()
            }
            Some('(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err("expected `)`".into());
                }
                self.i += 1;
                e
            }
            Some(ch) if ch.is_ascii_digit() => {
                let start = self.i;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.i += 1;
                }
                let v: i128 = self.c[start..self.i].iter().collect::<String>().parse().unwrap();
                Poly::constant(v)
            }
            other => return Err(format!("unexpected {other:?} in order string")),
        };
        if self.peek() == Some('^') {
            self.i += 1;
            let braced = self.peek() == Some('{');
            if braced {
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
                return Err("missing exponent".into());
            }
            let e: u32 = self.c[start..self.i].iter().collect::<String>().parse().unwrap();
            if braced {
                if self.peek() != Some('}') {
                    return Err("expected `}`".into());
                }
                self.i += 1;
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_eval() {
        let o = parse_order_string("(q-1)^5\\times(q^2-1)").unwrap();
        assert_eq!(o.poly.eval(3), 32 * 8);
        assert_eq!(o.cyclic.len(), 6);
        let o = parse_order_string("q^8+q^7-q^5-q^4-q^3+q+1").unwrap();
        assert_eq!(o.cyclic.len(), 1);
        assert_eq!(o.poly.eval(2), 256 + 128 - 32 - 16 - 8 + 2 + 1);
        let o = parse_order_string("(q-1)\\times((q-1)(q^2+1))^2").unwrap();
        assert_eq!(o.cyclic.len(), 3);
        assert_eq!(o.poly.eval(3), 2 * 400);
        let o = parse_order_string("(q-1)(q^6+q^3+1)").unwrap();
        assert_eq!(o.poly.degree(), Some(7));
        assert!(parse_order_string("(q^2+q+1)^2)\\times(q^3-1)").is_err());
    }

    #[test]
    fn minus_q() {
        let p = parse_order_string("(q-1)^2(q^3+1)").unwrap().poly;
        assert_eq!(p.negate_variable().eval(5), p.eval(-5));
    }
}
