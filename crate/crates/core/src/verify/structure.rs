//! Orders of centralizer structure strings such as
//! `\mathbb{Z}_2\times(((\mathbb{Z}_2^5):A_6):\mathbb{Z}_2)` or
//! `(2.\Oo_8^+(2)):2`.
//!
//! Direct, semidirect and non-split products (`\times`, `:`, `.`) all multiply
//! orders, so grouping is irrelevant and the order is the product of the atom
//! orders. Parenthesis balance is reported separately.

pub struct StructureOrder {
    pub order: u128,
    pub balanced: bool,
}

pub fn structure_order(s: &str) -> Result<StructureOrder, String> {
    let t: String = s
        .replace("\\mathbb{Z}", "Z")
        .replace('$', "")
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    let balanced = {
        let mut depth = 0i32;
        let mut ok = true;
        for c in t.chars() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    ok &= depth >= 0;
                }
                _ => {}
            }
        }
        ok && depth == 0
    };
    if let Some(rest) = t.strip_prefix("agroupoforder") {
        return Ok(StructureOrder {
            order: prime_power_product(rest)?,
            balanced,
        });
    }
    let c: Vec<char> = t.chars().collect();
    let mut i = 0;
    let mut order: u128 = 1;
    let named: [(&str, u128); 7] = [
        ("\\SL_2(3)", 24),
        ("\\SL_2(5)", 120),
        ("\\Oo_7(2)", 1_451_520),
        ("\\Oo_8^+(2)", 174_182_400),
        ("\\Oo_5(3)", 25_920),
        ("D_8", 8),
        ("Q_8", 8),
    ];
    'outer: while i < c.len() {
        let rest: String = c[i..].iter().collect();
        for (name, o) in named {
            if rest.starts_with(name) {
                order *= o;
                i += name.chars().count();
                continue 'outer;
            }
        }
        if rest.starts_with("\\times") {
            i += "\\times".len();
            continue;
        }
        match c[i] {
            '(' | ')' | ':' | '.' => i += 1,
            'Z' | 'S' | 'A' => {
                let kind = c[i];
                i += 1;
                if c.get(i) != Some(&'_') {
                    return Err(format!("expected `_` after {kind} in `{s}`"));
                }
                i += 1;
                let (n, next) = subscript(&c, i, s)?;
                i = next;
                let mut o = match kind {
                    'Z' => n,
                    'S' => factorial(n),
                    _ => factorial(n) / 2,
                };
                if c.get(i) == Some(&'^') {
                    let (e, next) = subscript(&c, i + 1, s)?;
                    i = next;
                    o = o.pow(e as u32);
                }
                order *= o;
            }
            d if d.is_ascii_digit() => {
                let (n, next) = subscript(&c, i, s)?;
                i = next;
                order *= n;
            }
            other => return Err(format!("unexpected `{other}` in `{s}`")),
        }
    }
    Ok(StructureOrder { order, balanced })
}

/// A number written as `k` (one digit) or `{k}` starting at `i`.
fn subscript(c: &[char], mut i: usize, s: &str) -> Result<(u128, usize), String> {
    let braced = c.get(i) == Some(&'{');
    if braced {
        i += 1;
    }
    let start = i;
    while c.get(i).is_some_and(|d| d.is_ascii_digit()) {
        i += 1;
        if !braced {
            break;
        }
    }
    if start == i {
        return Err(format!("missing number in `{s}`"));
    }
    let n: u128 = c[start..i].iter().collect::<String>().parse().unwrap();
    if braced {
        if c.get(i) != Some(&'}') {
            return Err(format!("expected `}}` in `{s}`"));
        }
        i += 1;
    }
    Ok((n, i))
}

fn prime_power_product(t: &str) -> Result<u128, String> {
    let mut out = 1u128;
    for part in t.split("\\cdot") {
        let c: Vec<char> = part.chars().collect();
        let (p, i) = subscript(&c, 0, t)?;
        let e = if c.get(i) == Some(&'^') {
            subscript(&c, i + 1, t)?.0
        } else {
            1
        };
        out *= p.pow(e as u32);
    }
    Ok(out)
}

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atoms_and_products() {
        let o = |s: &str| structure_order(s).unwrap().order;
        assert_eq!(o("2\\times \\Oo_7(2)"), 2_903_040);
        assert_eq!(o("(2.\\Oo_8^+(2)):2"), 696_729_600);
        assert_eq!(o("\\mathbb{Z}_6\\times S_6"), 4320);
        assert_eq!(o("\\mathbb{Z}_2\\times(((\\mathbb{Z}_2^5):A_6):\\mathbb{Z}_2)"), 46080);
        assert_eq!(o("\\mathbb{Z}_{12}\\times \\SL_2(3)"), 288);
        assert_eq!(o("a group of order $2^{13}\\cdot 3^3$"), 8192 * 27);
        assert_eq!(o("a group of order 2^{11}\\cdot3"), 2048 * 3);
        assert!(!structure_order("\\mathbb{Z}_3\\times((S_3):\\mathbb{Z}_2").unwrap().balanced);
    }
}
