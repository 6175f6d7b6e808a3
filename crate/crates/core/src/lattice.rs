//! Exact integer linear algebra on small dense matrices: Smith normal form
//! with unimodular transforms, integer left kernels, Bareiss determinants and
//! characteristic polynomials. Arithmetic is checked `i128`.

use thiserror::Error;

pub type IMat = Vec<Vec<i128>>;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("integer overflow in exact linear algebra")]
pub struct Overflow;

fn ck(v: Option<i128>) -> Result<i128, Overflow> {
    v.ok_or(Overflow)
}

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

pub fn matmul(a: &IMat, b: &IMat) -> Result<IMat, Overflow> {
    let (r, k, c) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = vec![vec![0i128; c]; r];
    for i in 0..r {
        for t in 0..k {
            if a[i][t] == 0 {
                continue;
            }
            for j in 0..c {
                out[i][j] = ck(out[i][j].checked_add(ck(a[i][t].checked_mul(b[t][j]))?))?;
            }
        }
    }
    Ok(out)
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, each diagonal
/// entry dividing the next; zeros come last.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<i128>,
    pub u: IMat,
    pub v: IMat,
    pub rank: usize,
}

pub fn smith(m: &IMat) -> Result<Smith, Overflow> {
    reduce(m, true)
}

/// Smith reduction; the transforms `u`, `v` are kept only if `track`, since
/// they grow much faster than the diagonal.
fn reduce(m: &IMat, track: bool) -> Result<Smith, Overflow> {
    let r = m.len();
    let c = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let mut u = if track { identity(r) } else { Vec::new() };
    let mut v = if track { identity(c) } else { Vec::new() };
    let mut t = 0;
    while t < r.min(c) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        if track {
            u.swap(t, pi);
        }
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        let p = a[t][t];
        let mut clean = true;
        for i in t + 1..r {
            let q = a[i][t].div_euclid(p);
            if q != 0 {
                row_axpy(&mut a, i, t, -q)?;
                if track {
                    row_axpy(&mut u, i, t, -q)?;
                }
            }
            if a[i][t] != 0 {
                clean = false;
            }
        }
        for j in t + 1..c {
            let q = a[t][j].div_euclid(p);
            if q != 0 {
                col_axpy(&mut a, j, t, -q)?;
                if track {
                    col_axpy(&mut v, j, t, -q)?;
                }
            }
            if a[t][j] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| a[i][j] % p != 0));
        if let Some(i) = bad {
            row_axpy(&mut a, t, i, 1)?;
            if track {
                row_axpy(&mut u, t, i, 1)?;
            }
            continue;
        }
        if p < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            if track {
                for x in u[t].iter_mut() {
                    *x = -*x;
                }
            }
        }
        t += 1;
    }
    let diag: Vec<i128> = (0..r.min(c)).map(|i| a[i][i]).collect();
    let rank = diag.iter().filter(|&&d| d != 0).count();
    Ok(Smith { diag, u, v, rank })
}

fn row_axpy(a: &mut IMat, dst: usize, src: usize, q: i128) -> Result<(), Overflow> {
    for j in 0..a[dst].len() {
        let add = ck(a[src][j].checked_mul(q))?;
        a[dst][j] = ck(a[dst][j].checked_add(add))?;
    }
    Ok(())
}

fn col_axpy(a: &mut IMat, dst: usize, src: usize, q: i128) -> Result<(), Overflow> {
    for row in a.iter_mut() {
        let add = ck(row[src].checked_mul(q))?;
        row[dst] = ck(row[dst].checked_add(add))?;
    }
    Ok(())
}

/// A basis of `{v ∈ Z^r : v M = 0}`.
pub fn left_kernel(m: &IMat) -> Result<Vec<Vec<i128>>, Overflow> {
    let s = smith(m)?;
    Ok(s.u[s.rank..].to_vec())
}

/// Nontrivial invariant factors (absolute values, ones dropped; zero for a
/// free part).
pub fn invariant_factors(m: &IMat) -> Result<Vec<i128>, Overflow> {
    let s = reduce(m, false)?;
    let mut out: Vec<i128> = s.diag.iter().map(|d| d.abs()).filter(|&d| d != 1).collect();
    out.extend(std::iter::repeat_n(0, m.len().saturating_sub(s.diag.len())));
    Ok(out)
}

pub fn det(m: &IMat) -> Result<i128, Overflow> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut a = m.clone();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = ck(a[i][j].checked_mul(a[k][k]))?;
                let y = ck(a[i][k].checked_mul(a[k][j]))?;
                a[i][j] = ck(x.checked_sub(y))? / prev;
            }
        }
        prev = a[k][k];
    }
    Ok(sign * a[n - 1][n - 1])
}

/// Coefficients `c_0, ..., c_n` of `det(tI - M) = sum c_k t^k` by
/// Faddeev-LeVerrier (all divisions are exact for integer matrices).
pub fn char_poly(m: &IMat) -> Result<Vec<i128>, Overflow> {
    let n = m.len();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let mut mk = vec![vec![0i128; n]; n];
    for k in 1..=n {
        // M_k = M M_{k-1} + c_{n-k+1} I
        let mut next = matmul(m, &mk)?;
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = ck(row[i].checked_add(coeffs[n - k + 1]))?;
        }
        mk = next;
        let am = matmul(m, &mk)?;
        let tr: i128 = (0..n).map(|i| am[i][i]).sum();
        debug_assert_eq!(tr % k as i128, 0);
        coeffs[n - k] = -tr / k as i128;
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i128]]) -> IMat {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn smith_small() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&a).unwrap();
        assert_eq!(s.diag, vec![2, 6, 12]);
        let d = matmul(&matmul(&s.u, &a).unwrap(), &s.v).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d[i][j], if i == j { s.diag[i] } else { 0 });
            }
        }
    }

    #[test]
    fn kernel_rows_annihilate() {
        let a = m(&[&[1, 2], &[2, 4], &[3, 1]]);
        let k = left_kernel(&a).unwrap();
        assert_eq!(k.len(), 1);
        let prod = matmul(&k, &a).unwrap();
        assert!(prod[0].iter().all(|&x| x == 0));
    }

    #[test]
    fn det_and_charpoly() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(det(&a).unwrap(), 18);
        // t^3 - 9t^2 + 24t - 18
        assert_eq!(char_poly(&a).unwrap(), vec![-18, 24, -9, 1]);
    }
}
