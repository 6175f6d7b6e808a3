//! Square sparse integer matrices, row-major with sorted zero-free rows.
//!
//! Elements of the torus normalizer act on the adjoint module by signed
//! permutations of root vectors plus a small block on the Cartan part, so
//! products stay sparse.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseMat {
    dim: usize,
    rows: Vec<Vec<(u32, i64)>>,
}

impl SparseMat {
    pub fn identity(dim: usize) -> Self {
        SparseMat {
            dim,
            rows: (0..dim).map(|i| vec![(i as u32, 1)]).collect(),
        }
    }

    pub fn diagonal(d: &[i64]) -> Self {
        SparseMat {
            dim: d.len(),
            rows: d
                .iter()
                .enumerate()
                .map(|(i, &v)| if v == 0 { vec![] } else { vec![(i as u32, v)] })
                .collect(),
        }
    }

    /// Builds from `(row, col, value)` triples; duplicates are summed.
    pub fn from_triples(dim: usize, triples: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut rows: Vec<Vec<(u32, i64)>> = vec![Vec::new(); dim];
        for (i, j, v) in triples {
            rows[i].push((j as u32, v));
        }
        for row in rows.iter_mut() {
            row.sort_by_key(|e| e.0);
            let mut merged: Vec<(u32, i64)> = Vec::with_capacity(row.len());
            for &(j, v) in row.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == j => last.1 += v,
                    _ => merged.push((j, v)),
                }
            }
            merged.retain(|e| e.1 != 0);
            *row = merged;
        }
        SparseMat { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        match self.rows[i].binary_search_by_key(&(j as u32), |e| e.0) {
            Ok(p) => self.rows[i][p].1,
            Err(_) => 0,
        }
    }

    pub fn row(&self, i: usize) -> &[(u32, i64)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.len() == 1 && r[0] == (i as u32, 1))
    }

    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.dim, other.dim);
        let mut acc = vec![0i64; self.dim];
        let mut touched: Vec<u32> = Vec::new();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                touched.clear();
                for &(k, a) in row {
                    for &(j, b) in &other.rows[k as usize] {
                        if acc[j as usize] == 0 {
                            touched.push(j);
                        }
                        acc[j as usize] += a * b;
                    }
                }
                touched.sort_unstable();
                touched.dedup();
                let out: Vec<(u32, i64)> = touched
                    .iter()
                    .filter_map(|&j| {
                        let v = std::mem::take(&mut acc[j as usize]);
                        (v != 0).then_some((j, v))
                    })
                    .collect();
                out
            })
            .collect();
        SparseMat { dim: self.dim, rows }
    }

    pub fn add(&self, other: &SparseMat) -> SparseMat {
        let triples = self
            .triples()
            .chain(other.triples())
            .collect::<Vec<_>>();
        SparseMat::from_triples(self.dim, triples)
    }

    pub fn scale(&self, c: i64) -> SparseMat {
        SparseMat::from_triples(self.dim, self.triples().map(|(i, j, v)| (i, j, v * c)))
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |&(j, v)| (i, j as usize, v)))
    }

    pub fn pow(&self, e: u64) -> SparseMat {
        let mut acc = SparseMat::identity(self.dim);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative order, if it is at most `bound`.
    pub fn order(&self, bound: u64) -> Option<u64> {
        let mut cur = self.clone();
        for k in 1..=bound {
            if cur.is_identity() {
                return Some(k);
            }
            cur = cur.mul(self);
        }
        None
    }

    /// Inverse of an element of finite order at most `bound`.
    pub fn inverse_finite(&self, bound: u64) -> Option<SparseMat> {
        let k = self.order(bound)?;
        Some(self.pow(k - 1))
    }
}

impl fmt::Debug for SparseMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMat(dim={}, nnz={})", self.dim, self.nnz())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_matches_dense() {
        let a = SparseMat::from_triples(3, [(0, 1, 2), (1, 0, -1), (2, 2, 3), (0, 2, 1)]);
        let b = SparseMat::from_triples(3, [(1, 1, 1), (0, 2, 4), (2, 0, -2)]);
        let c = a.mul(&b);
        let dense = |m: &SparseMat| -> Vec<Vec<i64>> {
            (0..3).map(|i| (0..3).map(|j| m.get(i, j)).collect()).collect()
        };
        let (da, db) = (dense(&a), dense(&b));
        for i in 0..3 {
            for j in 0..3 {
                let want: i64 = (0..3).map(|k| da[i][k] * db[k][j]).sum();
                assert_eq!(c.get(i, j), want);
            }
        }
    }

    #[test]
    fn cancellation_drops_entries() {
        let a = SparseMat::from_triples(2, [(0, 0, 1), (0, 1, 1)]);
        let b = SparseMat::from_triples(2, [(0, 0, 1), (1, 0, -1)]);
        assert_eq!(a.mul(&b).nnz(), 0);
    }
}
