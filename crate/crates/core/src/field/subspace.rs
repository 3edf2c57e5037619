//! Subspaces of F_q^n in reduced row echelon form.
//!
//! RREF with no zero rows is a canonical form: two subspaces are equal iff
//! their matrices are identical, so equality and ordering are byte
//! comparisons (needed to key caches and dedup complex vertices).

use serde::Serialize;

use super::gf::Gf;
use crate::{Error, Result};

/// A nonzero subspace of F_q^n, stored as the canonical RREF basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Subspace {
    q: u8,
    n: u8,
    /// RREF rows, each of length n, no zero rows.
    rows: Vec<Vec<u8>>,
}

/// Row-reduces `vectors` over GF(q); returns RREF rows with zero rows dropped.
pub fn rref(gf: &Gf, n: usize, vectors: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let mut rows: Vec<Vec<u8>> = vectors.to_vec();
    let mut pivot_row = 0usize;
    for col in 0..n {
        let Some(src) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, src);
        let inv = gf.inv(rows[pivot_row][col]);
        if inv != 1 {
            for x in rows[pivot_row].iter_mut() {
                *x = gf.mul(*x, inv);
            }
        }
        for r in 0..rows.len() {
            if r != pivot_row && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..n {
                    let sub = gf.mul(f, rows[pivot_row][c]);
                    rows[r][c] = gf.sub(rows[r][c], sub);
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

impl Subspace {
    /// The subspace spanned by the given vectors. Errors if the span is zero.
    pub fn from_spanning(gf: &Gf, n: u8, vectors: &[Vec<u8>]) -> Result<Subspace> {
        if !(1..=4).contains(&n) {
            return Err(Error::CapExceeded(format!("ambient dimension {n} outside 1..=4")));
        }
        if vectors.iter().any(|v| v.len() != n as usize) {
            return Err(Error::InvalidInput("vector length differs from ambient dimension".into()));
        }
        if vectors.iter().flatten().any(|&x| x >= gf.q()) {
            return Err(Error::InvalidInput("vector entry outside the field".into()));
        }
        let rows = rref(gf, n as usize, vectors);
        if rows.is_empty() {
            return Err(Error::InvalidInput("zero subspace".into()));
        }
        Ok(Subspace { q: gf.q(), n, rows })
    }

    /// Builds directly from rows that must already be in RREF.
    pub fn from_rref_rows(q: u8, n: u8, rows: Vec<Vec<u8>>) -> Result<Subspace> {
        if !(1..=4).contains(&n) {
            return Err(Error::CapExceeded(format!("ambient dimension {n} outside 1..=4")));
        }
        let gf = Gf::new(q)?;
        let again = rref(&gf, n as usize, &rows);
        if again != rows || rows.is_empty() {
            return Err(Error::InvalidInput("rows are not a canonical RREF basis".into()));
        }
        Ok(Subspace { q, n, rows })
    }

    /// The full space F_q^n.
    pub fn full(gf: &Gf, n: u8) -> Subspace {
        let rows = (0..n as usize)
            .map(|i| {
                let mut v = vec![0u8; n as usize];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { q: gf.q(), n, rows }
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.n as usize
    }

    pub fn is_proper(&self) -> bool {
        !self.is_full()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// Membership test by reducing `v` against the RREF rows.
    pub fn contains_vector(&self, gf: &Gf, v: &[u8]) -> bool {
        let mut v = v.to_vec();
        for row in &self.rows {
            let pivot = row.iter().position(|&x| x != 0).expect("no zero rows");
            if v[pivot] != 0 {
                let f = v[pivot];
                for c in 0..self.n as usize {
                    let sub = gf.mul(f, row[c]);
                    v[c] = gf.sub(v[c], sub);
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    /// Containment of subspaces: every basis row of self lies in other.
    pub fn is_subspace_of(&self, gf: &Gf, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains_vector(gf, r))
    }

    /// Sum of two subspaces.
    pub fn sum(&self, gf: &Gf, other: &Subspace) -> Subspace {
        let mut vectors = self.rows.clone();
        vectors.extend(other.rows.iter().cloned());
        let rows = rref(gf, self.n as usize, &vectors);
        Subspace { q: self.q, n: self.n, rows }
    }

    /// Intersection, or `None` when it is the zero subspace.
    ///
    /// Solved via the kernel of the stacked basis: a combination
    /// `lambda . U = -mu . V` lies in both spaces.
    pub fn intersect(&self, gf: &Gf, other: &Subspace) -> Option<Subspace> {
        let n = self.n as usize;
        let (du, dv) = (self.dim(), other.dim());
        // matrix with columns = stacked coefficients, rows = ambient coords:
        // solve [U^T | V^T] (lambda; mu) = 0
        let mut m: Vec<Vec<u8>> = vec![vec![0u8; du + dv]; n];
        for (j, r) in self.rows.iter().enumerate() {
            for i in 0..n {
                m[i][j] = r[i];
            }
        }
        for (j, r) in other.rows.iter().enumerate() {
            for i in 0..n {
                m[i][du + j] = r[i];
            }
        }
        let kernel = kernel_basis(gf, &m, du + dv);
        let mut vecs = Vec::new();
        for k in kernel {
            // v = sum lambda_j * U_j
            let mut v = vec![0u8; n];
            for (j, r) in self.rows.iter().enumerate() {
                if k[j] != 0 {
                    for c in 0..n {
                        v[c] = gf.add(v[c], gf.mul(k[j], r[c]));
                    }
                }
            }
            vecs.push(v);
        }
        let rows = rref(gf, n, &vecs);
        if rows.is_empty() {
            None
        } else {
            Some(Subspace { q: self.q, n: self.n, rows })
        }
    }

    /// Display form: RREF rows as digit strings, e.g. "[110 001]".
    pub fn label(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|d| char::from(b'0' + d)).collect())
            .collect();
        format!("[{}]", rows.join(" "))
    }
}

/// Kernel basis of the matrix (rows x cols over GF(q)), columns as unknowns.
fn kernel_basis(gf: &Gf, m: &[Vec<u8>], cols: usize) -> Vec<Vec<u8>> {
    let reduced = rref(gf, cols, m);
    let mut pivot_cols = Vec::new();
    for row in &reduced {
        pivot_cols.push(row.iter().position(|&x| x != 0).expect("no zero rows"));
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u8; cols];
        v[free] = 1;
        for (ri, &pc) in pivot_cols.iter().enumerate() {
            // pivot value is 1 in RREF: x_pc = -m[ri][free]
            v[pc] = gf.neg(reduced[ri][free]);
        }
        basis.push(v);
    }
    basis
}

/// All d-dimensional subspaces of F_q^n, each exactly once in canonical RREF,
/// generated directly from pivot-column patterns.
pub fn enumerate_subspaces(n: u8, q: u8, d: u8) -> Result<Vec<Subspace>> {
    if d < 1 || d > n {
        return Err(Error::InvalidInput(format!("dimension {d} out of range 1..={n}")));
    }
    if n > 4 {
        return Err(Error::CapExceeded(format!("ambient dimension {n} exceeds cap 4")));
    }
    let gf = Gf::new(q)?;
    let n_us = n as usize;
    let d_us = d as usize;
    let mut out = Vec::new();
    // choose pivot columns j_1 < ... < j_d
    let pivot_sets: Vec<Vec<usize>> =
        itertools::Itertools::combinations(0..n_us, d_us).collect();
    for pivots in pivot_sets {
        // free positions: (row i, col j) with j > pivots[i], j not a pivot
        let mut free_pos: Vec<(usize, usize)> = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for j in (p + 1)..n_us {
                if !pivots.contains(&j) {
                    free_pos.push((i, j));
                }
            }
        }
        let mut assignment = vec![0u8; free_pos.len()];
        loop {
            let mut rows = vec![vec![0u8; n_us]; d_us];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i][p] = 1;
            }
            for (k, &(i, j)) in free_pos.iter().enumerate() {
                rows[i][j] = assignment[k];
            }
            out.push(Subspace { q, n, rows });
            // increment the mixed-radix assignment
            let mut k = 0;
            loop {
                if k == assignment.len() {
                    break;
                }
                assignment[k] += 1;
                if assignment[k] < q {
                    break;
                }
                assignment[k] = 0;
                k += 1;
            }
            if k == assignment.len() {
                break;
            }
        }
    }
    let _ = gf;
    out.sort();
    Ok(out)
}

/// All proper nonzero subspaces of F_q^n (dimensions 1..n-1), sorted.
pub fn enumerate_proper_subspaces(n: u8, q: u8) -> Result<Vec<Subspace>> {
    let mut out = Vec::new();
    for d in 1..n {
        out.extend(enumerate_subspaces(n, q, d)?);
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Gaussian binomial coefficient, the independent counting oracle.
    fn gaussian_binomial(n: u64, d: u64, q: u64) -> u64 {
        let mut num = 1u128;
        let mut den = 1u128;
        for i in 0..d {
            num *= (q.pow(n as u32 - i as u32) - 1) as u128;
            den *= (q.pow(d as u32 - i as u32) - 1) as u128;
        }
        (num / den) as u64
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        assert_eq!(enumerate_subspaces(2, 2, 1).unwrap().len() as u64, 3);
        assert_eq!(enumerate_subspaces(3, 2, 1).unwrap().len() as u64, 7);
        assert_eq!(enumerate_subspaces(3, 2, 2).unwrap().len() as u64, 7);
        assert_eq!(enumerate_subspaces(2, 3, 1).unwrap().len() as u64, 4);
        for (n, q) in [(2u8, 2u8), (3, 2), (3, 3), (4, 2), (2, 4), (3, 4), (2, 9)] {
            for d in 1..=n {
                assert_eq!(
                    enumerate_subspaces(n, q, d).unwrap().len() as u64,
                    gaussian_binomial(n as u64, d as u64, q as u64),
                    "count ({n},{q},{d})"
                );
            }
        }
    }

    #[test]
    fn enumeration_is_canonical_and_distinct() {
        let all = enumerate_subspaces(3, 2, 2).unwrap();
        for w in all.windows(2) {
            assert!(w[0] < w[1], "sorted and distinct");
        }
        let gf = Gf::new(2).unwrap();
        for s in &all {
            let re = Subspace::from_spanning(&gf, 3, s.rows()).unwrap();
            assert_eq!(&re, s, "RREF is idempotent");
        }
    }

    #[test]
    fn dimension_bounds_checked() {
        assert!(enumerate_subspaces(3, 2, 0).is_err());
        assert!(enumerate_subspaces(3, 2, 4).is_err());
        assert!(enumerate_subspaces(5, 2, 1).is_err());
    }

    #[test]
    fn sum_and_intersection() {
        let gf = Gf::new(2).unwrap();
        let e1 = Subspace::from_spanning(&gf, 3, &[vec![1, 0, 0]]).unwrap();
        let e2 = Subspace::from_spanning(&gf, 3, &[vec![0, 1, 0]]).unwrap();
        let plane = e1.sum(&gf, &e2);
        assert_eq!(plane.dim(), 2);
        assert!(e1.is_subspace_of(&gf, &plane));
        assert!(e1.intersect(&gf, &e2).is_none());
        let other = Subspace::from_spanning(&gf, 3, &[vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        let meet = plane.intersect(&gf, &other).unwrap();
        assert_eq!(meet.dim(), 1);
        assert!(meet.contains_vector(&gf, &[1, 1, 0]));
    }

    #[test]
    fn modularity_of_dimensions() {
        // dim(U+V) + dim(U cap V) = dim U + dim V, for all subspace pairs of F_2^3
        let gf = Gf::new(2).unwrap();
        let all = enumerate_proper_subspaces(3, 2).unwrap();
        for u in &all {
            for v in &all {
                let s = u.sum(&gf, v).dim();
                let i = u.intersect(&gf, v).map_or(0, |w| w.dim());
                assert_eq!(s + i, u.dim() + v.dim());
            }
        }
    }

    #[test]
    fn label_is_readable() {
        let gf = Gf::new(2).unwrap();
        let s = Subspace::from_spanning(&gf, 3, &[vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(s.label(), "[110 001]");
    }
}
