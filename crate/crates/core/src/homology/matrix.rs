//! Sparse integer matrices, column-major.

use serde::Serialize;

/// Sparse integer matrix with column-major storage; each column holds sorted
/// `(row, value)` pairs with nonzero values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(u32, i64)>>,
}

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Builds from (row, col, value) triplets; duplicate positions are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(u32, u32, i64)]) -> Self {
        let mut m = Self::zero(rows, cols);
        for &(r, c, v) in triplets {
            assert!((r as usize) < rows && (c as usize) < cols, "triplet out of range");
            m.columns[c as usize].push((r, v));
        }
        for col in &mut m.columns {
            col.sort_unstable_by_key(|(r, _)| *r);
            let mut merged: Vec<(u32, i64)> = Vec::with_capacity(col.len());
            for &(r, v) in col.iter() {
                if let Some(last) = merged.last_mut() {
                    if last.0 == r {
                        last.1 += v;
                        continue;
                    }
                }
                merged.push((r, v));
            }
            merged.retain(|(_, v)| *v != 0);
            *col = merged;
        }
        m
    }

    pub fn from_dense(data: &[Vec<i64>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let mut triplets = Vec::new();
        for (r, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    triplets.push((r as u32, c as u32, v));
                }
            }
        }
        Self::from_triplets(rows, cols, &triplets)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(u32, i64)] {
        &self.columns[c]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Row-major copy: for each row, sorted (col, value) pairs.
    pub fn to_row_major(&self) -> Vec<Vec<(u32, i64)>> {
        let mut rows: Vec<Vec<(u32, i64)>> = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                rows[r as usize].push((c as u32, v));
            }
        }
        rows
    }

    /// Matrix product self * other (used for the boundary-composition check).
    pub fn multiply(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut triplets: Vec<(u32, u32, i64)> = Vec::new();
        for c in 0..other.cols {
            let mut acc: std::collections::HashMap<u32, i64> = std::collections::HashMap::new();
            for &(k, v) in other.column(c) {
                for &(r, w) in self.column(k as usize) {
                    *acc.entry(r).or_insert(0) += v * w;
                }
            }
            for (r, v) in acc {
                if v != 0 {
                    triplets.push((r, c as u32, v));
                }
            }
        }
        SparseIntMatrix::from_triplets(self.rows, other.cols, &triplets)
    }
}
