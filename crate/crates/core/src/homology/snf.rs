//! Smith normal form over the integers.
//!
//! Boundary matrices are dominated by ±1 entries, so a sparse unit-pivot
//! pre-reduction (each unit pivot contributes an invariant factor 1) shrinks
//! the problem before the dense big-integer phase runs. The dense phase caps
//! at [`SNF_DENSE_CAP`] columns; larger remnants are rejected rather than
//! silently approximated.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::matrix::SparseIntMatrix;
use crate::{Error, Result};

/// Maximum number of columns handed to the dense phase after pre-reduction.
pub const SNF_DENSE_CAP: usize = 20_000;

/// Invariant factors d1 | d2 | ... of the matrix (positive, including 1s,
/// excluding zeros).
pub fn smith_normal_form(m: &SparseIntMatrix) -> Result<Vec<BigInt>> {
    let (unit_pivots, remnant) = unit_pivot_prereduce(m);
    if remnant.first().map_or(0, Vec::len) > SNF_DENSE_CAP {
        return Err(Error::CapExceeded(format!(
            "smith_normal_form: {} columns remain after pre-reduction (cap {SNF_DENSE_CAP})",
            remnant.first().map_or(0, Vec::len)
        )));
    }
    let mut factors: Vec<BigInt> = vec![BigInt::from(1); unit_pivots];
    factors.extend(dense_snf(remnant));
    Ok(factors)
}

/// Eliminates with ±1 pivots while any exist, in checked i128 arithmetic.
/// Returns the number of unit pivots and the remaining dense matrix. Bails
/// out of pre-reduction (returning the current remnant) if an entry would
/// overflow i128; the dense BigInt phase then handles the rest.
fn unit_pivot_prereduce(m: &SparseIntMatrix) -> (usize, Vec<Vec<BigInt>>) {
    let mut rows: Vec<Vec<(u32, i128)>> = m
        .to_row_major()
        .into_iter()
        .map(|r| r.into_iter().map(|(c, v)| (c, v as i128)).collect())
        .collect();
    rows.retain(|r| !r.is_empty());
    let mut pivots = 0usize;
    'outer: loop {
        // find a row containing a ±1 entry; prefer short rows
        rows.sort_by_key(Vec::len);
        let mut found: Option<(usize, usize)> = None;
        for (ri, row) in rows.iter().enumerate() {
            if let Some(ci) = row.iter().position(|&(_, v)| v == 1 || v == -1) {
                found = Some((ri, ci));
                break;
            }
        }
        let (ri, ci) = match found {
            Some(x) => x,
            None => break,
        };
        let pivot_row = rows.remove(ri);
        let (pc, pv) = pivot_row[ci];
        for row in rows.iter_mut() {
            if let Ok(idx) = row.binary_search_by_key(&pc, |e| e.0) {
                let f = row[idx].1 * pv; // entry / pivot since pivot is ±1
                let mut out: Vec<(u32, i128)> = Vec::with_capacity(row.len() + pivot_row.len());
                let (mut i, mut j) = (0usize, 0usize);
                while i < row.len() || j < pivot_row.len() {
                    let ca = row.get(i).map(|e| e.0).unwrap_or(u32::MAX);
                    let cb = pivot_row.get(j).map(|e| e.0).unwrap_or(u32::MAX);
                    if ca < cb {
                        out.push(row[i]);
                        i += 1;
                    } else if cb < ca {
                        match f.checked_mul(pivot_row[j].1).and_then(|x| 0i128.checked_sub(x)) {
                            Some(v) => out.push((cb, v)),
                            None => break 'outer,
                        }
                        j += 1;
                    } else {
                        match f
                            .checked_mul(pivot_row[j].1)
                            .and_then(|x| row[i].1.checked_sub(x))
                        {
                            Some(v) => {
                                if v != 0 {
                                    out.push((ca, v));
                                }
                            }
                            None => break 'outer,
                        }
                        i += 1;
                        j += 1;
                    }
                }
                *row = out;
            }
        }
        rows.retain(|r| !r.is_empty());
        pivots += 1;
    }
    // densify the remnant with compacted column indices
    let mut cols: Vec<u32> = rows.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    cols.sort_unstable();
    cols.dedup();
    let col_idx: std::collections::HashMap<u32, usize> =
        cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let dense: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let mut row = vec![BigInt::zero(); cols.len()];
            for &(c, v) in r {
                row[col_idx[&c]] = BigInt::from(v);
            }
            row
        })
        .collect();
    (pivots, dense)
}

/// Textbook SNF on a dense BigInt matrix: swap a minimal entry into the
/// corner, clear its row and column, fix divisibility, recurse.
fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let nr = a.len();
    let nc = a.first().map_or(0, Vec::len);
    let mut factors = Vec::new();
    let mut k = 0usize;
    while k < nr.min(nc) {
        // find minimal nonzero |entry| in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in k..nr {
            for j in k..nc {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let (pi, pj) = match best {
            Some(x) => x,
            None => break,
        };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        if a[k][k].is_negative() {
            for j in k..nc {
                a[k][j] = -std::mem::take(&mut a[k][j]);
            }
        }

        // clear column k with quotients; imperfect divisions leave remainders
        // that the outer loop re-pivots on
        let mut dirty = false;
        for i in k + 1..nr {
            if !a[i][k].is_zero() {
                let q = &a[i][k] / &a[k][k];
                if !q.is_zero() {
                    for j in k..nc {
                        let sub = &q * &a[k][j];
                        a[i][j] -= sub;
                    }
                }
                if !a[i][k].is_zero() {
                    dirty = true;
                }
            }
        }
        for j in k + 1..nc {
            if !a[k][j].is_zero() {
                let q = &a[k][j] / &a[k][k];
                if !q.is_zero() {
                    for i in k..nr {
                        let sub = &q * &a[i][k];
                        a[i][j] -= sub;
                    }
                }
                if !a[k][j].is_zero() {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue;
        }
        // divisibility: fold any non-multiple into row k and re-run the pivot
        let mut fixed = true;
        'scan: for i in k + 1..nr {
            for j in k + 1..nc {
                if !(&a[i][j] % &a[k][k]).is_zero() {
                    for col in k..nc {
                        let add = a[i][col].clone();
                        a[k][col] += add;
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }
        factors.push(a[k][k].clone());
        k += 1;
    }
    factors
}
