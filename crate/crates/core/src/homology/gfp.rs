//! Rank computation over GF(p) and exact integer rank.
//!
//! The GF(p) path is sparse Gaussian elimination with a Markowitz-style pivot
//! rule (shortest column, then shortest row within it). The exact path is
//! fraction-free integer elimination with row gcd normalization; it is the
//! escape hatch used when two modular ranks disagree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::SparseIntMatrix;

/// Deterministic Miller-Rabin for u64 (bases valid for the full u64 range).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Rank of the matrix over GF(p). `p` must be prime (validated by callers).
pub fn rank_mod_p(m: &SparseIntMatrix, p: u64) -> usize {
    // Working rows: sorted (col, value mod p) with value in 1..p.
    let mut rows: Vec<Vec<(u32, u64)>> = m
        .to_row_major()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .filter_map(|(c, v)| {
                    let vm = v.rem_euclid(p as i64) as u64;
                    (vm != 0).then_some((c, vm))
                })
                .collect()
        })
        .collect();
    // col -> set of active rows having a nonzero there
    let mut col_rows: Vec<std::collections::HashSet<u32>> =
        vec![std::collections::HashSet::new(); m.cols()];
    for (ri, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c as usize].insert(ri as u32);
        }
    }
    let mut active_row: Vec<bool> = rows.iter().map(|r| !r.is_empty()).collect();
    let mut rank = 0usize;

    loop {
        // pivot column: nonexhausted column with the fewest active rows
        let mut best_col: Option<(usize, usize)> = None;
        for (c, set) in col_rows.iter().enumerate() {
            if set.is_empty() {
                continue;
            }
            let len = set.len();
            if best_col.is_none_or(|(_, bl)| len < bl) {
                best_col = Some((c, len));
                if len == 1 {
                    break;
                }
            }
        }
        let (pc, _) = match best_col {
            Some(x) => x,
            None => break,
        };
        // pivot row: shortest active row within the column
        let pr = *col_rows[pc]
            .iter()
            .min_by_key(|&&r| (rows[r as usize].len(), r))
            .expect("non-empty pivot column");
        let pr = pr as usize;

        // normalize pivot row so the pivot entry is 1
        let pv = row_get(&rows[pr], pc as u32).expect("pivot entry present");
        let pv_inv = inv_mod(pv, p);
        if pv_inv != 1 {
            for e in rows[pr].iter_mut() {
                e.1 = mul_mod(e.1, pv_inv, p);
            }
        }

        // eliminate the pivot column from all other rows that hit it
        let victims: Vec<u32> =
            col_rows[pc].iter().copied().filter(|&r| r as usize != pr).collect();
        let pivot_row = std::mem::take(&mut rows[pr]);
        for r in victims {
            let ri = r as usize;
            let factor = row_get(&rows[ri], pc as u32).expect("victim has pivot entry");
            let neg = p - factor; // row -= factor * pivot  ==  row += neg * pivot
            let merged = axpy_mod(&rows[ri], &pivot_row, neg, p);
            update_col_index(ri as u32, &rows[ri], &merged, &mut col_rows);
            rows[ri] = merged;
            if rows[ri].is_empty() {
                active_row[ri] = false;
            }
        }
        // retire pivot row and column
        for &(c, _) in &pivot_row {
            col_rows[c as usize].remove(&(pr as u32));
        }
        active_row[pr] = false;
        rank += 1;
    }
    rank
}

fn row_get(row: &[(u32, u64)], col: u32) -> Option<u64> {
    row.binary_search_by_key(&col, |&(c, _)| c).ok().map(|i| row[i].1)
}

/// result = a + factor * b (mod p), rows sorted by column.
fn axpy_mod(a: &[(u32, u64)], b: &[(u32, u64)], factor: u64, p: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&(ca, va)), Some(&(cb, vb))) => {
                if ca < cb {
                    out.push((ca, va));
                    i += 1;
                } else if cb < ca {
                    let v = mul_mod(vb, factor, p);
                    if v != 0 {
                        out.push((cb, v));
                    }
                    j += 1;
                } else {
                    let v = (va + mul_mod(vb, factor, p)) % p;
                    if v != 0 {
                        out.push((ca, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            (Some(&(ca, va)), None) => {
                out.push((ca, va));
                i += 1;
            }
            (None, Some(&(cb, vb))) => {
                let v = mul_mod(vb, factor, p);
                if v != 0 {
                    out.push((cb, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn update_col_index(
    row_id: u32,
    old: &[(u32, u64)],
    new: &[(u32, u64)],
    col_rows: &mut [std::collections::HashSet<u32>],
) {
    for &(c, _) in old {
        col_rows[c as usize].remove(&row_id);
    }
    for &(c, _) in new {
        col_rows[c as usize].insert(row_id);
    }
}

/// Exact rank over the integers (equivalently over the rationals), by
/// fraction-free sparse elimination with gcd-normalized rows.
pub fn rank_exact(m: &SparseIntMatrix) -> usize {
    let mut rows: Vec<Vec<(u32, BigInt)>> = m
        .to_row_major()
        .into_iter()
        .map(|r| r.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect())
        .collect();
    rows.retain(|r| !r.is_empty());
    let mut rank = 0usize;
    while !rows.is_empty() {
        // pivot: row with fewest entries; its first column
        rows.sort_by_key(|r| (r.len(), r.first().map(|e| e.0).unwrap_or(u32::MAX)));
        let mut pivot_row = rows.remove(0);
        normalize_gcd(&mut pivot_row);
        let (pc, pv) = (pivot_row[0].0, pivot_row[0].1.clone());
        rank += 1;
        for row in rows.iter_mut() {
            if let Ok(idx) = row.binary_search_by_key(&pc, |e| e.0) {
                let f = row[idx].1.clone();
                // row <- pv*row - f*pivot_row (cancels column pc)
                let mut out: Vec<(u32, BigInt)> = Vec::with_capacity(row.len() + pivot_row.len());
                let (mut i, mut j) = (0usize, 0usize);
                while i < row.len() || j < pivot_row.len() {
                    let ca = row.get(i).map(|e| e.0).unwrap_or(u32::MAX);
                    let cb = pivot_row.get(j).map(|e| e.0).unwrap_or(u32::MAX);
                    if ca < cb {
                        out.push((ca, &row[i].1 * &pv));
                        i += 1;
                    } else if cb < ca {
                        out.push((cb, -(&pivot_row[j].1 * &f)));
                        j += 1;
                    } else {
                        let v = &row[i].1 * &pv - &pivot_row[j].1 * &f;
                        if !v.is_zero() {
                            out.push((ca, v));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                normalize_gcd(&mut out);
                *row = out;
            }
        }
        rows.retain(|r| !r.is_empty());
    }
    rank
}

fn normalize_gcd(row: &mut [(u32, BigInt)]) {
    if row.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
    }
    if !g.is_zero() && g.abs() > BigInt::from(1) {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}
