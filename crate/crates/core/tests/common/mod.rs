#![allow(dead_code)] // each test target uses a different slice of this module
#![allow(clippy::needless_range_loop)]

//! Shared test oracles, independent of the library's computation paths:
//! a dense fraction-free rank (for Betti cross-checks) and a brute-force
//! primitive-word enumerator by automorphism-orbit search.

use std::collections::{HashSet, VecDeque};

use factorcomplex::complex::SimplicialComplex;

/// Dense fraction-free Gaussian elimination over the integers in i128;
/// exact rank for small matrices.
pub fn dense_rank(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let Some(pivot) = (row..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, pivot);
        for r in 0..rows {
            if r != row && m[r][col] != 0 {
                let (a, b) = (m[row][col], m[r][col]);
                for c in 0..cols {
                    m[r][c] = m[r][c] * a - m[row][c] * b;
                }
                // keep entries small
                let g = m[r].iter().fold(0i128, |acc, &x| gcd(acc, x.abs()));
                if g > 1 {
                    for c in 0..cols {
                        m[r][c] /= g;
                    }
                }
            }
        }
        row += 1;
        rank += 1;
        if row == rows {
            break;
        }
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Reduced Betti numbers straight from dense boundary matrices built from
/// the face lists, sharing nothing with the sparse engine.
pub fn dense_betti(k: &SimplicialComplex) -> Vec<i64> {
    let dim = match k.dimension() {
        Some(d) => d,
        None => return Vec::new(),
    };
    let faces: Vec<Vec<Vec<u32>>> = (0..=dim).map(|d| k.faces_of_dim(d)).collect();
    let mut ranks = vec![0usize; dim + 1]; // ranks[d] = rank of boundary from (d)-chains? index shift below
    for d in 1..=dim {
        let lower = &faces[d - 1];
        let upper = &faces[d];
        let index = |f: &[u32]| lower.binary_search_by(|x| x.as_slice().cmp(f)).unwrap();
        let mut dense = vec![vec![0i128; upper.len()]; lower.len()];
        for (c, face) in upper.iter().enumerate() {
            for i in 0..face.len() {
                let mut sub = face.clone();
                sub.remove(i);
                let r = index(&sub);
                dense[r][c] = if i % 2 == 0 { 1 } else { -1 };
            }
        }
        ranks[d] = dense_rank(dense);
    }
    let mut betti = Vec::new();
    for d in 0..=dim {
        let kernel = if d == 0 {
            faces[0].len()
        } else {
            faces[d].len() - ranks[d]
        };
        let out_rank = if d < dim { ranks[d + 1] } else { 0 };
        let mut b = kernel as i64 - out_rank as i64;
        if d == 0 {
            b -= 1;
        }
        betti.push(b);
    }
    betti
}

/// Letters of a cyclic word over {a, a^-1, b, b^-1} encoded as i8.
type Cyc = Vec<i8>;

fn cyc_reduce(mut w: Vec<i8>) -> Vec<i8> {
    // free reduction
    let mut stack: Vec<i8> = Vec::with_capacity(w.len());
    for l in w.drain(..) {
        if stack.last().is_some_and(|&t| t == -l) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    // cyclic reduction
    while stack.len() >= 2 && stack[0] == -stack[stack.len() - 1] {
        stack.pop();
        stack.remove(0);
    }
    stack
}

fn cyc_canonical(w: &[i8]) -> Cyc {
    if w.is_empty() {
        return Vec::new();
    }
    (0..w.len())
        .map(|r| {
            let mut rot = w[r..].to_vec();
            rot.extend_from_slice(&w[..r]);
            rot
        })
        .min()
        .unwrap()
}

/// All independently coded rank-2 Whitehead substitutions: 8 signed
/// permutations plus, per multiplier letter m, the three maps sending the
/// other generator x to xm, m^-1 x, or m^-1 x m.
fn oracle_moves() -> Vec<[Vec<i8>; 2]> {
    let mut moves: Vec<[Vec<i8>; 2]> = Vec::new();
    for (pa, pb) in [(1i8, 2i8), (2, 1)] {
        for sa in [1i8, -1] {
            for sb in [1i8, -1] {
                moves.push([vec![sa * pa], vec![sb * pb]]);
            }
        }
    }
    for m in [1i8, -1, 2, -2] {
        let other = if m.abs() == 1 { 2i8 } else { 1i8 };
        let fixed: Vec<i8> = vec![m.abs()];
        for images in [
            vec![other, m],
            vec![-m, other],
            vec![-m, other, m],
        ] {
            let (img_a, img_b) = if m.abs() == 1 {
                (fixed.clone(), images)
            } else {
                (images, fixed.clone())
            };
            moves.push([img_a, img_b]);
        }
    }
    moves
}

fn apply_move(mv: &[Vec<i8>; 2], w: &[i8]) -> Vec<i8> {
    let mut out = Vec::with_capacity(w.len() * 2);
    for &l in w {
        let img = &mv[(l.unsigned_abs() - 1) as usize];
        if l > 0 {
            out.extend_from_slice(img);
        } else {
            out.extend(img.iter().rev().map(|&x| -x));
        }
    }
    out
}

/// Brute-force orbit search: canonical cyclic forms of every primitive word
/// of F_2 with cyclic length at most `max_len`, grown from the generator a.
/// Peak reduction guarantees the orbit is closed under the length prune.
pub fn primitive_cyclic_forms(max_len: usize) -> HashSet<Cyc> {
    let moves = oracle_moves();
    let seed = cyc_canonical(&[1]);
    let mut seen: HashSet<Cyc> = HashSet::new();
    seen.insert(seed.clone());
    let mut queue: VecDeque<Cyc> = VecDeque::new();
    queue.push_back(seed);
    while let Some(w) = queue.pop_front() {
        for mv in &moves {
            let image = cyc_canonical(&cyc_reduce(apply_move(mv, &w)));
            if !image.is_empty() && image.len() <= max_len && !seen.contains(&image) {
                seen.insert(image.clone());
                queue.push_back(image);
            }
        }
    }
    seen
}

/// Oracle verdict for an ordinary reduced word in F_2.
pub fn oracle_is_primitive(letters: &[i8], table: &HashSet<Cyc>) -> bool {
    let canon = cyc_canonical(&cyc_reduce(letters.to_vec()));
    !canon.is_empty() && table.contains(&canon)
}

/// All freely reduced words of F_2 with the given exact length.
pub fn reduced_words_of_len(len: usize) -> Vec<Vec<i8>> {
    let letters = [1i8, -1, 2, -2];
    let mut out: Vec<Vec<i8>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * 3);
        for w in &out {
            for &l in &letters {
                if w.last().is_some_and(|&t| t == -l) {
                    continue;
                }
                let mut e = w.clone();
                e.push(l);
                next.push(e);
            }
        }
        out = next;
    }
    out
}
