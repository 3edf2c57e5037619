//! Truncated basis enumeration: breadth-first search over Nielsen moves from
//! the standard basis, keeping only bases whose elements all have length at
//! most L. Bases are deduplicated up to element order and inversion of
//! entries, so {a^-1, b} and {b, a} collapse to {a, b}.

use std::collections::HashSet;

use super::stallings::StallingsGraph;
use super::word::Word;
use crate::{Error, Result};

pub const MAX_RANK: u8 = 3;
pub const MAX_LENGTH: usize = 6;

/// Canonical form of an unordered basis: entries inversion-normalized, then
/// sorted.
fn canonical_basis(words: &[Word]) -> Vec<Word> {
    let mut out: Vec<Word> = words.iter().map(Word::inversion_canonical).collect();
    out.sort();
    out
}

/// Flat BFS-state encoding: per word a length prefix followed by letter
/// keys, so byte-lexicographic order on encodings equals the element-wise
/// word order. Keeps the millions of states near the caps at a few dozen
/// bytes each.
fn encode(basis: &[Word]) -> Vec<u8> {
    let mut out = Vec::with_capacity(basis.iter().map(|w| w.len() + 1).sum());
    for w in basis {
        out.push(w.len() as u8);
        for &l in w.letters() {
            out.push((l.unsigned_abs() - 1) * 2 + u8::from(l < 0));
        }
    }
    out
}

fn decode(n: u8, flat: &[u8]) -> Vec<Word> {
    let mut out = Vec::new();
    let mut i = 0usize;
    while i < flat.len() {
        let len = flat[i] as usize;
        let letters: Vec<i8> = flat[i + 1..i + 1 + len]
            .iter()
            .map(|&k| {
                let gen = (k / 2 + 1) as i8;
                if k % 2 == 1 {
                    -gen
                } else {
                    gen
                }
            })
            .collect();
        out.push(Word::new(n, &letters).expect("encoded letters are valid"));
        i += 1 + len;
    }
    out
}

/// Enumerates bases of F_n reachable by Nielsen moves within the length cap.
/// Every returned tuple is verified to generate the whole group via folding.
pub fn enumerate_bases(n: u8, max_len: usize) -> Result<Vec<Vec<Word>>> {
    if !(1..=MAX_RANK).contains(&n) {
        return Err(Error::CapExceeded(format!("rank {n} outside 1..={MAX_RANK}")));
    }
    if !(1..=MAX_LENGTH).contains(&max_len) {
        return Err(Error::CapExceeded(format!("length cap {max_len} outside 1..={MAX_LENGTH}")));
    }
    let standard: Vec<Word> =
        (1..=n).map(|i| Word::generator(n, i).unwrap()).collect();
    let start = encode(&canonical_basis(&standard));
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = vec![start];
    let mut head = 0usize;
    while head < queue.len() {
        let basis = decode(n, &queue[head]);
        head += 1;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                let (bi, bj) = (&basis[i], &basis[j]);
                let candidates = [
                    bi.concat(bj),
                    bi.concat(&bj.inverse()),
                    bj.concat(bi),
                    bj.inverse().concat(bi),
                ];
                for replacement in candidates {
                    if replacement.is_empty() || replacement.len() > max_len {
                        continue;
                    }
                    let mut next = basis.clone();
                    next[i] = replacement;
                    let flat = encode(&canonical_basis(&next));
                    if seen.insert(flat.clone()) {
                        queue.push(flat);
                    }
                }
            }
        }
    }
    drop(seen);
    queue.sort();
    let out: Vec<Vec<Word>> = queue.iter().map(|flat| decode(n, flat)).collect();
    for basis in &out {
        let folded = StallingsGraph::fold(n, basis)?;
        if !folded.is_whole_group() {
            return Err(Error::invariant(
                "enumerated tuple does not generate the whole group",
                &basis.iter().map(Word::to_string).collect::<Vec<_>>(),
            ));
        }
    }
    Ok(out)
}
