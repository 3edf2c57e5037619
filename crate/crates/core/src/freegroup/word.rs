//! Freely reduced words in a free group of fixed rank.
//!
//! Letters are signed generator indices: +i stands for x_i, -i for its
//! inverse (1-based, rank at most 26). The CLI syntax writes generators as
//! a-z and inverses as A-Z, so "abA" is a b a^{-1}.

use serde::Serialize;

use crate::{Error, Result};

/// A freely reduced word; the invariant is maintained by every constructor.
///
/// Ordered shortlex with positive letters before inverses (a < A < b < B),
/// matching the display alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Word {
    rank: u8,
    letters: Vec<i8>,
}

impl Word {
    fn letter_key(l: i8) -> u8 {
        (l.unsigned_abs() - 1) * 2 + u8::from(l < 0)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| {
                self.letters
                    .iter()
                    .map(|&l| Self::letter_key(l))
                    .cmp(other.letters.iter().map(|&l| Self::letter_key(l)))
            })
            .then_with(|| self.rank.cmp(&other.rank))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Removes adjacent inverse pairs from a letter sequence.
pub fn reduce_letters(letters: &[i8]) -> Vec<i8> {
    let mut stack: Vec<i8> = Vec::with_capacity(letters.len());
    for &l in letters {
        if stack.last().is_some_and(|&t| t == -l) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    stack
}

/// Free reduction as an operation: validates indices and reduces.
pub fn free_reduce(rank: u8, letters: &[i8]) -> Result<Word> {
    Word::new(rank, letters)
}

impl Word {
    /// Builds a word, validating generator indices and freely reducing.
    pub fn new(rank: u8, letters: &[i8]) -> Result<Word> {
        if rank == 0 || rank > 26 {
            return Err(Error::InvalidInput(format!("rank {rank} out of range 1..=26")));
        }
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() > rank) {
            return Err(Error::InvalidInput(format!(
                "letter {bad} outside generator range 1..={rank}"
            )));
        }
        Ok(Word { rank, letters: reduce_letters(letters) })
    }

    /// The empty word.
    pub fn identity(rank: u8) -> Word {
        Word { rank, letters: Vec::new() }
    }

    /// The generator x_i (1-based).
    pub fn generator(rank: u8, i: u8) -> Result<Word> {
        Word::new(rank, &[i as i8])
    }

    /// Parses CLI syntax: a-z generators, A-Z inverses.
    pub fn parse(rank: u8, s: &str) -> Result<Word> {
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            let l = match ch {
                'a'..='z' => (ch as u8 - b'a' + 1) as i8,
                'A'..='Z' => -((ch as u8 - b'A' + 1) as i8),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "bad word character {ch:?}; use a-z and A-Z"
                    )))
                }
            };
            letters.push(l);
        }
        Word::new(rank, &letters)
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn letters(&self) -> &[i8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// Product of two words, reduced.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { rank: self.rank.max(other.rank), letters: reduce_letters(&letters) }
    }

    /// The cyclically reduced core: strips matching first/last inverse pairs.
    pub fn cyclic_core(&self) -> Word {
        let mut l = self.letters.as_slice();
        while l.len() >= 2 && l[0] == -l[l.len() - 1] {
            l = &l[1..l.len() - 1];
        }
        Word { rank: self.rank, letters: l.to_vec() }
    }

    /// Canonical representative of the rotation class of the cyclic core.
    pub fn cyclic_canonical(&self) -> Vec<i8> {
        let core = self.cyclic_core();
        if core.letters.is_empty() {
            return Vec::new();
        }
        let k = core.letters.len();
        (0..k)
            .map(|r| {
                let mut rot = core.letters[r..].to_vec();
                rot.extend_from_slice(&core.letters[..r]);
                rot
            })
            .min()
            .unwrap()
    }

    /// Word with each letter's inverse-canonical form: min(w, w^-1).
    pub fn inversion_canonical(&self) -> Word {
        let inv = self.inverse();
        if inv < *self {
            inv
        } else {
            self.clone()
        }
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for &l in &self.letters {
            let ch = if l > 0 {
                (b'a' + l as u8 - 1) as char
            } else {
                (b'A' + (-l) as u8 - 1) as char
            };
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}
