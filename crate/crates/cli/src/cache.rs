//! Basis-enumeration cache keyed by (n, L), rooted at $FACTORCOMPLEX_CACHE.
//!
//! Cached entries are re-verified on load (every tuple must still generate
//! the whole group); anything stale or unreadable is recomputed and
//! rewritten.

use std::path::PathBuf;

use factorcomplex::freegroup::{enumerate_bases, StallingsGraph, Word};
use factorcomplex::Result;

pub const CACHE_ENV: &str = "FACTORCOMPLEX_CACHE";

fn cache_path(n: u8, max_len: usize) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    if dir.is_empty() {
        return None;
    }
    Some(PathBuf::from(dir).join(format!("bases-n{n}-L{max_len}.json")))
}

fn load(path: &PathBuf, n: u8) -> Option<Vec<Vec<Word>>> {
    let text = std::fs::read_to_string(path).ok()?;
    let raw: Vec<Vec<String>> = serde_json::from_str(&text).ok()?;
    let mut out = Vec::with_capacity(raw.len());
    for tuple in raw {
        if tuple.len() != n as usize {
            return None;
        }
        let mut basis = Vec::with_capacity(tuple.len());
        for s in tuple {
            basis.push(Word::parse(n, &s).ok()?);
        }
        let folded = StallingsGraph::fold(n, &basis).ok()?;
        if !folded.is_whole_group() {
            return None;
        }
        basis.sort();
        out.push(basis);
    }
    out.sort();
    Some(out)
}

fn store(path: &PathBuf, bases: &[Vec<Word>]) {
    if let Some(parent) = path.parent() {
        let _ = std::fs::create_dir_all(parent);
    }
    let raw: Vec<Vec<String>> = bases
        .iter()
        .map(|b| b.iter().map(Word::to_string).collect())
        .collect();
    if let Ok(text) = serde_json::to_string_pretty(&raw) {
        let _ = std::fs::write(path, text + "\n");
    }
}

/// [`enumerate_bases`] with a transparent file cache when the environment
/// variable is set.
pub fn enumerate_bases_cached(n: u8, max_len: usize) -> Result<Vec<Vec<Word>>> {
    let path = match cache_path(n, max_len) {
        Some(p) => p,
        None => return enumerate_bases(n, max_len),
    };
    if let Some(cached) = load(&path, n) {
        return Ok(cached);
    }
    let bases = enumerate_bases(n, max_len)?;
    store(&path, &bases);
    Ok(bases)
}
