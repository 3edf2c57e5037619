//! Finite posets, order complexes and poset maps.
//!
//! A poset stores the full relation (as sorted up-/down-sets per element, so
//! `leq` is a binary search) together with its Hasse reduction for reports.
//! All values are immutable after construction.

use std::collections::HashMap;

use crate::complex::{Face, SimplicialComplex};
use crate::{Error, Result};

/// Default bound on the longest chain accepted by [`chain_poset`]; guards the
/// exponential blow-up of subdivision.
pub const DEFAULT_CHAIN_CAP: usize = 25;

/// Finite partial order on elements `0..len` with display labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    /// ups[a] = sorted ids b with a <= b (includes a).
    ups: Vec<Vec<u32>>,
    /// downs[a] = sorted ids b with b <= a (includes a).
    downs: Vec<Vec<u32>>,
}

impl Poset {
    /// Builds a poset from an explicit relation given as `leq` pairs. The
    /// reflexive pairs may be omitted. Reflexivity is added, antisymmetry and
    /// transitivity are checked.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(u32, u32)]) -> Result<Self> {
        let n = labels.len();
        let mut ups: Vec<Vec<u32>> = (0..n as u32).map(|i| vec![i]).collect();
        for &(a, b) in pairs {
            if a as usize >= n || b as usize >= n {
                return Err(Error::InvalidInput(format!("relation pair ({a},{b}) out of range")));
            }
            if a != b {
                ups[a as usize].push(b);
            }
        }
        for up in &mut ups {
            up.sort_unstable();
            up.dedup();
        }
        let poset = Self::from_up_sets(labels, ups)?;
        poset.check_partial_order()?;
        Ok(poset)
    }

    /// Builds a poset by evaluating `leq(a, b)` for all ordered pairs.
    /// The comparator must be a partial order; this is checked.
    pub fn from_comparator<F: Fn(usize, usize) -> bool>(
        labels: Vec<String>,
        leq: F,
    ) -> Result<Self> {
        let n = labels.len();
        let mut ups: Vec<Vec<u32>> = Vec::with_capacity(n);
        for a in 0..n {
            let mut up: Vec<u32> = (0..n).filter(|&b| a == b || leq(a, b)).map(|b| b as u32).collect();
            up.sort_unstable();
            ups.push(up);
        }
        let poset = Self::from_up_sets(labels, ups)?;
        poset.check_partial_order()?;
        Ok(poset)
    }

    /// Internal: takes up-sets that already include reflexive pairs but whose
    /// transitive closure has not been verified.
    fn from_up_sets(labels: Vec<String>, ups: Vec<Vec<u32>>) -> Result<Self> {
        let n = labels.len();
        let mut downs: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (a, up) in ups.iter().enumerate() {
            for &b in up {
                downs[b as usize].push(a as u32);
            }
        }
        for d in &mut downs {
            d.sort_unstable();
        }
        Ok(Poset { labels, ups, downs })
    }

    fn check_partial_order(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            for &b in &self.ups[a] {
                let b = b as usize;
                if b != a && self.leq(b, a) {
                    return Err(Error::InvalidInput(format!(
                        "antisymmetry violated between {a} and {b}"
                    )));
                }
                // transitivity: ups[b] must be contained in ups[a]
                for &c in &self.ups[b] {
                    if !self.leq(a, c as usize) {
                        return Err(Error::InvalidInput(format!(
                            "transitivity violated: {a} <= {b} <= {c} but not {a} <= {c}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// a <= b in the partial order.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.ups[a].binary_search(&(b as u32)).is_ok()
    }

    /// Sorted up-set {b : a <= b}, including `a`.
    pub fn up_set(&self, a: usize) -> &[u32] {
        &self.ups[a]
    }

    /// Sorted down-set {b : b <= a}, including `a`.
    pub fn down_set(&self, a: usize) -> &[u32] {
        &self.downs[a]
    }

    /// Covering pairs (a, b): a < b with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for &b in &self.ups[a] {
                let bu = b as usize;
                if bu == a {
                    continue;
                }
                let covered = self.ups[a]
                    .iter()
                    .any(|&c| c as usize != a && c != b && self.leq(c as usize, bu));
                if !covered {
                    out.push((a as u32, b));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Length (number of elements) of the longest chain.
    pub fn height(&self) -> usize {
        // longest path in the strict-order DAG, via memoized DFS over up-sets
        let n = self.len();
        let mut memo: Vec<usize> = vec![0; n];
        // process in reverse topological order: sort by |up| ascending means
        // maximal elements (small up-sets) first
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| self.ups[a].len());
        for a in order {
            let mut best = 1;
            for &b in &self.ups[a] {
                if b as usize != a {
                    best = best.max(1 + memo[b as usize]);
                }
            }
            memo[a] = best;
        }
        memo.into_iter().max().unwrap_or(0)
    }

    /// All non-empty chains, each as a sorted list of element ids (sorted by
    /// id; the ids within one chain are pairwise comparable).
    pub fn chains(&self) -> Vec<Vec<u32>> {
        let n = self.len();
        let mut out: Vec<Vec<u32>> = Vec::new();
        // Extend chains whose maximum (in a fixed linear extension given by
        // id order refined by the order itself) is the last pushed element.
        // Using raw id order is fine: we extend a chain by any strictly
        // larger-id element comparable to all current members; comparability
        // to the whole chain is implied by chain totality only if we track it,
        // so check against every member.
        fn extend(p: &Poset, chain: &mut Vec<u32>, start: u32, out: &mut Vec<Vec<u32>>) {
            for b in start..p.len() as u32 {
                let ok = chain.iter().all(|&a| {
                    p.leq(a as usize, b as usize) || p.leq(b as usize, a as usize)
                });
                if ok {
                    chain.push(b);
                    out.push(chain.clone());
                    extend(p, chain, b + 1, out);
                    chain.pop();
                }
            }
        }
        let mut chain = Vec::new();
        let _ = n;
        extend(self, &mut chain, 0, &mut out);
        out
    }

    /// Elements of one chain sorted by the poset order (ascending).
    fn sort_chain_by_order(&self, chain: &[u32]) -> Vec<u32> {
        let mut c = chain.to_vec();
        c.sort_by(|&a, &b| {
            if a == b {
                std::cmp::Ordering::Equal
            } else if self.leq(a as usize, b as usize) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        c
    }

    /// Induced subposet on the given (sorted, deduplicated) element ids.
    /// Returns the subposet and the id map (old -> new).
    pub fn induced(&self, elements: &[u32]) -> (Poset, HashMap<u32, u32>) {
        let mut ids = elements.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let map: HashMap<u32, u32> =
            ids.iter().enumerate().map(|(new, old)| (*old, new as u32)).collect();
        let labels = ids.iter().map(|&i| self.labels[i as usize].clone()).collect();
        let ups = ids
            .iter()
            .map(|&a| {
                self.ups[a as usize]
                    .iter()
                    .filter_map(|b| map.get(b).copied())
                    .collect::<Vec<u32>>()
            })
            .collect();
        (
            Poset::from_up_sets(labels, ups).expect("induced subposet is valid"),
            map,
        )
    }

    /// The order complex: vertices are elements, faces are non-empty chains.
    pub fn order_complex(&self) -> Result<SimplicialComplex> {
        let vertices: Vec<(u32, String)> = (0..self.len() as u32)
            .map(|i| (i, self.labels[i as usize].clone()))
            .collect();
        let faces: std::collections::HashSet<Face> = self.chains().into_iter().collect();
        SimplicialComplex::from_closed_parts(vertices, faces)
    }
}

/// The poset of finite non-empty chains of `p`, ordered by inclusion
/// (the barycentric subdivision on the poset level).
///
/// Refuses posets whose longest chain exceeds `DEFAULT_CHAIN_CAP`; use
/// [`chain_poset_with_cap`] to override.
pub fn chain_poset(p: &Poset) -> Result<Poset> {
    chain_poset_with_cap(p, DEFAULT_CHAIN_CAP)
}

/// [`chain_poset`] that also returns, for each element of the result, the
/// underlying chain as a sorted list of ids of `p`. Element `i` of the
/// returned poset corresponds to `chains[i]`.
pub fn chain_poset_indexed(p: &Poset) -> Result<(Poset, Vec<Vec<u32>>)> {
    let sd = chain_poset(p)?;
    Ok((sd, p.chains()))
}

/// [`chain_poset`] with a configurable bound on the longest chain.
pub fn chain_poset_with_cap(p: &Poset, cap: usize) -> Result<Poset> {
    let h = p.height();
    if h > cap {
        return Err(Error::CapExceeded(format!(
            "chain_poset: longest chain has {h} elements, cap is {cap}"
        )));
    }
    let chains = p.chains();
    let index: HashMap<Vec<u32>, u32> =
        chains.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect();
    let labels: Vec<String> = chains
        .iter()
        .map(|c| {
            let ordered = p.sort_chain_by_order(c);
            let parts: Vec<&str> = ordered.iter().map(|&e| p.label(e as usize)).collect();
            format!("{{{}}}", parts.join(" < "))
        })
        .collect();
    // relation: subchain inclusion; enumerate subsets of each chain
    let mut ups: Vec<Vec<u32>> = vec![Vec::new(); chains.len()];
    for (i, c) in chains.iter().enumerate() {
        let k = c.len();
        debug_assert!(k <= cap);
        for mask in 1u64..(1 << k) {
            let sub: Vec<u32> =
                (0..k).filter(|j| mask >> j & 1 == 1).map(|j| c[j]).collect();
            let sub_id = index[&sub];
            ups[sub_id as usize].push(i as u32);
        }
    }
    for up in &mut ups {
        up.sort_unstable();
        up.dedup();
    }
    Poset::from_up_sets(labels, ups)
}

/// Total map between posets, given element-wise.
#[derive(Debug, Clone)]
pub struct PosetMap<'a> {
    pub source: &'a Poset,
    pub target: &'a Poset,
    /// assignment[i] = image of source element i.
    pub assignment: Vec<u32>,
}

impl<'a> PosetMap<'a> {
    pub fn new(source: &'a Poset, target: &'a Poset, assignment: Vec<u32>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::InvalidInput(format!(
                "assignment covers {} of {} source elements",
                assignment.len(),
                source.len()
            )));
        }
        if let Some(bad) = assignment.iter().find(|&&t| t as usize >= target.len()) {
            return Err(Error::InvalidInput(format!("assignment hits unknown target {bad}")));
        }
        Ok(PosetMap { source, target, assignment })
    }

    /// True iff a <= b in the source implies f(a) <= f(b) in the target.
    pub fn is_order_preserving(&self) -> bool {
        for a in 0..self.source.len() {
            for &b in self.source.up_set(a) {
                let (fa, fb) = (self.assignment[a], self.assignment[b as usize]);
                if !self.target.leq(fa as usize, fb as usize) {
                    return false;
                }
            }
        }
        true
    }

    /// The lower fiber over target element `q`: induced subposet of the source
    /// on {x : f(x) <= q}.
    pub fn lower_fiber(&self, q: u32) -> Result<Poset> {
        if q as usize >= self.target.len() {
            return Err(Error::InvalidInput(format!("unknown target element {q}")));
        }
        let members: Vec<u32> = (0..self.source.len() as u32)
            .filter(|&x| self.target.leq(self.assignment[x as usize] as usize, q as usize))
            .collect();
        Ok(self.source.induced(&members).0)
    }
}
