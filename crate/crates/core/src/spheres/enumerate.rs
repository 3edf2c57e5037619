//! Exhaustive enumeration of dual graphs: all based-isomorphism classes of
//! connected genus-labeled multigraphs with total rank n and a bounded edge
//! count.
//!
//! Unlabeled shapes are grown edge by edge (staying connected) with
//! canonical-form dedup per level; genus labels are distributed afterwards.
//! Graphs with a genus-0 valence-1 non-base vertex are excluded: the sphere
//! dual to that vertex's edge would bound a ball.

use std::collections::HashSet;

use rayon::prelude::*;

use super::canon::{canonical_form, canonical_key};
use super::graph::LabeledGraph;
use crate::{Error, Result};

pub const MAX_RANK: u32 = 4;
pub const MAX_EDGES: usize = 8;

/// The structural filter: a non-base vertex of genus 0 and valence 1 would
/// be a ball bounded by its sphere.
pub fn has_trivial_leaf(g: &LabeledGraph) -> bool {
    (0..g.vertex_count() as u32)
        .any(|x| x != g.base() && g.genus(x) == 0 && g.valence(x) == 1)
}

/// Unlabeled shape during growth: base 0, no genus yet.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Shape {
    vertices: u32,
    edges: Vec<(u32, u32)>,
}

impl Shape {
    fn betti(&self) -> i64 {
        self.edges.len() as i64 - self.vertices as i64 + 1
    }

    /// Canonical key via the labeled-graph machinery with zero labels; the
    /// rank slot is fixed so keys compare structurally.
    fn key(&self) -> Vec<u32> {
        let g = LabeledGraph::new(
            vec![0; self.vertices as usize],
            0,
            self.edges.clone(),
            self.betti() as u32,
        )
        .expect("shapes stay connected with Betti >= 0");
        canonical_key(&g)
    }
}

/// All isomorphism classes (based isomorphism: the base must map to the
/// base) of valid dual graphs with total rank `n` and 1..=max_edges edges.
pub fn enumerate_graphs(n: u32, max_edges: usize) -> Result<Vec<LabeledGraph>> {
    if !(1..=MAX_RANK).contains(&n) {
        return Err(Error::CapExceeded(format!("rank {n} outside 1..={MAX_RANK}")));
    }
    if !(1..=MAX_EDGES).contains(&max_edges) {
        return Err(Error::CapExceeded(format!(
            "edge bound {max_edges} outside 1..={MAX_EDGES}"
        )));
    }
    // phase 1: unlabeled connected shapes, grown one edge at a time
    let seed = Shape { vertices: 1, edges: Vec::new() };
    let mut level: Vec<Shape> = vec![seed];
    let mut shapes: Vec<Shape> = Vec::new();
    for _ in 0..max_edges {
        let mut next: Vec<Shape> = Vec::new();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        for shape in &level {
            // (a) edge between existing vertices (loops allowed)
            for a in 0..shape.vertices {
                for b in a..shape.vertices {
                    let mut edges = shape.edges.clone();
                    edges.push((a, b));
                    let cand = Shape { vertices: shape.vertices, edges };
                    if cand.betti() <= n as i64 && seen.insert(cand.key()) {
                        next.push(cand);
                    }
                }
            }
            // (b) fresh vertex attached to an existing one
            for a in 0..shape.vertices {
                let mut edges = shape.edges.clone();
                edges.push((a, shape.vertices));
                let cand = Shape { vertices: shape.vertices + 1, edges };
                if seen.insert(cand.key()) {
                    next.push(cand);
                }
            }
        }
        shapes.extend(next.iter().cloned());
        level = next;
    }

    // phase 2: genus distributions per shape, rank filter, structural filter
    let labeled: Vec<Vec<LabeledGraph>> = shapes
        .par_iter()
        .map(|shape| {
            let betti = shape.betti();
            let budget = n as i64 - betti;
            let mut out = Vec::new();
            if budget < 0 {
                return out;
            }
            for genus in compositions(budget as u32, shape.vertices as usize) {
                let g = LabeledGraph::new(genus, 0, shape.edges.clone(), n)
                    .expect("shape is connected and the rank adds up");
                if !has_trivial_leaf(&g) {
                    out.push(canonical_form(&g));
                }
            }
            out
        })
        .collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut out: Vec<LabeledGraph> = Vec::new();
    for g in labeled.into_iter().flatten() {
        if seen.insert(canonical_key(&g)) {
            out.push(g);
        }
    }
    out.sort();
    Ok(out)
}

/// All ways to write `total` as an ordered sum of `parts` non-negative ints.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; parts];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for take in 0..=left {
            cur[i] = take;
            rec(i + 1, left - take, cur, out);
        }
    }
    if parts == 0 {
        return out;
    }
    rec(0, total, &mut cur, &mut out);
    out
}
