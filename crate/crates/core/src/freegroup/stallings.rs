//! Folded core graphs of finitely generated subgroups of a free group.
//!
//! A subgroup is represented by its based, folded core graph with a
//! breadth-first canonical labeling (base vertex first, edges explored in
//! lexicographic label order), so subgroup equality is structural equality.

use std::collections::HashMap;

use serde::Serialize;

use super::word::Word;
use crate::{Error, Result};

/// Canonical folded core graph; vertex 0 is the base.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StallingsGraph {
    rank: u8,
    /// out[v][g-1] = target of the g-labeled edge leaving v.
    out: Vec<Vec<Option<u32>>>,
    /// inn[v][g-1] = source of the g-labeled edge entering v.
    inn: Vec<Vec<Option<u32>>>,
}

impl StallingsGraph {
    /// Folds the wedge of loops spelled by `generators` into the canonical
    /// core graph of the subgroup they generate.
    pub fn fold(rank: u8, generators: &[Word]) -> Result<StallingsGraph> {
        for w in generators {
            if w.rank() > rank {
                return Err(Error::InvalidInput(format!(
                    "word {} lives in rank {} > ambient {rank}",
                    w,
                    w.rank()
                )));
            }
        }
        // build the flower: directed labeled edges (u, g, v)
        let mut edges: Vec<(u32, u8, u32)> = Vec::new();
        let mut next_vertex = 1u32;
        for w in generators {
            if w.is_empty() {
                continue;
            }
            let n = w.len();
            let mut cur = 0u32;
            for (i, &l) in w.letters().iter().enumerate() {
                let nxt = if i + 1 == n { 0 } else { next_vertex + i as u32 };
                if l > 0 {
                    edges.push((cur, l as u8, nxt));
                } else {
                    edges.push((nxt, (-l) as u8, cur));
                }
                cur = nxt;
            }
            next_vertex += (n - 1) as u32;
        }
        let n_vertices = next_vertex as usize;
        let folded = fold_edges(n_vertices, edges);
        let trimmed = core_trim(rank, folded);
        Ok(canonicalize(rank, trimmed))
    }

    /// The rose: the whole group F_rank.
    pub fn rose(rank: u8) -> StallingsGraph {
        let out = vec![(0..rank).map(|_| Some(0u32)).collect()];
        let inn = vec![(0..rank).map(|_| Some(0u32)).collect()];
        StallingsGraph { rank, out, inn }
    }

    /// The trivial subgroup: a single vertex, no edges.
    pub fn trivial(rank: u8) -> StallingsGraph {
        StallingsGraph {
            rank,
            out: vec![vec![None; rank as usize]],
            inn: vec![vec![None; rank as usize]],
        }
    }

    pub fn rank_context(&self) -> u8 {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().flatten().filter(|e| e.is_some()).count()
    }

    /// Subgroup rank: first Betti number of the core graph.
    pub fn subgroup_rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    pub fn is_trivial_subgroup(&self) -> bool {
        self.edge_count() == 0
    }

    /// True iff the graph equals the whole-group rose.
    pub fn is_whole_group(&self) -> bool {
        *self == StallingsGraph::rose(self.rank)
    }

    /// Membership: the word reads a closed loop at the base.
    pub fn contains(&self, w: &Word) -> bool {
        let mut v = 0u32;
        for &l in w.letters() {
            let step = if l > 0 {
                self.out[v as usize][(l - 1) as usize]
            } else {
                self.inn[v as usize][(-l - 1) as usize]
            };
            match step {
                Some(next) => v = next,
                None => return false,
            }
        }
        v == 0
    }

    /// Intersection via the pullback: the product automaton restricted to the
    /// component of the double base point, trimmed to its core.
    pub fn intersect(&self, other: &StallingsGraph) -> Result<StallingsGraph> {
        if self.rank != other.rank {
            return Err(Error::InvalidInput("rank contexts differ".into()));
        }
        let rank = self.rank;
        let mut index: HashMap<(u32, u32), u32> = HashMap::new();
        index.insert((0, 0), 0);
        let mut queue = vec![(0u32, 0u32)];
        let mut edges: Vec<(u32, u8, u32)> = Vec::new();
        let mut head = 0usize;
        while head < queue.len() {
            let (a, b) = queue[head];
            head += 1;
            let cur = index[&(a, b)];
            for g in 0..rank as usize {
                if let (Some(ta), Some(tb)) =
                    (self.out[a as usize][g], other.out[b as usize][g])
                {
                    let nxt = *index.entry((ta, tb)).or_insert_with(|| {
                        queue.push((ta, tb));
                        (queue.len() - 1) as u32
                    });
                    edges.push((cur, g as u8 + 1, nxt));
                }
                if let (Some(sa), Some(sb)) = (self.inn[a as usize][g], other.inn[b as usize][g])
                {
                    let nxt = *index.entry((sa, sb)).or_insert_with(|| {
                        queue.push((sa, sb));
                        (queue.len() - 1) as u32
                    });
                    edges.push((nxt, g as u8 + 1, cur));
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let folded = fold_edges(queue.len(), edges);
        let trimmed = core_trim(rank, folded);
        Ok(canonicalize(rank, trimmed))
    }

    /// A free basis of the subgroup: one word per non-tree edge of a
    /// breadth-first spanning tree.
    pub fn generators(&self) -> Vec<Word> {
        let n = self.vertex_count();
        // tree path from base to each vertex, as letter sequences
        let mut path: Vec<Option<Vec<i8>>> = vec![None; n];
        path[0] = Some(Vec::new());
        let mut order = vec![0u32];
        let mut tree_edges: Vec<(u32, u8, u32)> = Vec::new();
        let mut head = 0usize;
        while head < order.len() {
            let v = order[head] as usize;
            head += 1;
            for g in 0..self.rank as usize {
                if let Some(t) = self.out[v][g] {
                    if path[t as usize].is_none() {
                        let mut p = path[v].clone().unwrap();
                        p.push(g as i8 + 1);
                        path[t as usize] = Some(p);
                        order.push(t);
                        tree_edges.push((v as u32, g as u8 + 1, t));
                    }
                }
                if let Some(s) = self.inn[v][g] {
                    if path[s as usize].is_none() {
                        let mut p = path[v].clone().unwrap();
                        p.push(-(g as i8 + 1));
                        path[s as usize] = Some(p);
                        order.push(s);
                        tree_edges.push((s, g as u8 + 1, v as u32));
                    }
                }
            }
        }
        let mut gens = Vec::new();
        for v in 0..n {
            for g in 0..self.rank as usize {
                if let Some(t) = self.out[v][g] {
                    let e = (v as u32, g as u8 + 1, t);
                    if tree_edges.contains(&e) {
                        continue;
                    }
                    let mut letters = path[v].clone().unwrap();
                    letters.push(g as i8 + 1);
                    let back = path[t as usize].clone().unwrap();
                    letters.extend(back.iter().rev().map(|&l| -l));
                    let w = Word::new(self.rank, &letters).expect("valid letters");
                    gens.push(w.inversion_canonical());
                }
            }
        }
        gens.sort();
        gens
    }

    /// Subgroup containment: every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &StallingsGraph) -> bool {
        self.generators().iter().all(|w| other.contains(w))
    }

    /// Compact display: the canonical generators.
    pub fn label(&self) -> String {
        let gens: Vec<String> = self.generators().iter().map(Word::to_string).collect();
        format!("<{}>", gens.join(","))
    }

    /// Edge list (source, label, target) for serialization.
    pub fn edge_list(&self) -> Vec<(u32, u8, u32)> {
        let mut out = Vec::new();
        for (v, row) in self.out.iter().enumerate() {
            for (g, t) in row.iter().enumerate() {
                if let Some(t) = t {
                    out.push((v as u32, g as u8 + 1, *t));
                }
            }
        }
        out
    }

    /// Graphviz DOT rendering.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph stallings {\n  rankdir=LR;\n  0 [shape=doublecircle];\n");
        for (v, g, t) in self.edge_list() {
            let label = (b'a' + g - 1) as char;
            s.push_str(&format!("  {v} -> {t} [label=\"{label}\"];\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// Folds a labeled edge list with union-find until deterministic.
fn fold_edges(n_vertices: usize, mut edges: Vec<(u32, u8, u32)>) -> Vec<(u32, u8, u32)> {
    let mut parent: Vec<u32> = (0..n_vertices as u32).collect();
    fn find(parent: &mut [u32], x: u32) -> u32 {
        let mut root = x;
        while parent[root as usize] != root {
            root = parent[root as usize];
        }
        let mut cur = x;
        while parent[cur as usize] != root {
            let next = parent[cur as usize];
            parent[cur as usize] = root;
            cur = next;
        }
        root
    }
    loop {
        // map edges through current classes, dedup
        for e in edges.iter_mut() {
            e.0 = find(&mut parent, e.0);
            e.2 = find(&mut parent, e.2);
        }
        edges.sort_unstable();
        edges.dedup();
        // find a clash: same source+label to two targets, or same target+label
        // from two sources
        let mut merged = false;
        let mut by_src: HashMap<(u32, u8), u32> = HashMap::new();
        let mut by_dst: HashMap<(u32, u8), u32> = HashMap::new();
        for &(u, g, v) in &edges {
            if let Some(&v2) = by_src.get(&(u, g)) {
                if v2 != v {
                    let (ra, rb) = (find(&mut parent, v), find(&mut parent, v2));
                    if ra != rb {
                        parent[ra as usize] = rb;
                        merged = true;
                        break;
                    }
                }
            } else {
                by_src.insert((u, g), v);
            }
            if let Some(&u2) = by_dst.get(&(v, g)) {
                if u2 != u {
                    let (ra, rb) = (find(&mut parent, u), find(&mut parent, u2));
                    if ra != rb {
                        parent[ra as usize] = rb;
                        merged = true;
                        break;
                    }
                }
            } else {
                by_dst.insert((v, g), u);
            }
        }
        if !merged {
            break;
        }
    }
    // normalize so the base class is vertex 0
    let base = find(&mut parent, 0);
    edges
        .into_iter()
        .map(|(u, g, v)| {
            let swap = |x: u32| {
                if x == base {
                    0
                } else if x == 0 {
                    base
                } else {
                    x
                }
            };
            (swap(u), g, swap(v))
        })
        .collect()
}

/// Removes non-base vertices of degree <= 1 until none remain.
fn core_trim(rank: u8, mut edges: Vec<(u32, u8, u32)>) -> Vec<(u32, u8, u32)> {
    let _ = rank;
    loop {
        let mut degree: HashMap<u32, usize> = HashMap::new();
        for &(u, _, v) in &edges {
            *degree.entry(u).or_insert(0) += 1;
            *degree.entry(v).or_insert(0) += 1;
        }
        let hanging: Vec<u32> = degree
            .iter()
            .filter(|(&v, &d)| v != 0 && d <= 1)
            .map(|(&v, _)| v)
            .collect();
        if hanging.is_empty() {
            return edges;
        }
        edges.retain(|&(u, _, v)| !hanging.contains(&u) && !hanging.contains(&v));
    }
}

/// Breadth-first relabeling from the base with lexicographic edge order.
fn canonicalize(rank: u8, edges: Vec<(u32, u8, u32)>) -> StallingsGraph {
    let mut out_map: HashMap<(u32, u8), u32> = HashMap::new();
    let mut in_map: HashMap<(u32, u8), u32> = HashMap::new();
    for &(u, g, v) in &edges {
        out_map.insert((u, g), v);
        in_map.insert((v, g), u);
    }
    let mut new_id: HashMap<u32, u32> = HashMap::new();
    new_id.insert(0, 0);
    let mut order = vec![0u32];
    let mut head = 0usize;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for g in 1..=rank {
            for candidate in [out_map.get(&(v, g)), in_map.get(&(v, g))].into_iter().flatten() {
                if !new_id.contains_key(candidate) {
                    new_id.insert(*candidate, order.len() as u32);
                    order.push(*candidate);
                }
            }
        }
    }
    let n = order.len();
    let mut out = vec![vec![None; rank as usize]; n];
    let mut inn = vec![vec![None; rank as usize]; n];
    for (u, g, v) in edges {
        // unreachable components cannot occur: folding keeps everything
        // attached to the base through the flower construction
        let (nu, nv) = (new_id[&u], new_id[&v]);
        out[nu as usize][(g - 1) as usize] = Some(nv);
        inn[nv as usize][(g - 1) as usize] = Some(nu);
    }
    StallingsGraph { rank, out, inn }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(rank: u8, words: &[&str]) -> StallingsGraph {
        let ws: Vec<Word> = words.iter().map(|s| Word::parse(rank, s).unwrap()).collect();
        StallingsGraph::fold(rank, &ws).unwrap()
    }

    #[test]
    fn single_generator_loop() {
        let g = graph(2, &["a"]);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.subgroup_rank(), 1);
    }

    #[test]
    fn standard_basis_is_whole_group() {
        let g = graph(2, &["a", "b"]);
        assert!(g.is_whole_group());
        assert_eq!(g.subgroup_rank(), 2);
    }

    #[test]
    fn powers_collapse_to_cyclic() {
        // <a^2, a^3> = <a>
        let g = graph(2, &["aa", "aaa"]);
        assert_eq!(g, graph(2, &["a"]));
        assert!(g.contains(&Word::parse(2, "a").unwrap()));
    }

    #[test]
    fn membership() {
        let g = graph(2, &["a"]);
        assert!(g.contains(&Word::parse(2, "aaaaa").unwrap()));
        assert!(!g.contains(&Word::parse(2, "b").unwrap()));
        assert!(g.contains(&Word::identity(2)));
    }

    #[test]
    fn fold_is_confluent() {
        // generator lists differing by order, inversion and free reduction
        let g1 = graph(2, &["ab", "b"]);
        let g2 = graph(2, &["b", "BA"]);
        let g3 = {
            let ws = vec![
                Word::new(2, &[2, -2, 1, 2]).unwrap(), // b b^-1 a b -> ab
                Word::parse(2, "b").unwrap(),
            ];
            StallingsGraph::fold(2, &ws).unwrap()
        };
        assert_eq!(g1, g2);
        assert_eq!(g1, g3);
    }

    #[test]
    fn trivial_intersection() {
        let a = graph(2, &["a"]);
        let b = graph(2, &["b"]);
        let i = a.intersect(&b).unwrap();
        assert!(i.is_trivial_subgroup());
    }

    #[test]
    fn intersection_of_powers() {
        // <a^2> cap <a^3> = <a^6>
        let a2 = graph(2, &["aa"]);
        let a3 = graph(2, &["aaa"]);
        let i = a2.intersect(&a3).unwrap();
        assert_eq!(i, graph(2, &["aaaaaa"]));
        assert!(i.contains(&Word::parse(2, "aaaaaa").unwrap()));
        assert!(!i.contains(&Word::parse(2, "aa").unwrap()));
        assert!(!i.contains(&Word::parse(2, "aaa").unwrap()));
    }

    #[test]
    fn intersection_with_contained_subgroup() {
        // <a, bab^-1> cap <a> = <a>
        let big = graph(2, &["a", "baB"]);
        let small = graph(2, &["a"]);
        let i = big.intersect(&small).unwrap();
        assert_eq!(i, small);
    }

    #[test]
    fn generators_regenerate_the_subgroup() {
        let g = graph(2, &["ab", "ba"]);
        let gens = g.generators();
        assert_eq!(gens.len(), g.subgroup_rank());
        let re = StallingsGraph::fold(2, &gens).unwrap();
        assert_eq!(g, re);
    }

    #[test]
    fn subgroup_containment() {
        let whole = graph(2, &["a", "b"]);
        let sub = graph(2, &["aabb"]);
        assert!(sub.is_subgroup_of(&whole));
        assert!(!whole.is_subgroup_of(&sub));
    }

    #[test]
    fn core_trim_removes_hanging_tail() {
        // <ab a^-1 b^-1 ... > style words produce tails that must be trimmed:
        // folding {aba} keeps a path shape; its core still has every vertex on
        // the loop, so compare with a genuinely trimmed case: {ab, a} spans
        // the whole group; the intermediate flower has a hanging vertex.
        let g = graph(2, &["ab", "a"]);
        assert!(g.is_whole_group());
    }

    #[test]
    fn edge_list_serializes_to_json() {
        let g = graph(2, &["ab"]);
        let json = serde_json::to_string(&g.edge_list()).unwrap();
        let parsed: Vec<(u32, u8, u32)> = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.len(), 2);
    }

    #[test]
    fn dot_output_mentions_edges() {
        let g = graph(2, &["a"]);
        let dot = g.to_dot();
        assert!(dot.contains("0 -> 0"));
        assert!(dot.contains("label=\"a\""));
    }
}
