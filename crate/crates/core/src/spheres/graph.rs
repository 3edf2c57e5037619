//! Genus-labeled based multigraphs: the dual-graph shadow of sphere systems.
//!
//! A vertex stands for a complement component (genus = rank of its
//! fundamental group), an edge for a sphere; the base vertex is the
//! component containing the boundary. Total rank (first Betti number plus
//! genus sum) is the ambient rank n and is preserved by edge collapses.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Connected multigraph with genus labels, a base vertex, and total rank n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LabeledGraph {
    genus: Vec<u32>,
    base: u32,
    /// unordered pairs (min, max), sorted; loops allowed; multiset
    edges: Vec<(u32, u32)>,
    n: u32,
}

impl LabeledGraph {
    pub fn new(genus: Vec<u32>, base: u32, edges: Vec<(u32, u32)>, n: u32) -> Result<Self> {
        let v = genus.len() as u32;
        if base >= v {
            return Err(Error::InvalidInput(format!("base {base} out of range")));
        }
        if edges.is_empty() {
            return Err(Error::InvalidInput("a dual graph has at least one edge".into()));
        }
        if edges.iter().any(|&(a, b)| a >= v || b >= v) {
            return Err(Error::InvalidInput("edge endpoint out of range".into()));
        }
        let mut edges: Vec<(u32, u32)> =
            edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        edges.sort_unstable();
        let graph = LabeledGraph { genus, base, edges, n };
        if !graph.is_connected() {
            return Err(Error::InvalidInput("graph is not connected".into()));
        }
        if graph.total_rank() != n as i64 {
            return Err(Error::InvalidInput(format!(
                "total rank {} differs from n = {n}",
                graph.total_rank()
            )));
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.genus.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn genus(&self, v: u32) -> u32 {
        self.genus[v as usize]
    }

    pub fn genus_labels(&self) -> &[u32] {
        &self.genus
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    fn is_connected(&self) -> bool {
        let v = self.vertex_count();
        let mut seen = vec![false; v];
        let mut stack = vec![self.base as usize];
        seen[self.base as usize] = true;
        while let Some(x) = stack.pop() {
            for &(a, b) in &self.edges {
                for (p, q) in [(a, b), (b, a)] {
                    if p as usize == x && !seen[q as usize] {
                        seen[q as usize] = true;
                        stack.push(q as usize);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// First Betti number E - V + 1 (the graph is connected).
    pub fn first_betti(&self) -> i64 {
        self.edges.len() as i64 - self.genus.len() as i64 + 1
    }

    /// First Betti number plus the genus sum; the ambient rank.
    pub fn total_rank(&self) -> i64 {
        self.first_betti() + self.genus.iter().map(|&g| g as i64).sum::<i64>()
    }

    /// Valence: loops at the vertex contribute 2.
    pub fn valence(&self, v: u32) -> u32 {
        self.edges
            .iter()
            .map(|&(a, b)| u32::from(a == v) + u32::from(b == v))
            .sum()
    }

    /// Degree: sum over non-base vertices of valence - 2 + 2 genus.
    /// Computed literally from the formula on every call.
    pub fn degree(&self) -> i64 {
        (0..self.genus.len() as u32)
            .filter(|&x| x != self.base)
            .map(|x| self.valence(x) as i64 - 2 + 2 * self.genus(x) as i64)
            .sum()
    }

    /// Edge indices of the pillar: non-loop edges adjacent to the base.
    pub fn pillar_edges(&self) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a != b && (a == self.base || b == self.base))
            .map(|(i, _)| i)
            .collect()
    }

    /// True iff edge `i` is a loop, or a non-loop edge missing the base
    /// (exactly the collapses that keep the pillar intact).
    pub fn is_non_pillar_edge(&self, i: usize) -> bool {
        let (a, b) = self.edges[i];
        a == b || (a != self.base && b != self.base)
    }

    pub fn has_loop_at_base(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b && a == self.base)
    }

    /// Components of the punctured realization |G| \ {base}: every loop at
    /// the base becomes its own open-arc component; the rest are the
    /// components of the graph induced on non-base vertices (base-incident
    /// half-edges dangle into the component of their non-base endpoint).
    /// Returns (vertex sets of non-base components, number of base loops).
    pub fn punctured_components(&self) -> (Vec<Vec<u32>>, usize) {
        let v = self.vertex_count();
        let mut parent: Vec<u32> = (0..v as u32).collect();
        fn find(parent: &mut [u32], x: u32) -> u32 {
            let mut r = x;
            while parent[r as usize] != r {
                r = parent[r as usize];
            }
            let mut c = x;
            while parent[c as usize] != r {
                let nx = parent[c as usize];
                parent[c as usize] = r;
                c = nx;
            }
            r
        }
        let mut base_loops = 0usize;
        for &(a, b) in &self.edges {
            if a == self.base && b == self.base {
                base_loops += 1;
            } else if a != self.base && b != self.base {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra as usize] = rb;
                }
            }
        }
        let mut groups: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
        for x in 0..v as u32 {
            if x != self.base {
                groups.entry(find(&mut parent, x)).or_default().push(x);
            }
        }
        (groups.into_values().collect(), base_loops)
    }

    /// Literal cut test: the punctured realization is disconnected.
    pub fn is_cut_basepoint(&self) -> bool {
        let (components, base_loops) = self.punctured_components();
        components.len() + base_loops > 1
    }

    /// Membership in the geometric model: positive base genus, or the base
    /// is a cut vertex.
    pub fn in_fcdg(&self) -> bool {
        self.genus(self.base) > 0 || self.is_cut_basepoint()
    }

    /// The alternate reading under which a loop at the base always witnesses
    /// cutness. Reported alongside the literal reading wherever they could
    /// diverge.
    pub fn in_fcdg_loop_reading(&self) -> bool {
        self.genus(self.base) > 0 || self.is_cut_basepoint() || self.has_loop_at_base()
    }

    /// Collapses edge `i`: a loop disappears and raises its vertex's genus
    /// by one; a non-loop edge merges its endpoints (the base survives any
    /// merge it is part of) adding the genus labels. Total rank is preserved.
    pub fn collapse_edge(&self, i: usize) -> Result<LabeledGraph> {
        let &(a, b) = self
            .edges
            .get(i)
            .ok_or_else(|| Error::InvalidInput(format!("unknown edge index {i}")))?;
        if a == b {
            let mut genus = self.genus.clone();
            genus[a as usize] += 1;
            let mut edges = self.edges.clone();
            edges.remove(i);
            if edges.is_empty() {
                return Err(Error::InvalidInput(
                    "collapsing the last edge leaves no dual graph".into(),
                ));
            }
            return LabeledGraph::new(genus, self.base, edges, self.n);
        }
        // merge b into a, where a is chosen so the base survives
        let (keep, gone) = if b == self.base { (b, a) } else { (a, b) };
        let remap = |x: u32| -> u32 {
            let y = if x == gone { keep } else { x };
            if y > gone {
                y - 1
            } else {
                y
            }
        };
        let mut genus: Vec<u32> = Vec::with_capacity(self.genus.len() - 1);
        for (x, &g) in self.genus.iter().enumerate() {
            if x as u32 != gone {
                genus.push(g);
            }
        }
        genus[remap(keep) as usize] += self.genus[gone as usize];
        let mut edges = Vec::with_capacity(self.edges.len() - 1);
        for (j, &(p, q)) in self.edges.iter().enumerate() {
            if j != i {
                edges.push((remap(p), remap(q)));
            }
        }
        if edges.is_empty() {
            return Err(Error::InvalidInput(
                "collapsing the last edge leaves no dual graph".into(),
            ));
        }
        LabeledGraph::new(genus, remap(self.base), edges, self.n)
    }

    /// Ranks of the free factor decomposition carried by a cut graph with
    /// simply connected base: per punctured component, the first Betti
    /// number of the subgraph spanned by the component together with the
    /// base, plus the genus sum over the component.
    pub fn decomposition_ranks(&self) -> Result<Vec<u32>> {
        if self.genus(self.base) != 0 || !self.is_cut_basepoint() {
            return Err(Error::InvalidInput(
                "decomposition ranks need a cut graph with base genus 0".into(),
            ));
        }
        let (components, base_loops) = self.punctured_components();
        let mut ranks: Vec<u32> = vec![1; base_loops];
        for comp in components {
            let in_comp = |x: u32| comp.contains(&x);
            // edges of the component subgraph: inside the component, or from
            // the base into it
            let sub_edges = self
                .edges
                .iter()
                .filter(|&&(p, q)| {
                    (in_comp(p) && in_comp(q))
                        || (p == self.base && in_comp(q))
                        || (q == self.base && in_comp(p))
                })
                .count() as i64;
            let sub_vertices = comp.len() as i64 + 1;
            let betti = sub_edges - sub_vertices + 1;
            let genus_sum: i64 = comp.iter().map(|&x| self.genus(x) as i64).sum();
            ranks.push((betti + genus_sum) as u32);
        }
        ranks.sort_unstable();
        let total: u32 = ranks.iter().sum();
        if total as i64 != self.n as i64 {
            return Err(Error::invariant(
                "decomposition ranks do not sum to the ambient rank",
                &(self, &ranks),
            ));
        }
        Ok(ranks)
    }

    /// Pretty one-line form used in reports.
    pub fn describe(&self) -> String {
        let genus: Vec<String> = self.genus.iter().map(u32::to_string).collect();
        let edges: Vec<String> =
            self.edges.iter().map(|&(a, b)| format!("{a}-{b}")).collect();
        format!(
            "n={} base={} genus=[{}] edges=[{}]",
            self.n,
            self.base,
            genus.join(","),
            edges.join(",")
        )
    }
}

/// The star graph of a free factor decomposition: base of genus 0 joined to
/// one leaf per rank. Every sphere of this system is separating.
pub fn tau_d_graph(ranks: &[u32]) -> Result<LabeledGraph> {
    if ranks.is_empty() {
        return Err(Error::InvalidInput("empty rank list".into()));
    }
    if ranks.contains(&0) {
        return Err(Error::InvalidInput("ranks must be positive".into()));
    }
    let n: u32 = ranks.iter().sum();
    let mut genus = vec![0u32];
    genus.extend_from_slice(ranks);
    let edges: Vec<(u32, u32)> = (1..=ranks.len() as u32).map(|i| (0, i)).collect();
    LabeledGraph::new(genus, 0, edges, n)
}

/// A chain of dual graphs, each obtained from its predecessor by collapsing
/// the recorded edges one at a time.
#[derive(Debug, Clone)]
pub struct GraphChain {
    graphs: Vec<LabeledGraph>,
    collapses: Vec<Vec<usize>>,
}

impl GraphChain {
    /// Validates that successive graphs are related by the recorded
    /// collapse sequences.
    pub fn new(graphs: Vec<LabeledGraph>, collapses: Vec<Vec<usize>>) -> Result<GraphChain> {
        if graphs.is_empty() {
            return Err(Error::InvalidInput("empty chain".into()));
        }
        if collapses.len() + 1 != graphs.len() {
            return Err(Error::InvalidInput(
                "need one collapse sequence per consecutive pair".into(),
            ));
        }
        for (i, seq) in collapses.iter().enumerate() {
            let mut cur = graphs[i].clone();
            for &e in seq {
                cur = cur.collapse_edge(e)?;
            }
            if super::canon::canonical_form(&cur) != super::canon::canonical_form(&graphs[i + 1])
            {
                return Err(Error::InvalidInput(format!(
                    "graph {} is not the stated collapse of its predecessor",
                    i + 1
                )));
            }
        }
        Ok(GraphChain { graphs, collapses })
    }

    pub fn graphs(&self) -> &[LabeledGraph] {
        &self.graphs
    }

    pub fn collapses(&self) -> &[Vec<usize>] {
        &self.collapses
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(genus: &[u32], base: u32, edges: &[(u32, u32)], n: u32) -> LabeledGraph {
        LabeledGraph::new(genus.to_vec(), base, edges.to_vec(), n).unwrap()
    }

    #[test]
    fn base_only_loop_graph_has_degree_zero() {
        // one loop at the base, base genus n-1: the sum over non-base
        // vertices is empty
        let g = graph(&[1], 0, &[(0, 0)], 2);
        assert_eq!(g.degree(), 0);
    }

    #[test]
    fn three_parallel_edges_degree_one() {
        let g = graph(&[0, 0], 0, &[(0, 1), (0, 1), (0, 1)], 2);
        assert_eq!(g.degree(), 3 - 2);
    }

    #[test]
    fn star_degree_formula() {
        // star with k genus-n_i leaves: degree = 2n - k; full decompositions
        // have k >= 2 parts, and exactly those stars are cut
        for ranks in [vec![2u32], vec![1, 1], vec![1, 1, 1], vec![2, 1], vec![1, 1, 1, 1]] {
            let n: u32 = ranks.iter().sum();
            let k = ranks.len() as i64;
            let g = tau_d_graph(&ranks).unwrap();
            assert_eq!(g.degree(), 2 * n as i64 - k);
            assert_eq!(g.in_fcdg(), k >= 2);
            if k >= 2 {
                assert_eq!(g.decomposition_ranks().unwrap(), {
                    let mut r = ranks.clone();
                    r.sort_unstable();
                    r
                });
            }
        }
    }

    #[test]
    fn pillar_cases() {
        let loops_only = graph(&[1], 0, &[(0, 0)], 2);
        assert!(loops_only.pillar_edges().is_empty());
        let star = tau_d_graph(&[1, 1, 1]).unwrap();
        assert_eq!(star.pillar_edges().len(), 3);
        let mixed = graph(&[0, 1], 0, &[(0, 1), (1, 1)], 2);
        assert_eq!(mixed.pillar_edges(), vec![0]);
    }

    #[test]
    fn cut_basepoint_semantics() {
        // a single loop at the base is NOT cut: one open arc stays connected
        let one_loop = graph(&[0], 0, &[(0, 0)], 1);
        assert!(!one_loop.is_cut_basepoint());
        // two loops at the base: two disjoint open arcs
        let two_loops = graph(&[0], 0, &[(0, 0), (0, 0)], 2);
        assert!(two_loops.is_cut_basepoint());
        // star with two leaves
        let star = tau_d_graph(&[1, 1]).unwrap();
        assert!(star.is_cut_basepoint());
        // path through the base is cut; path ending at base is not
        let path_mid = graph(&[0, 1, 1], 0, &[(0, 1), (0, 2)], 2);
        assert!(path_mid.is_cut_basepoint());
        let path_end = graph(&[0, 0, 2], 0, &[(0, 1), (1, 2)], 2);
        assert!(!path_end.is_cut_basepoint());
    }

    #[test]
    fn fcdg_membership_cases() {
        // base genus positive
        let g1 = graph(&[1], 0, &[(0, 0)], 2);
        assert!(g1.in_fcdg());
        // cut with genus-1 leaves
        let g2 = tau_d_graph(&[1, 1]).unwrap();
        assert!(g2.in_fcdg());
        // single edge to one genus-n leaf: not in; degree 2n-1 > n-2
        let g3 = graph(&[0, 2], 0, &[(0, 1)], 2);
        assert!(!g3.in_fcdg());
        assert_eq!(g3.degree(), 2 * 2 - 1);
    }

    #[test]
    fn loop_reading_diverges_on_single_base_loop() {
        let one_loop = graph(&[0], 0, &[(0, 0)], 1);
        assert!(!one_loop.in_fcdg());
        assert!(one_loop.in_fcdg_loop_reading());
    }

    #[test]
    fn collapse_loop_at_base() {
        let g = graph(&[0, 1], 0, &[(0, 0), (0, 1)], 2);
        let c = g.collapse_edge(0).unwrap();
        assert_eq!(c.genus(0), 1);
        assert_eq!(c.edge_count(), 1);
        assert_eq!(c.total_rank(), 2);
    }

    #[test]
    fn collapse_merges_genus() {
        // edge between two genus-1 non-base vertices
        let g = graph(&[0, 1, 1], 0, &[(0, 1), (1, 2), (0, 2)], 3);
        let idx = g.edges().iter().position(|&e| e == (1, 2)).unwrap();
        let c = g.collapse_edge(idx).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.genus_labels().iter().sum::<u32>(), 2);
        assert!(c.genus_labels().contains(&2));
        assert_eq!(c.total_rank(), 3);
    }

    #[test]
    fn collapse_preserves_total_rank_everywhere() {
        let g = graph(&[0, 1, 0], 0, &[(0, 1), (1, 2), (2, 2), (0, 0)], 3);
        for i in 0..g.edge_count() {
            let c = g.collapse_edge(i).unwrap();
            assert_eq!(c.total_rank(), g.total_rank(), "edge {i}");
        }
    }

    #[test]
    fn base_survives_merge_as_base() {
        let g = graph(&[0, 1], 1, &[(0, 1), (0, 0)], 2);
        let idx = g.edges().iter().position(|&e| e == (0, 1)).unwrap();
        let c = g.collapse_edge(idx).unwrap();
        assert_eq!(c.base(), 0);
        assert_eq!(c.genus(0), 1, "merged vertex keeps the genus sum");
    }

    #[test]
    fn decomposition_ranks_examples() {
        // two loops at the base
        let two_loops = graph(&[0], 0, &[(0, 0), (0, 0)], 2);
        assert_eq!(two_loops.decomposition_ranks().unwrap(), vec![1, 1]);
        // two parallel edges to a genus-0 vertex plus a loop at base
        let mixed = graph(&[0, 0], 0, &[(0, 1), (0, 1), (0, 0)], 2);
        assert_eq!(mixed.decomposition_ranks().unwrap(), vec![1, 1]);
        // non-cut graphs are rejected
        let not_cut = graph(&[0, 2], 0, &[(0, 1)], 2);
        assert!(not_cut.decomposition_ranks().is_err());
        let genus_base = graph(&[1], 0, &[(0, 0)], 2);
        assert!(genus_base.decomposition_ranks().is_err());
    }

    #[test]
    fn tau_d_roundtrip() {
        for ranks in [vec![1u32, 1], vec![2, 1], vec![1, 1, 2]] {
            let g = tau_d_graph(&ranks).unwrap();
            let mut expect = ranks.clone();
            expect.sort_unstable();
            assert_eq!(g.decomposition_ranks().unwrap(), expect);
        }
        assert!(tau_d_graph(&[]).is_err());
    }

    #[test]
    fn rejects_invalid_graphs() {
        assert!(LabeledGraph::new(vec![0], 0, vec![], 1).is_err());
        assert!(LabeledGraph::new(vec![0, 0], 0, vec![(0, 0)], 1).is_err(), "disconnected");
        assert!(LabeledGraph::new(vec![0], 0, vec![(0, 0)], 2).is_err(), "rank mismatch");
    }

    #[test]
    fn chain_validation() {
        let g = graph(&[0, 1], 0, &[(0, 0), (0, 1)], 2);
        let collapsed = g.collapse_edge(0).unwrap();
        let chain = GraphChain::new(vec![g.clone(), collapsed], vec![vec![0]]);
        assert!(chain.is_ok());
        let wrong = graph(&[2], 0, &[(0, 0)], 3);
        assert!(GraphChain::new(vec![g, wrong], vec![vec![0]]).is_err());
    }
}
