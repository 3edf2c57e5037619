//! Canonical labeling of based genus-labeled multigraphs.
//!
//! Based isomorphism must fix the base vertex. Iterative refinement seeded
//! by (is-base, genus, valence, loop count) shrinks the search; a
//! backtracking pass over the surviving permutations picks the minimal
//! encoding. Loops and parallel edges defeat plain invariants, so the final
//! comparison is exact.

use std::collections::BTreeMap;

use super::graph::LabeledGraph;

/// Encoded canonical form: vertex count, genus labels, edge multiset, all
/// under the minimal admissible relabeling (base fixed at 0).
pub fn canonical_key(g: &LabeledGraph) -> Vec<u32> {
    let v = g.vertex_count();
    let perms = admissible_orders(g);
    let mut best: Option<Vec<u32>> = None;
    for perm in perms {
        // perm[old] = new id
        let mut key: Vec<u32> = Vec::with_capacity(2 + v + 2 * g.edge_count());
        key.push(v as u32);
        key.push(g.n());
        let mut genus = vec![0u32; v];
        for old in 0..v {
            genus[perm[old] as usize] = g.genus(old as u32);
        }
        key.extend_from_slice(&genus);
        let mut edges: Vec<(u32, u32)> = g
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (perm[a as usize], perm[b as usize]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        for (a, b) in edges {
            key.push(a);
            key.push(b);
        }
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    best.expect("at least one admissible order")
}

/// The canonically relabeled graph itself.
pub fn canonical_form(g: &LabeledGraph) -> LabeledGraph {
    let key = canonical_key(g);
    decode_key(&key)
}

fn decode_key(key: &[u32]) -> LabeledGraph {
    let v = key[0] as usize;
    let n = key[1];
    let genus = key[2..2 + v].to_vec();
    let edges: Vec<(u32, u32)> = key[2 + v..]
        .chunks(2)
        .map(|c| (c[0], c[1]))
        .collect();
    LabeledGraph::new(genus, 0, edges, n).expect("canonical key encodes a valid graph")
}

/// Whether two graphs are isomorphic through a base-preserving map.
pub fn based_isomorphic(a: &LabeledGraph, b: &LabeledGraph) -> bool {
    canonical_key(a) == canonical_key(b)
}

/// All vertex orderings consistent with the refined coloring, as maps
/// old -> new. The base is always color 0 and lands on id 0.
fn admissible_orders(g: &LabeledGraph) -> Vec<Vec<u32>> {
    let v = g.vertex_count();
    let colors = refine_colors(g);
    // group vertices by color; color order = new id block order
    let mut by_color: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for (x, &c) in colors.iter().enumerate() {
        by_color.entry(c).or_default().push(x as u32);
    }
    let classes: Vec<Vec<u32>> = by_color.into_values().collect();
    // cartesian product of per-class permutations
    let mut orders: Vec<Vec<u32>> = vec![Vec::new()];
    for class in &classes {
        let perms = permutations(class);
        let mut next = Vec::with_capacity(orders.len() * perms.len());
        for order in &orders {
            for p in &perms {
                let mut o = order.clone();
                o.extend_from_slice(p);
                next.push(o);
            }
        }
        orders = next;
    }
    // orders lists old ids in new-id sequence; invert to old -> new
    orders
        .into_iter()
        .map(|seq| {
            let mut perm = vec![0u32; v];
            for (new, old) in seq.into_iter().enumerate() {
                perm[old as usize] = new as u32;
            }
            perm
        })
        .collect()
}

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let rest: Vec<u32> = items
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, &y)| y)
            .collect();
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Iterative refinement: colors start from (is-base, genus, valence, loops)
/// and are repeatedly split by the multiset of neighbor colors counted with
/// edge multiplicity.
fn refine_colors(g: &LabeledGraph) -> Vec<u64> {
    let v = g.vertex_count();
    let loops_at = |x: u32| {
        g.edges().iter().filter(|&&(a, b)| a == b && a == x).count() as u32
    };
    let mut colors: Vec<u64> = (0..v as u32)
        .map(|x| {
            let base_flag = u64::from(x != g.base());
            (base_flag << 48)
                | ((g.genus(x) as u64) << 32)
                | ((g.valence(x) as u64) << 16)
                | loops_at(x) as u64
        })
        .collect();
    // compress to small ordinals, keeping the sort order of the raw values
    loop {
        colors = compress(&colors);
        let mut signatures: Vec<(u64, Vec<u64>)> = Vec::with_capacity(v);
        for x in 0..v as u32 {
            let mut neigh: Vec<u64> = Vec::new();
            for &(a, b) in g.edges() {
                if a == x && b != x {
                    neigh.push(colors[b as usize]);
                }
                if b == x && a != x {
                    neigh.push(colors[a as usize]);
                }
            }
            neigh.sort_unstable();
            signatures.push((colors[x as usize], neigh));
        }
        let mut distinct: Vec<&(u64, Vec<u64>)> = signatures.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<u64> = signatures
            .iter()
            .map(|s| distinct.binary_search(&s).unwrap() as u64)
            .collect();
        if compress(&next) == colors {
            return colors;
        }
        colors = next;
    }
}

fn compress(colors: &[u64]) -> Vec<u64> {
    let mut distinct: Vec<u64> = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    colors
        .iter()
        .map(|c| distinct.binary_search(c).unwrap() as u64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spheres::graph::tau_d_graph;

    fn graph(genus: &[u32], base: u32, edges: &[(u32, u32)], n: u32) -> LabeledGraph {
        LabeledGraph::new(genus.to_vec(), base, edges.to_vec(), n).unwrap()
    }

    #[test]
    fn relabelings_share_a_key() {
        let a = graph(&[0, 1, 2], 0, &[(0, 1), (0, 2), (1, 2)], 4);
        let b = graph(&[0, 2, 1], 0, &[(0, 2), (0, 1), (2, 1)], 4);
        assert!(based_isomorphic(&a, &b));
        assert_eq!(canonical_key(&a), canonical_key(&b));
    }

    #[test]
    fn base_position_matters() {
        // same underlying labeled graph, different base: not based-isomorphic
        let a = graph(&[0, 1], 0, &[(0, 1), (0, 1)], 2);
        let b = graph(&[1, 0], 1, &[(0, 1), (0, 1)], 2);
        assert!(based_isomorphic(&a, &b), "swapping both base and labels matches");
        let c = graph(&[0, 1], 1, &[(0, 1), (0, 1)], 2);
        assert!(!based_isomorphic(&a, &c));
    }

    #[test]
    fn genus_distinguishes() {
        let a = graph(&[0, 1, 1], 0, &[(0, 1), (0, 2), (1, 1)], 3);
        let b = graph(&[0, 1, 1], 0, &[(0, 1), (0, 2), (2, 2)], 3);
        assert!(based_isomorphic(&a, &b), "symmetric choice of looped leaf");
        let c = graph(&[0, 2, 0], 0, &[(0, 1), (0, 2), (2, 2)], 3);
        assert!(!based_isomorphic(&a, &c));
    }

    #[test]
    fn parallel_edges_and_loops_counted() {
        let two_par = graph(&[0, 1], 0, &[(0, 1), (0, 1)], 2);
        let loop_edge = graph(&[0, 1], 0, &[(0, 1), (1, 1)], 2);
        assert!(!based_isomorphic(&two_par, &loop_edge));
    }

    #[test]
    fn canonical_form_is_stable() {
        let star = tau_d_graph(&[2, 1, 1]).unwrap();
        let c1 = canonical_form(&star);
        let c2 = canonical_form(&c1);
        assert_eq!(c1, c2, "idempotent");
        assert_eq!(c1.base(), 0);
    }
}
