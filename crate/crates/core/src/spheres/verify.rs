//! Exhaustive verifiers for the dual-graph lemmas: degree only depends on
//! the pillar, low degree forces membership in the geometric model, and
//! membership is closed under single-edge collapses. Each verifier sweeps
//! every enumerated graph and reports violations (expected: none).
//!
//! Membership is evaluated under the literal cut-vertex reading; whenever
//! the loop-at-base reading would change a verifier's outcome, the report
//! carries the alternate violation list as well.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::enumerate_graphs;
use super::graph::{tau_d_graph, LabeledGraph};
use crate::Result;

/// One counterexample, with the graphs embedded.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Violation {
    pub detail: String,
    pub graph: LabeledGraph,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collapsed: Option<LabeledGraph>,
}

/// Outcome of one verifier sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub check: String,
    pub n: u32,
    pub max_edges: usize,
    pub checked: u64,
    pub violations: Vec<Violation>,
    /// Violations under the loop-at-base cut reading, present only when
    /// they differ from the literal ones.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violations_loop_reading: Option<Vec<Violation>>,
    /// Enumerated graphs on which the two readings of membership disagree.
    pub reading_divergences: u64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
            && self.violations_loop_reading.as_ref().is_none_or(Vec::is_empty)
    }
}

fn divergences(graphs: &[LabeledGraph]) -> u64 {
    graphs
        .iter()
        .filter(|g| g.in_fcdg() != g.in_fcdg_loop_reading())
        .count() as u64
}

/// Collapsing any non-pillar edge (a loop anywhere, or a non-loop edge away
/// from the base) never changes the degree.
pub fn verify_degree_pillar(n: u32, max_edges: usize) -> Result<VerifyReport> {
    let graphs = enumerate_graphs(n, max_edges)?;
    let violations: Vec<Violation> = graphs
        .par_iter()
        .flat_map_iter(|g| {
            let mut out = Vec::new();
            if g.edge_count() < 2 {
                return out;
            }
            for i in 0..g.edge_count() {
                if !g.is_non_pillar_edge(i) {
                    continue;
                }
                let collapsed = g.collapse_edge(i).expect("edge exists, more remain");
                if collapsed.degree() != g.degree() {
                    out.push(Violation {
                        detail: format!(
                            "degree changed {} -> {} collapsing non-pillar edge {i}",
                            g.degree(),
                            collapsed.degree()
                        ),
                        graph: g.clone(),
                        collapsed: Some(collapsed),
                    });
                }
            }
            out
        })
        .collect();
    Ok(VerifyReport {
        check: "degree-pillar".into(),
        n,
        max_edges,
        checked: graphs.len() as u64,
        violations,
        violations_loop_reading: None,
        reading_divergences: divergences(&graphs),
    })
}

/// Degree at most n-2 forces membership in the geometric model.
pub fn verify_degree_inclusion(n: u32, max_edges: usize) -> Result<VerifyReport> {
    let graphs = enumerate_graphs(n, max_edges)?;
    let check =
        |member: fn(&LabeledGraph) -> bool| -> Vec<Violation> {
            graphs
                .par_iter()
                .filter(|g| g.degree() <= n as i64 - 2 && !member(g))
                .map(|g| Violation {
                    detail: format!("degree {} <= n-2 = {} but not a member", g.degree(), n as i64 - 2),
                    graph: g.clone(),
                    collapsed: None,
                })
                .collect()
        };
    let violations = check(LabeledGraph::in_fcdg);
    let alt = check(LabeledGraph::in_fcdg_loop_reading);
    let differs = alt.len() != violations.len();
    Ok(VerifyReport {
        check: "degree-inclusion".into(),
        n,
        max_edges,
        checked: graphs.len() as u64,
        violations,
        violations_loop_reading: differs.then_some(alt),
        reading_divergences: divergences(&graphs),
    })
}

/// Membership survives every single-edge collapse (face closure).
pub fn verify_face_closure(n: u32, max_edges: usize) -> Result<VerifyReport> {
    let graphs = enumerate_graphs(n, max_edges)?;
    let sweep = |member: fn(&LabeledGraph) -> bool| -> Vec<Violation> {
        graphs
            .par_iter()
            .flat_map_iter(|g| {
                let mut out = Vec::new();
                if !member(g) || g.edge_count() < 2 {
                    return out;
                }
                for i in 0..g.edge_count() {
                    let collapsed = g.collapse_edge(i).expect("more edges remain");
                    if !member(&collapsed) {
                        out.push(Violation {
                            detail: format!("membership lost collapsing edge {i}"),
                            graph: g.clone(),
                            collapsed: Some(collapsed),
                        });
                    }
                }
                out
            })
            .collect()
    };
    let violations = sweep(LabeledGraph::in_fcdg);
    let alt = sweep(LabeledGraph::in_fcdg_loop_reading);
    let differs = alt.len() != violations.len();
    Ok(VerifyReport {
        check: "face-closure".into(),
        n,
        max_edges,
        checked: graphs.len() as u64,
        violations,
        violations_loop_reading: differs.then_some(alt),
        reading_divergences: divergences(&graphs),
    })
}

/// On every cut graph with base genus 0, the decomposition ranks sum to n.
/// (The sum is asserted inside `decomposition_ranks`; this sweep surfaces
/// any failure as a report instead of an error.)
pub fn verify_rank_sums(n: u32, max_edges: usize) -> Result<VerifyReport> {
    let graphs = enumerate_graphs(n, max_edges)?;
    let violations: Vec<Violation> = graphs
        .par_iter()
        .filter(|g| g.genus(g.base()) == 0 && g.is_cut_basepoint())
        .filter_map(|g| match g.decomposition_ranks() {
            Ok(ranks) => {
                let total: u32 = ranks.iter().sum();
                (total != n).then(|| Violation {
                    detail: format!("ranks {ranks:?} sum to {total}, not {n}"),
                    graph: g.clone(),
                    collapsed: None,
                })
            }
            Err(e) => Some(Violation {
                detail: format!("decomposition_ranks failed: {e}"),
                graph: g.clone(),
                collapsed: None,
            }),
        })
        .collect();
    Ok(VerifyReport {
        check: "rank-sums".into(),
        n,
        max_edges,
        checked: graphs.len() as u64,
        violations,
        violations_loop_reading: None,
        reading_divergences: divergences(&graphs),
    })
}

/// Star graphs realize their rank multiset with degree 2n - k.
pub fn verify_tau_degree(n: u32) -> Result<VerifyReport> {
    let mut violations = Vec::new();
    let mut checked = 0u64;
    for ranks in partitions(n) {
        checked += 1;
        let g = tau_d_graph(&ranks)?;
        let k = ranks.len() as i64;
        if g.degree() != 2 * n as i64 - k {
            violations.push(Violation {
                detail: format!(
                    "degree {} differs from 2n-k = {}",
                    g.degree(),
                    2 * n as i64 - k
                ),
                graph: g.clone(),
                collapsed: None,
            });
        }
        // full decompositions have at least two parts; only those stars are
        // cut, so the rank round-trip applies to k >= 2
        if ranks.len() >= 2 {
            let mut expect = ranks.clone();
            expect.sort_unstable();
            if g.decomposition_ranks()? != expect {
                violations.push(Violation {
                    detail: "star graph does not carry its own rank multiset".into(),
                    graph: g,
                    collapsed: None,
                });
            }
        }
    }
    Ok(VerifyReport {
        check: "tau-degree".into(),
        n,
        max_edges: 0,
        checked,
        violations,
        violations_loop_reading: None,
        reading_divergences: 0,
    })
}

/// All partitions of n into positive parts (non-increasing).
fn partitions(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for next in (1..=left.min(max)).rev() {
            cur.push(next);
            rec(left - next, next, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// The full verifier sweep used by the CLI and the acceptance suite.
pub fn verify_all(n: u32, max_edges: usize) -> Result<Vec<VerifyReport>> {
    Ok(vec![
        verify_degree_pillar(n, max_edges)?,
        verify_degree_inclusion(n, max_edges)?,
        verify_face_closure(n, max_edges)?,
        verify_rank_sums(n, max_edges)?,
        verify_tau_degree(n)?,
    ])
}
