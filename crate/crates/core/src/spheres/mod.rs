//! The dual-graph shadow of sphere systems: genus-labeled based multigraphs,
//! degree and pillar data, cut and membership predicates, edge collapses,
//! canonical enumeration and the exhaustive lemma verifiers.

pub mod canon;
pub mod enumerate;
pub mod graph;
pub mod verify;

pub use canon::{based_isomorphic, canonical_form, canonical_key};
pub use enumerate::{enumerate_graphs, has_trivial_leaf};
pub use graph::{tau_d_graph, GraphChain, LabeledGraph};
pub use verify::{
    verify_all, verify_degree_inclusion, verify_degree_pillar, verify_face_closure,
    verify_rank_sums, verify_tau_degree, VerifyReport, Violation,
};
