//! The finite-field model: subspaces of F_q^n, the common-basis decision
//! procedure, and builders for CB, PD, D, FC, FCD and the map phi.

pub mod builders;
pub mod common_basis;
pub mod decomp;
pub mod gf;
pub mod subspace;

pub use builders::{
    build_cb, build_d, build_fc, build_fcd, build_fcd_elements, build_pd, phi_map, FcdElement,
    FieldContext, PdElem, PhiData,
};
pub use common_basis::{has_common_basis, CommonBasisOracle};
pub use decomp::FieldDecomposition;
pub use gf::Gf;
pub use subspace::{enumerate_proper_subspaces, enumerate_subspaces, Subspace};
