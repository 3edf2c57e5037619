//! Free-group algebra: reduced words, Whitehead moves, Stallings subgroup
//! graphs with folding, primitivity testing, and truncated CB/PD builders
//! via basis-orbit enumeration.

pub mod bases;
pub mod complexes;
pub mod stallings;
pub mod whitehead;
pub mod word;

pub use bases::enumerate_bases;
pub use complexes::{
    build_truncated_cb, build_truncated_cb_from_bases, build_truncated_pd,
    build_truncated_pd_from_bases, FreeFactorSystem,
};
pub use stallings::StallingsGraph;
pub use whitehead::{is_primitive, whitehead_moves, FreeAutomorphism};
pub use word::{free_reduce, Word};
