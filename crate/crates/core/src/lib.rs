//! Common-basis complexes and their sibling posets, computed exactly in three
//! desk-scale models:
//!
//! * subspaces of `F_q^n` over small finite fields ([`field`]),
//! * free factors of free groups via Stallings graphs and Whitehead moves
//!   ([`freegroup`]),
//! * genus-labeled dual graphs of sphere systems ([`spheres`]).
//!
//! The generic carriers (simplicial complexes, finite posets, chain complexes)
//! live in [`complex`], [`poset`] and [`homology`]; [`quillen`] glues posets to
//! homology by checking lower fibers of poset maps.

#![allow(clippy::needless_range_loop)]

pub mod complex;
pub mod error;
pub mod field;
pub mod freegroup;
pub mod homology;
pub mod io;
pub mod poset;
pub mod quillen;
pub mod report;
pub mod spheres;

pub use complex::SimplicialComplex;
pub use error::Error;
pub use homology::{Coefficients, HomologyReport};
pub use poset::{Poset, PosetMap};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
