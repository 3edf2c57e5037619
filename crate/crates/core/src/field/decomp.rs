//! Direct-sum families of subspaces: the field analogue of partial and full
//! free factor decompositions.

use std::collections::BTreeSet;

use serde::Serialize;

use super::gf::Gf;
use super::subspace::Subspace;
use crate::{Error, Result};

/// A set of proper nonzero subspaces whose sum is direct (the dimension of
/// the sum equals the sum of dimensions). Partial when the dimensions add up
/// to less than n, full when they reach n.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FieldDecomposition {
    parts: BTreeSet<Subspace>,
}

impl FieldDecomposition {
    pub fn new(gf: &Gf, parts: BTreeSet<Subspace>) -> Result<FieldDecomposition> {
        if parts.is_empty() {
            return Err(Error::InvalidInput("decomposition needs at least one part".into()));
        }
        let n = parts.iter().next().unwrap().n();
        if parts.iter().any(|p| p.n() != n || p.q() != gf.q()) {
            return Err(Error::InvalidInput("mixed ambient spaces".into()));
        }
        if parts.iter().any(|p| !p.is_proper()) {
            return Err(Error::InvalidInput("parts must be proper subspaces".into()));
        }
        let dim_sum: usize = parts.iter().map(Subspace::dim).sum();
        if dim_sum > n as usize {
            return Err(Error::InvalidInput(format!(
                "part dimensions sum to {dim_sum} > ambient {n}"
            )));
        }
        let mut iter = parts.iter();
        let first = iter.next().unwrap().clone();
        let total = iter.fold(first, |acc, p| acc.sum(gf, p));
        if total.dim() != dim_sum {
            return Err(Error::InvalidInput("parts are not independent".into()));
        }
        Ok(FieldDecomposition { parts })
    }

    pub fn parts(&self) -> &BTreeSet<Subspace> {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim_sum(&self) -> usize {
        self.parts.iter().map(Subspace::dim).sum()
    }

    /// Full when the parts span the ambient space.
    pub fn is_full(&self) -> bool {
        let n = self.parts.iter().next().unwrap().n();
        self.dim_sum() == n as usize
    }

    /// The subspace spanned by all parts together.
    pub fn span(&self, gf: &Gf) -> Subspace {
        let mut iter = self.parts.iter();
        let first = iter.next().unwrap().clone();
        iter.fold(first, |acc, p| acc.sum(gf, p))
    }

    /// Refinement: every part of self is contained in some part of other.
    pub fn refines(&self, gf: &Gf, other: &FieldDecomposition) -> bool {
        self.parts
            .iter()
            .all(|a| other.parts.iter().any(|b| a.is_subspace_of(gf, b)))
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.parts.iter().map(Subspace::label).collect();
        parts.join("|")
    }
}
