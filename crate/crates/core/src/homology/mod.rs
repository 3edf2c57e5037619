//! Exact simplicial homology: sparse boundary matrices, rank over GF(p) and
//! the rationals, Smith normal form for torsion, reduced Betti numbers.
//!
//! Rational ranks are computed as GF(p) ranks at two distinct large primes
//! drawn from a fixed pool by a seeded RNG; on disagreement the engine falls
//! back to exact fraction-free integer elimination. Face ordering is
//! deterministic everywhere so reports are byte-reproducible.

pub mod gfp;
pub mod matrix;
pub mod snf;

use std::collections::HashMap;
use std::fmt;

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::{Error, Result};
pub use matrix::SparseIntMatrix;
pub use snf::smith_normal_form;

/// Default seed for the modular-rank prime choice.
pub const DEFAULT_SEED: u64 = 0x5eed_cb2d;

/// Primes just below 2^31; the seeded prime pool for rational-rank checks.
const PRIME_POOL: [u64; 12] = [
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549, 2147483543,
    2147483497, 2147483489, 2147483477, 2147483423, 2147483399,
];

/// Coefficient field for Betti computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coefficients {
    Rationals,
    GfP(u64),
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Rationals => write!(f, "Q"),
            Coefficients::GfP(p) => write!(f, "GF({p})"),
        }
    }
}

impl Coefficients {
    /// Parses "Q" or "GFp:<p>" (the CLI flag syntax) or "GF(p)".
    pub fn parse(s: &str) -> Result<Self> {
        if s == "Q" {
            return Ok(Coefficients::Rationals);
        }
        let num = s
            .strip_prefix("GFp:")
            .or_else(|| s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')));
        match num {
            Some(ns) => {
                let p: u64 = ns
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad coefficient spec {s:?}")))?;
                if !gfp::is_prime_u64(p) {
                    return Err(Error::InvalidInput(format!("{p} is not prime")));
                }
                Ok(Coefficients::GfP(p))
            }
            None => Err(Error::InvalidInput(format!("bad coefficient spec {s:?}"))),
        }
    }
}

/// Chain complex of a simplicial complex: face counts per dimension and the
/// boundary matrices with entries in {-1, 0, +1}.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    /// dims[d] = number of d-faces.
    dims: Vec<usize>,
    /// boundaries[d] = the matrix of the boundary map from (d+1)-chains to
    /// d-chains, shape dims[d] x dims[d+1].
    boundaries: Vec<SparseIntMatrix>,
}

impl ChainComplex {
    /// Builds the chain complex of `k` with faces indexed per dimension in
    /// sorted order and boundary signs by alternating deletion on increasing
    /// vertex order. Checks that consecutive boundaries compose to zero and
    /// that each column of the d-th boundary has exactly d+1 entries.
    pub fn of(k: &SimplicialComplex) -> Result<ChainComplex> {
        let top = match k.dimension() {
            Some(d) => d,
            None => return Ok(ChainComplex { dims: Vec::new(), boundaries: Vec::new() }),
        };
        let faces_by_dim: Vec<Vec<Vec<u32>>> = (0..=top).map(|d| k.faces_of_dim(d)).collect();
        let dims: Vec<usize> = faces_by_dim.iter().map(Vec::len).collect();
        let mut boundaries = Vec::new();
        for d in 1..=top {
            let lower_index: HashMap<&[u32], u32> = faces_by_dim[d - 1]
                .iter()
                .enumerate()
                .map(|(i, f)| (f.as_slice(), i as u32))
                .collect();
            let mut triplets = Vec::new();
            for (c, face) in faces_by_dim[d].iter().enumerate() {
                for (i, _) in face.iter().enumerate() {
                    let mut sub = face.clone();
                    sub.remove(i);
                    let r = *lower_index.get(sub.as_slice()).ok_or_else(|| {
                        Error::InvalidInput(format!("missing face {sub:?} under {face:?}"))
                    })?;
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    triplets.push((r, c as u32, sign));
                }
            }
            let m = SparseIntMatrix::from_triplets(dims[d - 1], dims[d], &triplets);
            for c in 0..m.cols() {
                if m.column(c).len() != d + 1 {
                    return Err(Error::invariant(
                        format!("boundary column has {} entries, expected {}", m.column(c).len(), d + 1),
                        &faces_by_dim[d][c],
                    ));
                }
            }
            boundaries.push(m);
        }
        let cc = ChainComplex { dims, boundaries };
        cc.check_dd_zero()?;
        Ok(cc)
    }

    fn check_dd_zero(&self) -> Result<()> {
        for w in self.boundaries.windows(2) {
            let prod = w[0].multiply(&w[1]);
            if !prod.is_zero() {
                return Err(Error::invariant("boundary composition is nonzero", &prod));
            }
        }
        Ok(())
    }

    /// Face counts per dimension.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// The boundary matrix from (d+1)-chains to d-chains, if present.
    pub fn boundary(&self, d: usize) -> Option<&SparseIntMatrix> {
        self.boundaries.get(d)
    }

    /// Euler characteristic from face counts.
    pub fn euler(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Number of connected components via union-find on the 1-skeleton.
    pub fn component_count(&self) -> usize {
        let n = *self.dims.first().unwrap_or(&0);
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        if let Some(d1) = self.boundaries.first() {
            for c in 0..d1.cols() {
                let col = d1.column(c);
                if col.len() == 2 {
                    let (a, b) = (col[0].0 as usize, col[1].0 as usize);
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra] = rb;
                    }
                }
            }
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }

    /// Ranks of all boundary matrices over the given coefficients.
    /// Index d holds the rank of the boundary from (d+1)-chains.
    fn boundary_ranks(&self, coefficients: Coefficients, seed: u64) -> Result<Vec<usize>> {
        match coefficients {
            Coefficients::GfP(p) => {
                if !gfp::is_prime_u64(p) {
                    return Err(Error::InvalidInput(format!("{p} is not prime")));
                }
                Ok(self.boundaries.iter().map(|m| gfp::rank_mod_p(m, p)).collect())
            }
            Coefficients::Rationals => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let picks: Vec<u64> =
                    PRIME_POOL.choose_multiple(&mut rng, 2).copied().collect();
                let (p1, p2) = (picks[0], picks[1]);
                self.boundaries
                    .iter()
                    .map(|m| {
                        let r1 = gfp::rank_mod_p(m, p1);
                        let r2 = gfp::rank_mod_p(m, p2);
                        if r1 == r2 {
                            Ok(r1)
                        } else {
                            Ok(gfp::rank_exact(m))
                        }
                    })
                    .collect()
            }
        }
    }

    /// Reduced Betti numbers over the chosen coefficients, one per dimension.
    pub fn betti(&self, coefficients: Coefficients) -> Result<Vec<u64>> {
        self.betti_seeded(coefficients, DEFAULT_SEED)
    }

    /// [`ChainComplex::betti`] with an explicit seed for the prime choice.
    pub fn betti_seeded(&self, coefficients: Coefficients, seed: u64) -> Result<Vec<u64>> {
        if self.dims.is_empty() {
            return Ok(Vec::new());
        }
        let ranks = self.boundary_ranks(coefficients, seed)?;
        let rank_out = |d: usize| -> usize {
            if d < ranks.len() {
                ranks[d]
            } else {
                0
            }
        };
        let mut betti = Vec::with_capacity(self.dims.len());
        for d in 0..self.dims.len() {
            let kernel = if d == 0 {
                self.dims[0]
            } else {
                self.dims[d] - rank_out(d - 1)
            };
            let b = kernel - rank_out(d);
            betti.push(b as u64);
        }
        // reduce in degree 0, cross-checked against the component count
        let components = self.component_count();
        if betti[0] != components as u64 {
            return Err(Error::invariant(
                "component count disagrees with rank computation",
                &(betti[0], components),
            ));
        }
        betti[0] -= 1;
        Ok(betti)
    }
}

/// The chain complex of a simplicial complex (free-function form of
/// [`ChainComplex::of`]).
pub fn chain_complex_of(k: &SimplicialComplex) -> Result<ChainComplex> {
    ChainComplex::of(k)
}

/// Reduced Betti numbers of a chain complex over the given coefficients.
pub fn betti(c: &ChainComplex, coefficients: Coefficients) -> Result<Vec<u64>> {
    c.betti(coefficients)
}

/// Homology report: rational reduced Betti numbers, torsion invariant
/// factors per dimension, Euler characteristic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    /// Reduced Betti numbers over the rationals, index = dimension.
    pub betti: Vec<u64>,
    /// Torsion invariant factors (> 1) of the homology in each dimension.
    pub torsion: Vec<Vec<u64>>,
    /// Euler characteristic from face counts.
    pub euler: i64,
    pub coefficients: Coefficients,
}

impl HomologyReport {
    pub fn torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }
}

/// Computes Betti numbers over the rationals plus torsion from Smith normal
/// forms, with the engine self-checks:
///
/// * Euler characteristic from face counts equals the one from unreduced
///   Betti numbers,
/// * rational ranks agree with the integer ranks reported by SNF,
/// * GF(p) Betti numbers match rational ones when there is no torsion.
pub fn homology_report(k: &SimplicialComplex) -> Result<HomologyReport> {
    homology_report_seeded(k, DEFAULT_SEED)
}

pub fn homology_report_seeded(k: &SimplicialComplex, seed: u64) -> Result<HomologyReport> {
    let cc = ChainComplex::of(k)?;
    if cc.dims().is_empty() {
        return Ok(HomologyReport {
            betti: Vec::new(),
            torsion: Vec::new(),
            euler: 0,
            coefficients: Coefficients::Rationals,
        });
    }
    let betti = cc.betti_seeded(Coefficients::Rationals, seed)?;
    let n_dims = cc.dims().len();
    let mut torsion: Vec<Vec<u64>> = vec![Vec::new(); n_dims];
    for d in 0..n_dims {
        if let Some(bnd) = cc.boundary(d) {
            let factors = smith_normal_form(bnd)?;
            // integer rank from SNF can never fall below any modular rank
            let modular_rank = gfp::rank_mod_p(bnd, PRIME_POOL[0]);
            if factors.len() < modular_rank {
                return Err(Error::invariant(
                    "SNF rank below modular rank",
                    &(d, factors.len(), modular_rank),
                ));
            }
            torsion[d] = factors
                .iter()
                .filter(|f| **f > num_bigint::BigInt::from(1))
                .map(|f| {
                    f.to_u64().ok_or_else(|| {
                        Error::CapExceeded("torsion factor exceeds u64".into())
                    })
                })
                .collect::<Result<Vec<u64>>>()?;
        }
    }

    let euler = cc.euler();
    // chi(face counts) == chi(Betti), with the unreduced degree-0 number
    let mut chi_betti: i64 = 0;
    for (d, &b) in betti.iter().enumerate() {
        let unreduced = if d == 0 { b + 1 } else { b };
        chi_betti += if d % 2 == 0 { unreduced as i64 } else { -(unreduced as i64) };
    }
    if chi_betti != euler {
        return Err(Error::invariant(
            "euler characteristic mismatch between face counts and Betti numbers",
            &(euler, chi_betti, &betti),
        ));
    }
    // GF(p) agreement in the absence of torsion
    let torsion_free = torsion.iter().all(Vec::is_empty);
    let check_p = cc.betti_seeded(Coefficients::GfP(2), seed)?;
    for (d, (&bq, &bp)) in betti.iter().zip(check_p.iter()).enumerate() {
        if bp < bq {
            return Err(Error::invariant(
                "GF(p) Betti below rational Betti",
                &(d, bq, bp),
            ));
        }
        if torsion_free && bp != bq {
            return Err(Error::invariant(
                "GF(p) and rational Betti disagree without torsion",
                &(d, bq, bp),
            ));
        }
    }
    Ok(HomologyReport { betti, torsion, euler, coefficients: Coefficients::Rationals })
}

/// Betti numbers straight from a simplicial complex.
pub fn betti_of_complex(k: &SimplicialComplex, coefficients: Coefficients) -> Result<Vec<u64>> {
    ChainComplex::of(k)?.betti(coefficients)
}
