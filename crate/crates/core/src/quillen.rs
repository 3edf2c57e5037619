//! Machine shadow of the Quillen fiber theorem: an order-preserving map whose
//! lower fibers all have vanishing reduced homology passes; any fiber with
//! nonzero reduced Betti numbers or torsion (or an empty fiber, which is not
//! contractible) fails.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::homology::homology_report;
use crate::poset::PosetMap;
use crate::Result;

/// Outcome of checking one lower fiber.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiberRecord {
    /// Target element id.
    pub target: u32,
    pub target_label: String,
    /// Number of source elements in the fiber.
    pub fiber_size: usize,
    /// Reduced Betti numbers of the fiber's order complex.
    pub reduced_betti: Vec<u64>,
    /// Torsion invariant factors per dimension.
    pub torsion: Vec<Vec<u64>>,
    pub pass: bool,
}

/// Per-target-element fiber records for a poset map.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuillenReport {
    pub order_preserving: bool,
    pub fibers: Vec<FiberRecord>,
}

impl QuillenReport {
    pub fn all_pass(&self) -> bool {
        self.order_preserving && self.fibers.iter().all(|f| f.pass)
    }

    pub fn failures(&self) -> Vec<&FiberRecord> {
        self.fibers.iter().filter(|f| !f.pass).collect()
    }
}

/// Checks every lower fiber of `f`: extracts the fiber, takes its order
/// complex, and requires vanishing reduced homology (Betti and torsion).
pub fn check_quillen_fibers(f: &PosetMap<'_>) -> Result<QuillenReport> {
    let order_preserving = f.is_order_preserving();
    let targets: Vec<u32> = (0..f.target.len() as u32).collect();
    let mut fibers: Vec<FiberRecord> = targets
        .par_iter()
        .map(|&q| -> Result<FiberRecord> {
            let fiber = f.lower_fiber(q)?;
            let fiber_size = fiber.len();
            let (reduced_betti, torsion, pass) = if fiber_size == 0 {
                // the empty poset has no contractible realization
                (Vec::new(), Vec::new(), false)
            } else {
                let oc = fiber.order_complex()?;
                let report = homology_report(&oc)?;
                let pass = report.betti.iter().all(|&b| b == 0) && report.torsion_free();
                (report.betti, report.torsion, pass)
            };
            Ok(FiberRecord {
                target: q,
                target_label: f.target.label(q as usize).to_string(),
                fiber_size,
                reduced_betti,
                torsion,
                pass,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    fibers.sort_by_key(|r| r.target);
    Ok(QuillenReport { order_preserving, fibers })
}
