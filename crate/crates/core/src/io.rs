//! On-disk JSON formats: sc-v1 (simplicial complexes), poset-v1 (posets via
//! Hasse diagrams), lg-v1 (labeled dual graphs), homology-v1 (reports).
//! Serialization is deterministic: fixed field order, sorted collections.

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::homology::{Coefficients, HomologyReport};
use crate::poset::Poset;
use crate::spheres::LabeledGraph;
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: u32,
    pub label: String,
}

/// {"format":"sc-v1","vertices":[{"id":..,"label":..}],"facets":[[..],..]}
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScV1 {
    pub format: String,
    pub vertices: Vec<VertexJson>,
    pub facets: Vec<Vec<u32>>,
}

impl ScV1 {
    pub fn from_complex(k: &SimplicialComplex) -> ScV1 {
        ScV1 {
            format: "sc-v1".into(),
            vertices: k
                .vertex_ids()
                .iter()
                .map(|&id| VertexJson { id, label: k.label_of(id).unwrap_or("").to_string() })
                .collect(),
            facets: k.maximal_faces(),
        }
    }

    pub fn into_complex(self) -> Result<SimplicialComplex> {
        if self.format != "sc-v1" {
            return Err(Error::InvalidInput(format!("expected sc-v1, got {:?}", self.format)));
        }
        let vertices: Vec<(u32, String)> =
            self.vertices.into_iter().map(|v| (v.id, v.label)).collect();
        SimplicialComplex::face_closure_labeled(vertices, &self.facets)
    }
}

/// {"format":"poset-v1","elements":[...],"hasse":[[a,b],...]}
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetV1 {
    pub format: String,
    pub elements: Vec<VertexJson>,
    pub hasse: Vec<(u32, u32)>,
}

impl PosetV1 {
    pub fn from_poset(p: &Poset) -> PosetV1 {
        PosetV1 {
            format: "poset-v1".into(),
            elements: (0..p.len() as u32)
                .map(|i| VertexJson { id: i, label: p.label(i as usize).to_string() })
                .collect(),
            hasse: p.hasse_edges(),
        }
    }

    /// Rebuilds the poset as the reflexive-transitive closure of the Hasse
    /// relation (validated).
    pub fn into_poset(self) -> Result<Poset> {
        if self.format != "poset-v1" {
            return Err(Error::InvalidInput(format!("expected poset-v1, got {:?}", self.format)));
        }
        let n = self.elements.len();
        for v in &self.elements {
            if v.id as usize >= n {
                return Err(Error::InvalidInput("element ids must be 0..len".into()));
            }
        }
        let mut labels = vec![String::new(); n];
        for v in self.elements {
            labels[v.id as usize] = v.label;
        }
        // transitive closure by iterated relaxation
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in &self.hasse {
            if a as usize >= n || b as usize >= n {
                return Err(Error::InvalidInput("hasse pair out of range".into()));
            }
            leq[a as usize][b as usize] = true;
        }
        loop {
            let mut changed = false;
            for a in 0..n {
                for b in 0..n {
                    if leq[a][b] {
                        for c in 0..n {
                            if leq[b][c] && !leq[a][c] {
                                leq[a][c] = true;
                                changed = true;
                            }
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Poset::from_comparator(labels, |a, b| leq[a][b])
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LgVertexJson {
    pub id: u32,
    pub genus: u32,
}

/// {"format":"lg-v1","n":..,"base":..,"vertices":[..],"edges":[[a,b],..]}
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LgV1 {
    pub format: String,
    pub n: u32,
    pub base: u32,
    pub vertices: Vec<LgVertexJson>,
    pub edges: Vec<(u32, u32)>,
}

impl LgV1 {
    pub fn from_graph(g: &LabeledGraph) -> LgV1 {
        LgV1 {
            format: "lg-v1".into(),
            n: g.n(),
            base: g.base(),
            vertices: (0..g.vertex_count() as u32)
                .map(|id| LgVertexJson { id, genus: g.genus(id) })
                .collect(),
            edges: g.edges().to_vec(),
        }
    }

    pub fn into_graph(self) -> Result<LabeledGraph> {
        if self.format != "lg-v1" {
            return Err(Error::InvalidInput(format!("expected lg-v1, got {:?}", self.format)));
        }
        let count = self.vertices.len();
        let mut genus = vec![0u32; count];
        for v in &self.vertices {
            if v.id as usize >= count {
                return Err(Error::InvalidInput("vertex ids must be 0..len".into()));
            }
            genus[v.id as usize] = v.genus;
        }
        LabeledGraph::new(genus, self.base, self.edges, self.n)
    }
}

/// Optional provenance carried by homology reports so bundles can key rows.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ReportMeta {
    pub model: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", rename = "L")]
    pub l: Option<u32>,
}

/// {"format":"homology-v1","betti":[..],"torsion":[[..],..],"euler":..,
///  "coefficients":"Q"|"GF(p)"}, plus optional meta.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomologyV1 {
    pub format: String,
    pub betti: Vec<u64>,
    pub torsion: Vec<Vec<u64>>,
    pub euler: i64,
    pub coefficients: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<ReportMeta>,
}

impl HomologyV1 {
    pub fn from_report(r: &HomologyReport, meta: Option<ReportMeta>) -> HomologyV1 {
        HomologyV1 {
            format: "homology-v1".into(),
            betti: r.betti.clone(),
            torsion: r.torsion.clone(),
            euler: r.euler,
            coefficients: r.coefficients.to_string(),
            meta,
        }
    }

    /// Betti-only report over GF(p) (no torsion data).
    pub fn from_betti(
        betti: Vec<u64>,
        euler: i64,
        coefficients: Coefficients,
        meta: Option<ReportMeta>,
    ) -> HomologyV1 {
        let dims = betti.len();
        HomologyV1 {
            format: "homology-v1".into(),
            betti,
            torsion: vec![Vec::new(); dims],
            euler,
            coefficients: coefficients.to_string(),
            meta,
        }
    }

    /// CSV rendering, one row per dimension.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("dimension,reduced_betti,torsion,euler,coefficients\n");
        for (d, b) in self.betti.iter().enumerate() {
            let torsion = if self.torsion.get(d).is_none_or(|t| t.is_empty()) {
                "-".to_string()
            } else {
                self.torsion[d]
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(";")
            };
            out.push_str(&format!(
                "{d},{b},{torsion},{},{}\n",
                self.euler, self.coefficients
            ));
        }
        out
    }
}

/// {"format":"verify-v1", ...verifier report fields...}
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyV1 {
    pub format: String,
    #[serde(flatten)]
    pub report: crate::spheres::VerifyReport,
}

impl VerifyV1 {
    pub fn from_report(report: crate::spheres::VerifyReport) -> VerifyV1 {
        VerifyV1 { format: "verify-v1".into(), report }
    }
}

/// Serializes any of the format structs with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
