//! Finite abstract simplicial complexes.
//!
//! Faces are stored as sorted vertex-id lists in a hash set, so subset tests
//! and dedup are O(face size). Vertex ids are opaque `u32`s with display
//! labels; they need not be contiguous (JSON round-trips preserve them).

use std::collections::{HashMap, HashSet};

use itertools::Itertools;

use crate::{Error, Result};

/// A face: sorted list of distinct vertex ids.
pub type Face = Vec<u32>;

/// Face-closed family of non-empty faces over a labeled vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    /// Sorted vertex ids.
    vertex_ids: Vec<u32>,
    /// Labels, parallel to `vertex_ids`.
    labels: Vec<String>,
    faces: HashSet<Face>,
}

impl SimplicialComplex {
    /// Builds a complex from explicit vertices and faces, checking all
    /// invariants (distinct ids, faces reference vertices, face-closure).
    pub fn new(vertices: Vec<(u32, String)>, faces: Vec<Face>) -> Result<Self> {
        let mut vs = vertices;
        vs.sort_by_key(|(id, _)| *id);
        if vs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidInput("duplicate vertex id".into()));
        }
        let vertex_ids: Vec<u32> = vs.iter().map(|(id, _)| *id).collect();
        let labels: Vec<String> = vs.into_iter().map(|(_, l)| l).collect();
        let idset: HashSet<u32> = vertex_ids.iter().copied().collect();
        let mut set: HashSet<Face> = HashSet::new();
        for mut f in faces {
            f.sort_unstable();
            if f.is_empty() {
                return Err(Error::InvalidInput("empty face".into()));
            }
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput(format!("duplicate vertex within face {f:?}")));
            }
            if f.iter().any(|v| !idset.contains(v)) {
                return Err(Error::InvalidInput(format!("face {f:?} references unknown vertex")));
            }
            set.insert(f);
        }
        let complex = SimplicialComplex { vertex_ids, labels, faces: set };
        complex.check_face_closed()?;
        Ok(complex)
    }

    /// Builder used by construction routines that produce face-closed sets by
    /// design; only cheap checks are run here.
    pub(crate) fn from_closed_parts(
        vertices: Vec<(u32, String)>,
        faces: HashSet<Face>,
    ) -> Result<Self> {
        let mut vs = vertices;
        vs.sort_by_key(|(id, _)| *id);
        if vs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidInput("duplicate vertex id".into()));
        }
        let vertex_ids = vs.iter().map(|(id, _)| *id).collect();
        let labels = vs.into_iter().map(|(_, l)| l).collect();
        Ok(SimplicialComplex { vertex_ids, labels, faces })
    }

    fn check_face_closed(&self) -> Result<()> {
        for f in &self.faces {
            if f.len() > 1 {
                for sub in f.iter().copied().combinations(f.len() - 1) {
                    if !self.faces.contains(&sub) {
                        return Err(Error::InvalidInput(format!(
                            "not face-closed: {sub:?} missing under {f:?}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The face closure of a set of maximal faces: exactly all non-empty
    /// subsets of the given faces.
    pub fn face_closure(maximal_faces: &[Face]) -> Result<Self> {
        let mut vertex_ids: Vec<u32> = Vec::new();
        for f in maximal_faces {
            let mut sorted = f.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput(format!("duplicate vertex within face {f:?}")));
            }
            vertex_ids.extend_from_slice(&sorted);
        }
        vertex_ids.sort_unstable();
        vertex_ids.dedup();
        let vertices = vertex_ids.iter().map(|v| (*v, format!("v{v}"))).collect();
        Self::face_closure_labeled(vertices, maximal_faces)
    }

    /// Face closure with caller-provided vertex labels.
    pub fn face_closure_labeled(
        vertices: Vec<(u32, String)>,
        maximal_faces: &[Face],
    ) -> Result<Self> {
        let mut faces: HashSet<Face> = HashSet::new();
        for f in maximal_faces {
            let mut sorted = f.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput(format!("duplicate vertex within face {f:?}")));
            }
            insert_all_subsets(&sorted, &mut faces);
        }
        let complex = Self::from_closed_parts(vertices, faces)?;
        for f in &complex.faces {
            if f.iter().any(|v| complex.vertex_ids.binary_search(v).is_err()) {
                return Err(Error::InvalidInput(format!("face {f:?} references unknown vertex")));
            }
        }
        Ok(complex)
    }

    pub fn vertex_ids(&self) -> &[u32] {
        &self.vertex_ids
    }

    pub fn label_of(&self, id: u32) -> Option<&str> {
        let idx = self.vertex_ids.binary_search(&id).ok()?;
        Some(&self.labels[idx])
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn contains_face(&self, face: &[u32]) -> bool {
        let mut f = face.to_vec();
        f.sort_unstable();
        self.faces.contains(&f)
    }

    /// Dimension: size of the largest face minus one. `None` for the empty
    /// complex.
    pub fn dimension(&self) -> Option<usize> {
        self.faces.iter().map(|f| f.len() - 1).max()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// All faces in deterministic order (by dimension, then lexicographic).
    pub fn faces_sorted(&self) -> Vec<Face> {
        let mut out: Vec<Face> = self.faces.iter().cloned().collect();
        out.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Faces of the given dimension, sorted lexicographically.
    pub fn faces_of_dim(&self, d: usize) -> Vec<Face> {
        let mut out: Vec<Face> =
            self.faces.iter().filter(|f| f.len() == d + 1).cloned().collect();
        out.sort_unstable();
        out
    }

    /// Number of faces per dimension.
    pub fn face_counts(&self) -> Vec<usize> {
        let dim = match self.dimension() {
            Some(d) => d,
            None => return Vec::new(),
        };
        let mut counts = vec![0usize; dim + 1];
        for f in &self.faces {
            counts[f.len() - 1] += 1;
        }
        counts
    }

    /// The faces not properly contained in any other face.
    pub fn maximal_faces(&self) -> Vec<Face> {
        let mut out: Vec<Face> = self
            .faces
            .iter()
            .filter(|f| {
                // f is maximal iff no extension by one vertex is a face
                !self.vertex_ids.iter().any(|v| {
                    if f.binary_search(v).is_ok() {
                        return false;
                    }
                    let mut ext = (*f).clone();
                    ext.push(*v);
                    ext.sort_unstable();
                    self.faces.contains(&ext)
                })
            })
            .cloned()
            .collect();
        out.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Join of two complexes. Vertex ids are re-keyed: `self` keeps its ids,
    /// `other`'s ids are shifted past `self`'s maximum.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let offset = self.vertex_ids.last().map_or(0, |m| m + 1);
        let mut vertices: Vec<(u32, String)> = self
            .vertex_ids
            .iter()
            .zip(&self.labels)
            .map(|(id, l)| (*id, l.clone()))
            .collect();
        vertices.extend(
            other
                .vertex_ids
                .iter()
                .zip(&other.labels)
                .map(|(id, l)| (*id + offset, l.clone())),
        );
        let mut faces: HashSet<Face> = HashSet::new();
        let left: Vec<Face> = self.faces.iter().cloned().collect();
        let right: Vec<Face> =
            other.faces.iter().map(|f| f.iter().map(|v| v + offset).collect()).collect();
        for f in &left {
            faces.insert(f.clone());
        }
        for g in &right {
            faces.insert(g.clone());
        }
        for f in &left {
            for g in &right {
                let mut u = f.clone();
                u.extend_from_slice(g);
                u.sort_unstable();
                faces.insert(u);
            }
        }
        SimplicialComplex::from_closed_parts(vertices, faces)
    }

    /// Cone over the complex: join with a single new vertex.
    pub fn cone(&self) -> Result<SimplicialComplex> {
        let apex = SimplicialComplex::face_closure(&[vec![0]])?;
        self.join(&apex)
    }

    /// Relabels vertices through `map`, which must be injective on vertex ids.
    pub fn relabel_vertices(&self, map: &HashMap<u32, u32>) -> Result<SimplicialComplex> {
        let vertices: Vec<(u32, String)> = self
            .vertex_ids
            .iter()
            .zip(&self.labels)
            .map(|(id, l)| (*map.get(id).unwrap_or(id), l.clone()))
            .collect();
        let faces = self
            .faces
            .iter()
            .map(|f| {
                let mut g: Face = f.iter().map(|v| *map.get(v).unwrap_or(v)).collect();
                g.sort_unstable();
                g
            })
            .collect();
        SimplicialComplex::from_closed_parts(vertices, faces)
    }
}

fn insert_all_subsets(face: &[u32], out: &mut HashSet<Face>) {
    // Subsets via bitmask for short faces, recursion otherwise.
    let k = face.len();
    if k <= 20 {
        for mask in 1u32..(1 << k) {
            let sub: Face = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| face[i]).collect();
            out.insert(sub);
        }
    } else {
        // Faces this large do not occur at desk scale, but stay correct.
        for sub in (1..=k).flat_map(|len| face.iter().copied().combinations(len)) {
            out.insert(sub);
        }
    }
}
