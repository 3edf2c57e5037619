//! Builders for the field-model posets and complexes: the common basis
//! complex CB, the partial-decomposition poset PD with its full-decomposition
//! subposet D, the subspace poset FC, the basis-compatible pair poset FCD,
//! and the comparison map phi from subdivided PD to FCD.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use super::common_basis::CommonBasisOracle;
use super::decomp::FieldDecomposition;
use super::gf::Gf;
use super::subspace::{enumerate_proper_subspaces, rref, Subspace};
use crate::complex::{Face, SimplicialComplex};
use crate::poset::{chain_poset_indexed, Poset, PosetMap};
use crate::{Error, Result};

/// Enforces the model caps: n <= 3 with q in {2, 3}, or (n, q) = (4, 2).
fn check_caps(n: u8, q: u8) -> Result<()> {
    let ok = matches!((n, q), (2..=3, 2..=3) | (4, 2));
    if ok {
        Ok(())
    } else {
        Err(Error::CapExceeded(format!(
            "field model caps allow n in 2..=3 with q in 2..=3, or (n,q) = (4,2); got ({n},{q})"
        )))
    }
}

/// Shared context: all proper subspaces (the vertex set), containment masks,
/// and the common-basis oracle for one (n, q).
pub struct FieldContext {
    pub n: u8,
    pub q: u8,
    gf: Gf,
    /// all proper nonzero subspaces, sorted canonically; index = vertex id
    subspaces: Vec<Subspace>,
    index: HashMap<Subspace, u16>,
    /// contains[i] bit j set iff subspace j is contained in subspace i
    contains: Vec<u128>,
    oracle: CommonBasisOracle,
}

impl FieldContext {
    pub fn new(n: u8, q: u8) -> Result<FieldContext> {
        check_caps(n, q)?;
        let gf = Gf::new(q)?;
        let subspaces = enumerate_proper_subspaces(n, q)?;
        if subspaces.len() > 128 {
            return Err(Error::CapExceeded("more than 128 proper subspaces".into()));
        }
        let index: HashMap<Subspace, u16> =
            subspaces.iter().enumerate().map(|(i, s)| (s.clone(), i as u16)).collect();
        let contains: Vec<u128> = subspaces
            .iter()
            .map(|big| {
                let mut mask = 0u128;
                for (j, small) in subspaces.iter().enumerate() {
                    if small.is_subspace_of(&gf, big) {
                        mask |= 1 << j;
                    }
                }
                mask
            })
            .collect();
        let oracle = CommonBasisOracle::new(n, q)?;
        Ok(FieldContext { n, q, gf, subspaces, index, contains, oracle })
    }

    pub fn gf(&self) -> &Gf {
        &self.gf
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn subspace_id(&self, s: &Subspace) -> Option<u16> {
        self.index.get(s).copied()
    }
}

/// A partial decomposition as sorted subspace ids, plus cached aggregates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PdElem {
    /// sorted ids of the parts
    pub parts: Vec<u16>,
    /// sum of part dimensions (= dimension of the span)
    pub dim_sum: u8,
}

impl PdElem {
    fn mask(&self) -> u128 {
        self.parts.iter().fold(0u128, |m, &i| m | 1 << i)
    }

    pub fn label(&self, ctx: &FieldContext) -> String {
        let parts: Vec<String> =
            self.parts.iter().map(|&i| ctx.subspaces[i as usize].label()).collect();
        parts.join("|")
    }

    pub fn to_decomposition(&self, ctx: &FieldContext) -> FieldDecomposition {
        let set: BTreeSet<Subspace> =
            self.parts.iter().map(|&i| ctx.subspaces[i as usize].clone()).collect();
        FieldDecomposition::new(&ctx.gf, set).expect("stored families are independent")
    }
}

/// Enumerates all partial decompositions (families of jointly independent
/// proper subspaces), sorted.
pub fn enumerate_pd_elements(ctx: &FieldContext) -> Vec<PdElem> {
    let n = ctx.n as usize;
    let mut out: Vec<PdElem> = Vec::new();
    // DFS over sorted subspace indices, keeping the span's RREF rows
    fn extend(
        ctx: &FieldContext,
        first_unused: u16,
        chosen: &mut Vec<u16>,
        span_rows: &[Vec<u8>],
        dim_sum: usize,
        n: usize,
        out: &mut Vec<PdElem>,
    ) {
        for i in first_unused..ctx.subspaces.len() as u16 {
            let s = &ctx.subspaces[i as usize];
            let total = dim_sum + s.dim();
            if total > n {
                continue;
            }
            let mut vectors = span_rows.to_vec();
            vectors.extend(s.rows().iter().cloned());
            let reduced = rref(&ctx.gf, n, &vectors);
            if reduced.len() != total {
                continue; // not independent from the current span
            }
            chosen.push(i);
            out.push(PdElem { parts: chosen.clone(), dim_sum: total as u8 });
            if total < n {
                extend(ctx, i + 1, chosen, &reduced, total, n, out);
            }
            chosen.pop();
        }
    }
    let mut chosen = Vec::new();
    extend(ctx, 0, &mut chosen, &Vec::new(), 0, n, &mut out);
    out.sort();
    out
}

/// Refinement: every part of `c` is contained in some part of `d`.
fn refines(ctx: &FieldContext, c: &PdElem, d: &PdElem) -> bool {
    let union: u128 = d.parts.iter().fold(0u128, |m, &i| m | ctx.contains[i as usize]);
    c.mask() & union == c.mask()
}

/// The poset of partial decompositions under refinement.
pub fn build_pd(n: u8, q: u8) -> Result<Poset> {
    let ctx = FieldContext::new(n, q)?;
    Ok(build_pd_in(&ctx).0)
}

pub(crate) fn build_pd_in(ctx: &FieldContext) -> (Poset, Vec<PdElem>) {
    let elems = enumerate_pd_elements(ctx);
    let labels: Vec<String> = elems.iter().map(|e| e.label(ctx)).collect();
    let poset = Poset::from_comparator(labels, |a, b| refines(ctx, &elems[a], &elems[b]))
        .expect("refinement is a partial order");
    (poset, elems)
}

/// The subposet of full decompositions.
pub fn build_d(n: u8, q: u8) -> Result<Poset> {
    let ctx = FieldContext::new(n, q)?;
    let (pd, elems) = build_pd_in(&ctx);
    let full_ids: Vec<u32> = elems
        .iter()
        .enumerate()
        .filter(|(_, e)| e.dim_sum == ctx.n)
        .map(|(i, _)| i as u32)
        .collect();
    Ok(pd.induced(&full_ids).0)
}

/// The poset of proper nonzero subspaces under inclusion.
pub fn build_fc(n: u8, q: u8) -> Result<Poset> {
    let ctx = FieldContext::new(n, q)?;
    let labels: Vec<String> = ctx.subspaces.iter().map(Subspace::label).collect();
    Poset::from_comparator(labels, |a, b| ctx.contains[b] >> a & 1 == 1)
}

/// The common basis complex: vertices are proper nonzero subspaces, and a
/// family spans a simplex iff it has a common basis. Built as the union of
/// one full simplex per unordered line-basis.
pub fn build_cb(n: u8, q: u8) -> Result<SimplicialComplex> {
    let ctx = FieldContext::new(n, q)?;
    build_cb_in(&ctx)
}

pub(crate) fn build_cb_in(ctx: &FieldContext) -> Result<SimplicialComplex> {
    let n = ctx.n as usize;
    let vertices: Vec<(u32, String)> = ctx
        .subspaces
        .iter()
        .enumerate()
        .map(|(i, s)| (i as u32, s.label()))
        .collect();
    // one maximal simplex per basis: vertices are spans of the 2^n - 2
    // non-empty proper subsets of the basis
    let mut maximal: HashSet<Face> = HashSet::new();
    for basis_id in 0..ctx.oracle.basis_count() {
        let members = ctx.oracle.basis_vectors(basis_id);
        let mut simplex: Face = Vec::with_capacity((1 << n) - 2);
        for mask in 1u32..((1 << n) - 1) {
            let chosen: Vec<Vec<u8>> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| members[i].clone())
                .collect();
            let span = Subspace::from_spanning(&ctx.gf, ctx.n, &chosen)?;
            let id = ctx.index.get(&span).copied().ok_or_else(|| {
                Error::invariant("span of basis subset is not a known proper subspace", &span)
            })?;
            simplex.push(id as u32);
        }
        simplex.sort_unstable();
        simplex.dedup();
        if simplex.len() != (1 << n) - 2 {
            return Err(Error::invariant(
                "basis simplex has repeated spans",
                &simplex,
            ));
        }
        maximal.insert(simplex);
    }
    let maximal: Vec<Face> = maximal.into_iter().collect();
    SimplicialComplex::face_closure_labeled(vertices, &maximal)
}

/// An element of the FCD poset: a factor coordinate (a proper subspace, or
/// the full-space marker) and a decomposition coordinate (a full
/// decomposition, or the empty marker). The pair (full, empty) is excluded;
/// a pair of non-markers must admit a common basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FcdElement {
    pub factor: Option<Subspace>,
    pub decomposition: Option<FieldDecomposition>,
}

impl FcdElement {
    pub fn label(&self) -> String {
        let f = self.factor.as_ref().map_or("*".to_string(), Subspace::label);
        let d = self
            .decomposition
            .as_ref()
            .map_or("-".to_string(), FieldDecomposition::label);
        format!("({f};{d})")
    }
}

/// Internal FCD element key: subspace id (None = full space marker) and full
/// decomposition id into the PD element list (None = empty marker).
type FcdKey = (Option<u16>, Option<u32>);

pub(crate) struct FcdData {
    pub poset: Poset,
    pub keys: Vec<FcdKey>,
    pub key_index: HashMap<FcdKey, u32>,
}

pub(crate) fn build_fcd_in(
    ctx: &mut FieldContext,
    pd_elems: &[PdElem],
) -> Result<FcdData> {
    let full_ids: Vec<u32> = pd_elems
        .iter()
        .enumerate()
        .filter(|(_, e)| e.dim_sum == ctx.n)
        .map(|(i, _)| i as u32)
        .collect();
    let mut keys: Vec<FcdKey> = Vec::new();
    for a in 0..ctx.subspaces.len() as u16 {
        keys.push((Some(a), None));
    }
    for &d in &full_ids {
        keys.push((None, Some(d)));
    }
    for a in 0..ctx.subspaces.len() as u16 {
        for &d in &full_ids {
            let mut family: BTreeSet<Subspace> = pd_elems[d as usize]
                .parts
                .iter()
                .map(|&i| ctx.subspaces[i as usize].clone())
                .collect();
            family.insert(ctx.subspaces[a as usize].clone());
            let (compatible, _) = ctx.oracle.decide(&family)?;
            if compatible {
                keys.push((Some(a), Some(d)));
            }
        }
    }
    keys.sort_by_key(|(f, d)| (f.map_or(u16::MAX, |x| x), d.map_or(u32::MAX, |x| x)));
    let key_index: HashMap<FcdKey, u32> =
        keys.iter().enumerate().map(|(i, k)| (*k, i as u32)).collect();

    let label_of = |k: &FcdKey| -> String {
        let f = k.0.map_or("*".to_string(), |a| ctx.subspaces[a as usize].label());
        let d = k.1.map_or("-".to_string(), |d| pd_elems[d as usize].label(ctx));
        format!("({f};{d})")
    };
    let labels: Vec<String> = keys.iter().map(label_of).collect();

    // order: factor by reverse inclusion (full space is the minimum),
    // decomposition by refinement (empty is the minimum)
    let factor_leq = |f1: Option<u16>, f2: Option<u16>| -> bool {
        match (f1, f2) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => ctx.contains[a as usize] >> b & 1 == 1,
        }
    };
    let decomp_leq = |d1: Option<u32>, d2: Option<u32>| -> bool {
        match (d1, d2) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(x), Some(y)) => refines(ctx, &pd_elems[x as usize], &pd_elems[y as usize]),
        }
    };
    let poset = Poset::from_comparator(labels, |i, j| {
        factor_leq(keys[i].0, keys[j].0) && decomp_leq(keys[i].1, keys[j].1)
    })?;
    Ok(FcdData { poset, keys, key_index })
}

/// The FCD poset of basis-compatible pairs.
pub fn build_fcd(n: u8, q: u8) -> Result<Poset> {
    let mut ctx = FieldContext::new(n, q)?;
    let (_, pd_elems) = build_pd_in(&ctx);
    Ok(build_fcd_in(&mut ctx, &pd_elems)?.poset)
}

/// FCD elements in poset order, as public domain values.
pub fn build_fcd_elements(n: u8, q: u8) -> Result<Vec<FcdElement>> {
    let mut ctx = FieldContext::new(n, q)?;
    let (_, pd_elems) = build_pd_in(&ctx);
    let data = build_fcd_in(&mut ctx, &pd_elems)?;
    Ok(data
        .keys
        .iter()
        .map(|(f, d)| FcdElement {
            factor: f.map(|a| ctx.subspaces[a as usize].clone()),
            decomposition: d.map(|i| pd_elems[i as usize].to_decomposition(&ctx)),
        })
        .collect())
}

/// The map phi from the chain poset of PD to FCD, with all the intermediate
/// data needed to run fiber checks.
pub struct PhiData {
    pub pd: Poset,
    pub sd_pd: Poset,
    /// chains[i] = sorted PD element ids forming sd element i
    pub chains: Vec<Vec<u32>>,
    pub fcd: Poset,
    /// assignment[i] = FCD element hit by chain i
    pub assignment: Vec<u32>,
}

impl PhiData {
    pub fn map(&self) -> PosetMap<'_> {
        PosetMap::new(&self.sd_pd, &self.fcd, self.assignment.clone())
            .expect("assignment is total by construction")
    }
}

/// Builds phi: for a chain x in PD, the factor coordinate is the span of the
/// minimal non-full element (or the full-space marker when all elements are
/// full), and the decomposition coordinate is the maximal full decomposition
/// in x (or the empty marker when there is none).
pub fn phi_map(n: u8, q: u8) -> Result<PhiData> {
    let mut ctx = FieldContext::new(n, q)?;
    let (pd, pd_elems) = build_pd_in(&ctx);
    let (sd_pd, chains) = chain_poset_indexed(&pd)?;
    let fcd_data = build_fcd_in(&mut ctx, &pd_elems)?;

    let mut assignment = Vec::with_capacity(chains.len());
    for chain in &chains {
        let (mut non_full, mut full): (Vec<u32>, Vec<u32>) = (Vec::new(), Vec::new());
        for &e in chain {
            if pd_elems[e as usize].dim_sum == ctx.n {
                full.push(e);
            } else {
                non_full.push(e);
            }
        }
        let factor: Option<u16> = if non_full.is_empty() {
            None
        } else {
            let min = *non_full
                .iter()
                .find(|&&m| non_full.iter().all(|&o| pd.leq(m as usize, o as usize)))
                .expect("a chain has a minimum");
            let span = pd_elems[min as usize].to_decomposition(&ctx).span(&ctx.gf);
            Some(*ctx.index.get(&span).ok_or_else(|| {
                Error::invariant("span of a non-full element is not proper", &span)
            })?)
        };
        let decomp: Option<u32> = if full.is_empty() {
            None
        } else {
            Some(
                *full
                    .iter()
                    .find(|&&m| full.iter().all(|&o| pd.leq(o as usize, m as usize)))
                    .expect("a chain has a maximum"),
            )
        };
        let key = (factor, decomp);
        let target = fcd_data.key_index.get(&key).copied().ok_or_else(|| {
            Error::invariant("phi image is not basis compatible", &key)
        })?;
        assignment.push(target);
    }
    Ok(PhiData { pd, sd_pd, chains, fcd: fcd_data.poset, assignment })
}
