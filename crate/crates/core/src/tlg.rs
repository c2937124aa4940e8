//! The triangular line graph operator `T`, its siblings `L` and `Γ`, and
//! preimage certificates.
//!
//! For every operator here the derived vertex `i` stands for the `i`-th edge
//! of the source in [`Graph::edges`] order.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{ParseError, WitnessError};
use crate::graph::{ordered, Graph};
use crate::io::GraphJson;

/// A derived graph together with the edge bookkeeping that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TlgResult {
    pub source: Graph,
    pub derived: Graph,
    /// `edges[i]` is the source edge represented by derived vertex `i`.
    pub edges: Vec<(usize, usize)>,
}

impl TlgResult {
    pub fn vertex_of(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&ordered(u, v)).ok()
    }

    /// The operator's own output as a certificate.
    pub fn witness(&self) -> PreimageWitness {
        let map = self.edges.iter().enumerate().map(|(i, &(u, v))| (u, v, i));
        PreimageWitness::new(self.derived.clone(), self.source.clone(), map)
            .expect("operator output is a bijection")
    }
}

fn derive(g: &Graph, adjacent: impl Fn(usize, usize, usize) -> bool) -> TlgResult {
    let edges = g.edges();
    let index: BTreeMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut derived_edges = Vec::new();
    // Two edges meeting at `v` are `vu` and `vw`.
    for v in g.vertices() {
        let nb = g.neighbors(v);
        for (a, &u) in nb.iter().enumerate() {
            for &w in &nb[a + 1..] {
                if adjacent(v, u, w) {
                    derived_edges.push((index[&ordered(v, u)], index[&ordered(v, w)]));
                }
            }
        }
    }
    let derived = Graph::new(edges.len(), derived_edges).expect("derived ids are in range");
    TlgResult {
        source: g.clone(),
        derived,
        edges,
    }
}

/// `T(g)`: edges adjacent iff they share an endpoint and span a triangle.
pub fn triangular_line_graph(g: &Graph) -> TlgResult {
    derive(g, |_, u, w| g.has_edge(u, w))
}

/// `L(g)`: edges adjacent iff they share an endpoint.
pub fn line_graph(g: &Graph) -> TlgResult {
    derive(g, |_, _, _| true)
}

/// `Γ(g) = L(g) − E(T(g))`.
pub fn gallai_graph(g: &Graph) -> Graph {
    derive(g, |_, u, w| !g.has_edge(u, w)).derived
}

/// A candidate graph plus a bijection from its edges onto the target's
/// vertices. Construction checks the bijection; [`verify_certificate`]
/// checks adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreimageWitness {
    target: Graph,
    candidate: Graph,
    map: BTreeMap<(usize, usize), usize>,
    preimage: Vec<(usize, usize)>,
}

impl PreimageWitness {
    pub fn new<I>(target: Graph, candidate: Graph, map: I) -> Result<Self, WitnessError>
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        let n = target.vertex_count();
        let mut fwd = BTreeMap::new();
        let mut back: Vec<Option<(usize, usize)>> = vec![None; n];
        for (u, v, t) in map {
            if u >= candidate.vertex_count() || v >= candidate.vertex_count() || !candidate.has_edge(u, v) {
                return Err(WitnessError::NotAnEdge(u, v));
            }
            let e = ordered(u, v);
            if t >= n {
                return Err(WitnessError::UnknownTarget(t));
            }
            if fwd.insert(e, t).is_some() {
                return Err(WitnessError::EdgeMappedTwice(e.0, e.1));
            }
            if back[t].replace(e).is_some() {
                return Err(WitnessError::NotInjective(t));
            }
        }
        if fwd.len() != candidate.edge_count() {
            return Err(WitnessError::DomainSize(fwd.len(), candidate.edge_count()));
        }
        if fwd.len() != n {
            return Err(WitnessError::CodomainSize(fwd.len(), n));
        }
        Ok(PreimageWitness {
            target,
            candidate,
            map: fwd,
            preimage: back.into_iter().map(|e| e.expect("bijection")).collect(),
        })
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn candidate(&self) -> &Graph {
        &self.candidate
    }

    /// Target vertex assigned to candidate edge `uv`.
    pub fn image(&self, u: usize, v: usize) -> Option<usize> {
        self.map.get(&ordered(u, v)).copied()
    }

    /// Candidate edge assigned to target vertex `t`.
    pub fn preimage(&self, t: usize) -> (usize, usize) {
        self.preimage[t]
    }

    /// `(u, v, t)` triples in candidate edge order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.map.iter().map(|(&(u, v), &t)| (u, v, t))
    }

    pub fn verify(&self) -> bool {
        verify_certificate(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&WitnessJson::from(self)).expect("witness serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let j: WitnessJson = serde_json::from_str(text)?;
        PreimageWitness::try_from(j)
    }
}

/// True iff `T(candidate)`, read through the bijection, is exactly the target.
pub fn verify_certificate(w: &PreimageWitness) -> bool {
    let mut produced = BTreeSet::new();
    for t in w.candidate.triangles() {
        let [a, b, c] = t.edges().map(|(u, v)| w.map[&(u, v)]);
        produced.insert(ordered(a, b));
        produced.insert(ordered(a, c));
        produced.insert(ordered(b, c));
    }
    produced.len() == w.target.edge_count()
        && produced.iter().all(|&(a, b)| w.target.has_edge(a, b))
}

/// Serde mirror of the witness JSON format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessJson {
    pub target: GraphJson,
    pub candidate: GraphJson,
    pub map: Vec<[usize; 3]>,
}

impl From<&PreimageWitness> for WitnessJson {
    fn from(w: &PreimageWitness) -> Self {
        WitnessJson {
            target: GraphJson::from(&w.target),
            candidate: GraphJson::from(&w.candidate),
            map: w.entries().map(|(u, v, t)| [u, v, t]).collect(),
        }
    }
}

impl TryFrom<WitnessJson> for PreimageWitness {
    type Error = ParseError;

    fn try_from(j: WitnessJson) -> Result<Self, ParseError> {
        let target = Graph::try_from(j.target)?;
        let candidate = Graph::try_from(j.candidate)?;
        PreimageWitness::new(target, candidate, j.map.into_iter().map(|[u, v, t]| (u, v, t)))
            .map_err(|e| ParseError::Schema(e.to_string()))
    }
}

/// True iff every triangle of `h` with an edge inside `subset` lies inside
/// `subset`. Ids outside `h` make the answer false.
pub fn is_triangle_induced(h: &Graph, subset: &[usize]) -> bool {
    let mut inside = vec![false; h.vertex_count()];
    for &v in subset {
        match inside.get_mut(v) {
            Some(slot) => *slot = true,
            None => return false,
        }
    }
    subset.iter().all(|&u| {
        h.neighbors(u)
            .iter()
            .filter(|&&v| inside[v] && v > u)
            .all(|&v| h.common_neighbors(u, v).iter().all(|&w| inside[w]))
    })
}

/// Smallest triangle-induced superset of `seed`, sorted.
pub fn triangle_closure(h: &Graph, seed: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; h.vertex_count()];
    let mut stack: Vec<usize> = Vec::new();
    for &v in seed {
        if !inside[v] {
            inside[v] = true;
            stack.push(v);
        }
    }
    while let Some(u) = stack.pop() {
        for &v in h.neighbors(u) {
            if !inside[v] {
                continue;
            }
            for w in h.common_neighbors(u, v) {
                if !inside[w] {
                    inside[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    h.vertices().filter(|&v| inside[v]).collect()
}

/// A restricted witness with the id maps back into the original one.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub witness: PreimageWitness,
    /// New target id -> original target id.
    pub target_back: Vec<usize>,
    /// New candidate id -> original candidate id.
    pub candidate_back: Vec<usize>,
}

/// Restricts a valid witness to a triangle-induced subset of its target.
/// The new candidate is the subgraph spanned by the preimage edges of
/// `subset`, with vertices kept in increasing original order.
pub fn restrict_preimage_with_maps(
    w: &PreimageWitness,
    subset: &[usize],
) -> Result<Restriction, WitnessError> {
    if !is_triangle_induced(&w.target, subset) {
        return Err(WitnessError::NotTriangleInduced);
    }
    if !w.verify() {
        return Err(WitnessError::Invalid);
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let (target, target_back) = w.target.induced_subgraph(&sorted)?;
    let kept: BTreeSet<usize> = sorted.iter().flat_map(|&t| {
        let (u, v) = w.preimage[t];
        [u, v]
    }).collect();
    let candidate_back: Vec<usize> = kept.into_iter().collect();
    let local: BTreeMap<usize, usize> =
        candidate_back.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges = Vec::with_capacity(sorted.len());
    let mut map = Vec::with_capacity(sorted.len());
    for (new_t, &t) in sorted.iter().enumerate() {
        let (u, v) = w.preimage[t];
        let (a, b) = (local[&u], local[&v]);
        edges.push((a, b));
        map.push((a, b, new_t));
    }
    let labels: Vec<_> = candidate_back
        .iter()
        .enumerate()
        .filter_map(|(i, v)| w.candidate.label(*v).map(|l| (i, l.clone())))
        .collect();
    let candidate = Graph::new(candidate_back.len(), edges)?.with_labels(labels)?;
    let witness = PreimageWitness::new(target, candidate, map)?;
    Ok(Restriction {
        witness,
        target_back,
        candidate_back,
    })
}

pub fn restrict_preimage(w: &PreimageWitness, subset: &[usize]) -> Result<PreimageWitness, WitnessError> {
    restrict_preimage_with_maps(w, subset).map(|r| r.witness)
}
