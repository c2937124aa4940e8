//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! A [`Graph`] is immutable once built. Vertex labels are an optional overlay
//! used by the gadget constructors to keep human-readable names (for example
//! `S/1/12`) while the ids stay dense.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Hierarchical vertex name, rendered as `seg/seg/...`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexLabel(pub Vec<String>);

impl VertexLabel {
    pub fn new<I, S>(segments: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        VertexLabel(segments.into_iter().map(Into::into).collect())
    }

    pub fn parse(s: &str) -> Self {
        VertexLabel(s.split('/').map(str::to_owned).collect())
    }

    pub fn segments(&self) -> &[String] {
        &self.0
    }

    /// Returns a copy with `prefix` prepended.
    pub fn prefixed(&self, prefix: &[String]) -> Self {
        VertexLabel(prefix.iter().cloned().chain(self.0.iter().cloned()).collect())
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join("/"))
    }
}

/// A triangle, stored as a sorted vertex triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle(pub [usize; 3]);

impl Triangle {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        let mut v = [a, b, c];
        v.sort_unstable();
        Triangle(v)
    }

    pub fn vertices(&self) -> [usize; 3] {
        self.0
    }

    pub fn edges(&self) -> [(usize, usize); 3] {
        let [a, b, c] = self.0;
        [(a, b), (a, c), (b, c)]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    labels: BTreeMap<usize, VertexLabel>,
}

#[inline]
pub(crate) fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph, rejecting loops and out-of-range endpoints.
    /// Repeated pairs collapse to a single edge.
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); vertex_count];
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(GraphError::VertexOutOfRange(u, v, vertex_count));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        let adj: Vec<Vec<usize>> = adj.into_iter().map(|s| s.into_iter().collect()).collect();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Graph {
            adj,
            edge_count,
            labels: BTreeMap::new(),
        })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); vertex_count],
            edge_count: 0,
            labels: BTreeMap::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least three vertices");
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
    }

    /// Attaches labels; they must be unique.
    pub fn with_labels<I>(mut self, labels: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, VertexLabel)>,
    {
        let mut seen = BTreeSet::new();
        let mut map = BTreeMap::new();
        for (v, label) in labels {
            if v >= self.vertex_count() {
                return Err(GraphError::UnknownVertex(v));
            }
            if !seen.insert(label.clone()) {
                return Err(GraphError::DuplicateLabel(label.to_string()));
            }
            map.insert(v, label);
        }
        self.labels = map;
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels.clear();
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.adj.len()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, ns) in self.adj.iter().enumerate() {
            out.extend(ns.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn labels(&self) -> &BTreeMap<usize, VertexLabel> {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Option<&VertexLabel> {
        self.labels.get(&v)
    }

    pub fn find_label(&self, label: &VertexLabel) -> Option<usize> {
        self.labels.iter().find(|(_, l)| *l == label).map(|(&v, _)| v)
    }

    /// Index from vertex label to id.
    pub fn label_index(&self) -> BTreeMap<VertexLabel, usize> {
        self.labels.iter().map(|(&v, l)| (l.clone(), v)).collect()
    }

    /// Common neighbours of `u` and `v`, sorted.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Vec<usize> {
        let (a, b) = (&self.adj[u], &self.adj[v]);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Every 3-clique exactly once, in lexicographic order.
    pub fn triangles(&self) -> Vec<Triangle> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for &v in self.adj[u].iter().filter(|&&v| v > u) {
                for w in self.common_neighbors(u, v) {
                    if w > v {
                        out.push(Triangle([u, v, w]));
                    }
                }
            }
        }
        out
    }

    /// Number of triangles through each vertex.
    pub fn triangle_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.vertex_count()];
        for t in self.triangles() {
            for v in t.0 {
                counts[v] += 1;
            }
        }
        counts
    }

    /// True iff every edge lies in exactly one triangle. The edgeless graph
    /// has no edge in zero triangles and so qualifies vacuously.
    pub fn every_edge_in_unique_triangle(&self) -> bool {
        self.edges()
            .into_iter()
            .all(|(u, v)| self.common_neighbors(u, v).len() == 1)
    }

    /// Subgraph induced by `vertices`, renumbered in the given order.
    /// Returns the subgraph and the map from new ids back to original ids.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        let mut local = BTreeMap::new();
        let mut back = Vec::with_capacity(vertices.len());
        for &v in vertices {
            if v >= self.vertex_count() {
                return Err(GraphError::UnknownVertex(v));
            }
            if local.insert(v, back.len()).is_none() {
                back.push(v);
            }
        }
        let mut edges = Vec::new();
        for (i, &v) in back.iter().enumerate() {
            for &w in &self.adj[v] {
                if let Some(&j) = local.get(&w) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        let sub = Graph::new(back.len(), edges)?;
        let labels: Vec<_> = back
            .iter()
            .enumerate()
            .filter_map(|(i, v)| self.labels.get(v).map(|l| (i, l.clone())))
            .collect();
        Ok((sub.with_labels(labels)?, back))
    }

    /// Relabels vertex ids through `perm` (old id -> new id).
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.vertex_count());
        let edges = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v]));
        let g = Graph::new(self.vertex_count(), edges).expect("permutation preserves simplicity");
        let labels = self.labels.iter().map(|(&v, l)| (perm[v], l.clone()));
        g.with_labels(labels).expect("labels stay unique")
    }

    /// Drops vertices of degree zero, returning the compacted graph.
    pub fn without_isolated(&self) -> Graph {
        let keep: Vec<usize> = self.vertices().filter(|&v| self.degree(v) > 0).collect();
        self.induced_subgraph(&keep).expect("ids in range").0
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.vertices().map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }
}
