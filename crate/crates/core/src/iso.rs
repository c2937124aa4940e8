//! Isomorphism testing and canonical forms by individualization-refinement.
//!
//! Vertices start coloured by (degree, triangle count) and colours are refined
//! until every class is equitable. Colours are ranks of sorted signatures, so
//! they are comparable across graphs refined together. The search then
//! individualizes one vertex of the smallest non-singleton class at a time.

use std::collections::BTreeMap;

use crate::error::GraphError;
use crate::graph::Graph;

/// Default vertex cap for [`canonical_form`].
pub const DEFAULT_CANONICAL_LIMIT: usize = 32;

/// A vertex bijection `forward[v]` from the first graph onto the second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoMapping {
    pub forward: Vec<usize>,
}

impl IsoMapping {
    pub fn inverse(&self) -> IsoMapping {
        let mut inv = vec![0; self.forward.len()];
        for (v, &w) in self.forward.iter().enumerate() {
            inv[w] = v;
        }
        IsoMapping { forward: inv }
    }

    /// True iff this mapping is an isomorphism `g1 -> g2`.
    pub fn is_isomorphism(&self, g1: &Graph, g2: &Graph) -> bool {
        let n = g1.vertex_count();
        if n != g2.vertex_count() || self.forward.len() != n || g1.edge_count() != g2.edge_count() {
            return false;
        }
        let mut seen = vec![false; n];
        for &w in &self.forward {
            if w >= n || std::mem::replace(&mut seen[w], true) {
                return false;
            }
        }
        g1.edges()
            .into_iter()
            .all(|(u, v)| g2.has_edge(self.forward[u], self.forward[v]))
    }
}

type Colors = Vec<u32>;

fn initial_colors(graphs: &[&Graph]) -> Vec<Colors> {
    let sigs: Vec<Vec<(usize, usize)>> = graphs
        .iter()
        .map(|g| {
            let tri = g.triangle_counts();
            g.vertices().map(|v| (g.degree(v), tri[v])).collect()
        })
        .collect();
    rank(&sigs)
}

/// Replaces every signature by its rank among all signatures of all graphs.
fn rank<S: Ord + Clone>(sigs: &[Vec<S>]) -> Vec<Colors> {
    let mut all: Vec<S> = sigs.iter().flatten().cloned().collect();
    all.sort();
    all.dedup();
    sigs.iter()
        .map(|s| {
            s.iter()
                .map(|x| all.binary_search(x).expect("present") as u32)
                .collect()
        })
        .collect()
}

fn class_count(colors: &[Colors]) -> usize {
    let mut all: Vec<u32> = colors.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// Refines jointly until the number of classes stops growing.
fn refine(graphs: &[&Graph], colors: &mut Vec<Colors>) {
    let mut classes = class_count(colors);
    loop {
        let sigs: Vec<Vec<(u32, Vec<u32>)>> = graphs
            .iter()
            .zip(colors.iter())
            .map(|(g, c)| {
                g.vertices()
                    .map(|v| {
                        let mut ns: Vec<u32> = g.neighbors(v).iter().map(|&w| c[w]).collect();
                        ns.sort_unstable();
                        (c[v], ns)
                    })
                    .collect()
            })
            .collect();
        let next = rank(&sigs);
        let next_classes = class_count(&next);
        *colors = next;
        if next_classes == classes {
            return;
        }
        classes = next_classes;
    }
}

/// Gives each picked `(graph, vertex)` its own class, ordered just after its old one.
fn individualize(colors: &[Colors], picks: &[(usize, usize)]) -> Vec<Colors> {
    let sigs: Vec<Vec<(u32, bool)>> = colors
        .iter()
        .enumerate()
        .map(|(k, c)| {
            c.iter()
                .enumerate()
                .map(|(v, &col)| (col, picks.contains(&(k, v))))
                .collect()
        })
        .collect();
    rank(&sigs)
}

fn histogram(c: &Colors) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for &x in c {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

/// Smallest non-singleton class; ties broken by colour id.
fn target_cell(c: &Colors) -> Option<u32> {
    histogram(c)
        .into_iter()
        .filter(|&(_, n)| n > 1)
        .min_by_key(|&(col, n)| (n, col))
        .map(|(col, _)| col)
}

fn quick_reject(g1: &Graph, g2: &Graph) -> bool {
    g1.vertex_count() != g2.vertex_count()
        || g1.edge_count() != g2.edge_count()
        || g1.degree_sequence() != g2.degree_sequence()
}

struct PairSearch<'a> {
    g1: &'a Graph,
    g2: &'a Graph,
    limit: usize,
    found: Vec<IsoMapping>,
}

impl PairSearch<'_> {
    fn run(&mut self, colors: Vec<Colors>) {
        if self.found.len() >= self.limit {
            return;
        }
        let (c1, c2) = (&colors[0], &colors[1]);
        if histogram(c1) != histogram(c2) {
            return;
        }
        match target_cell(c1) {
            None => {
                let mut by_color = BTreeMap::new();
                for (w, &col) in c2.iter().enumerate() {
                    by_color.insert(col, w);
                }
                let forward: Vec<usize> = c1.iter().map(|col| by_color[col]).collect();
                let m = IsoMapping { forward };
                if m.is_isomorphism(self.g1, self.g2) {
                    self.found.push(m);
                }
            }
            Some(cell) => {
                let v = c1.iter().position(|&x| x == cell).expect("cell non-empty");
                let candidates: Vec<usize> = (0..c2.len()).filter(|&w| c2[w] == cell).collect();
                for w in candidates {
                    let mut next = individualize(&colors, &[(0, v), (1, w)]);
                    refine(&[self.g1, self.g2], &mut next);
                    self.run(next);
                    if self.found.len() >= self.limit {
                        return;
                    }
                }
            }
        }
    }
}

/// Up to `limit` isomorphisms `g1 -> g2`, in a deterministic order.
pub fn isomorphisms(g1: &Graph, g2: &Graph, limit: usize) -> Vec<IsoMapping> {
    if quick_reject(g1, g2) {
        return Vec::new();
    }
    let graphs = [g1, g2];
    let mut colors = initial_colors(&graphs);
    refine(&graphs, &mut colors);
    let mut search = PairSearch {
        g1,
        g2,
        limit,
        found: Vec::new(),
    };
    search.run(colors);
    search.found
}

/// Some isomorphism `g1 -> g2`, or `None`.
pub fn find_isomorphism(g1: &Graph, g2: &Graph) -> Option<IsoMapping> {
    isomorphisms(g1, g2, 1).into_iter().next()
}

pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    find_isomorphism(g1, g2).is_some()
}

/// Full automorphism group (as a list of permutations).
pub fn automorphisms(g: &Graph) -> Vec<IsoMapping> {
    isomorphisms(g, g, usize::MAX)
}

struct CanonSearch<'a> {
    g: &'a Graph,
    best: Option<(Vec<u8>, Vec<usize>)>,
    generators: Vec<Vec<usize>>,
}

impl CanonSearch<'_> {
    fn encode(&self, order: &[usize]) -> Vec<u8> {
        let n = order.len();
        let mut out = Vec::with_capacity(4 + n * n / 16 + 1);
        out.extend_from_slice(&(n as u32).to_be_bytes());
        let mut byte = 0u8;
        let mut bits = 0;
        for i in 0..n {
            for j in i + 1..n {
                byte = (byte << 1) | u8::from(self.g.has_edge(order[i], order[j]));
                bits += 1;
                if bits == 8 {
                    out.push(byte);
                    byte = 0;
                    bits = 0;
                }
            }
        }
        if bits > 0 {
            out.push(byte << (8 - bits));
        }
        out
    }

    /// Orbits of the subgroup generated by known automorphisms fixing `path`.
    fn orbit_roots(&self, path: &[usize]) -> Vec<usize> {
        let n = self.g.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for gen in &self.generators {
            if path.iter().all(|&v| gen[v] == v) {
                for (v, &image) in gen.iter().enumerate() {
                    let (a, b) = (find(&mut parent, v), find(&mut parent, image));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        (0..n).map(|v| find(&mut parent, v)).collect()
    }

    fn run(&mut self, colors: Colors, path: &mut Vec<usize>) {
        match target_cell(&colors) {
            None => {
                let mut order = vec![0; colors.len()];
                for (v, &c) in colors.iter().enumerate() {
                    order[c as usize] = v;
                }
                let code = self.encode(&order);
                match &self.best {
                    None => self.best = Some((code, order)),
                    Some((best, best_order)) => {
                        if code == *best {
                            let mut gen = vec![0; order.len()];
                            for (i, &v) in best_order.iter().enumerate() {
                                gen[v] = order[i];
                            }
                            self.generators.push(gen);
                        } else if code < *best {
                            self.best = Some((code, order));
                        }
                    }
                }
            }
            Some(cell) => {
                let candidates: Vec<usize> =
                    (0..colors.len()).filter(|&v| colors[v] == cell).collect();
                let mut tried_roots: Vec<usize> = Vec::new();
                for v in candidates {
                    let roots = self.orbit_roots(path);
                    if tried_roots.iter().any(|&r| roots[r] == roots[v]) {
                        continue;
                    }
                    tried_roots.push(v);
                    let mut next = individualize(std::slice::from_ref(&colors), &[(0, v)]);
                    refine(&[self.g], &mut next);
                    path.push(v);
                    self.run(next.pop().expect("one graph"), path);
                    path.pop();
                }
            }
        }
    }
}

/// Byte string equal for two graphs iff they are isomorphic. Labels are ignored.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>, GraphError> {
    canonical_form_with_limit(g, DEFAULT_CANONICAL_LIMIT)
}

pub fn canonical_form_with_limit(g: &Graph, limit: usize) -> Result<Vec<u8>, GraphError> {
    if g.vertex_count() > limit {
        return Err(GraphError::TooLarge(g.vertex_count(), limit));
    }
    if g.vertex_count() == 0 {
        return Ok(0u32.to_be_bytes().to_vec());
    }
    let mut colors = initial_colors(&[g]);
    refine(&[g], &mut colors);
    let mut search = CanonSearch {
        g,
        best: None,
        generators: Vec::new(),
    };
    search.run(colors.pop().expect("one graph"), &mut Vec::new());
    Ok(search.best.expect("at least one leaf").0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wheel(k: usize) -> Graph {
        let edges = (0..k).flat_map(|i| [(i, (i + 1) % k), (i, k)]);
        Graph::new(k + 1, edges).unwrap()
    }

    fn squared_cycle(k: usize) -> Graph {
        let edges = (0..k).flat_map(|i| [(i, (i + 1) % k), (i, (i + 2) % k)]);
        Graph::new(k, edges).unwrap()
    }

    fn shuffle(g: &Graph, seed: usize) -> Graph {
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, (i * 7 + seed * 13 + 3) % (i + 1));
        }
        g.permuted(&perm)
    }

    #[test]
    fn relabeled_wheel_is_isomorphic() {
        let w = wheel(7);
        let p = shuffle(&w, 5);
        let m = find_isomorphism(&w, &p).expect("isomorphic");
        assert!(m.is_isomorphism(&w, &p));
        assert!(m.inverse().is_isomorphism(&p, &w));
    }

    #[test]
    fn wheel_and_squared_cycle_differ() {
        assert!(find_isomorphism(&wheel(7), &squared_cycle(7)).is_none());
        assert_ne!(
            canonical_form(&wheel(7)).unwrap(),
            canonical_form(&squared_cycle(7)).unwrap()
        );
    }

    #[test]
    fn automorphism_group_sizes() {
        // dihedral groups; C_7^2 is circulant with jumps {1, 2}
        assert_eq!(automorphisms(&Graph::cycle(6)).len(), 12);
        assert_eq!(automorphisms(&wheel(7)).len(), 14);
        assert_eq!(automorphisms(&squared_cycle(7)).len(), 14);
        assert_eq!(automorphisms(&Graph::complete(4)).len(), 24);
        assert_eq!(automorphisms(&Graph::empty(4)).len(), 24);
    }

    #[test]
    fn cubic_graphs_on_six_vertices() {
        let k33 = Graph::new(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
        // C6 plus its three long diagonals is K3,3 again
        let c6_diagonals = Graph::new(
            6,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        assert!(find_isomorphism(&k33, &c6_diagonals).is_some());
        let prism = Graph::new(
            6,
            [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        assert!(find_isomorphism(&k33, &prism).is_none());
    }

    #[test]
    fn refinement_alone_cannot_split_these() {
        // both 2-regular and triangle-free: C8 vs two C4s
        let c8 = Graph::cycle(8);
        let two_c4 = Graph::new(8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)])
            .unwrap();
        assert!(find_isomorphism(&c8, &two_c4).is_none());
        assert_ne!(canonical_form(&c8).unwrap(), canonical_form(&two_c4).unwrap());
    }

    #[test]
    fn canonical_form_basics() {
        let k3 = Graph::complete(3);
        assert_eq!(
            canonical_form(&k3).unwrap(),
            canonical_form(&shuffle(&k3, 1)).unwrap()
        );
        assert_eq!(canonical_form(&Graph::empty(0)).unwrap(), vec![0, 0, 0, 0]);
        assert!(matches!(
            canonical_form_with_limit(&Graph::empty(5), 4),
            Err(GraphError::TooLarge(5, 4))
        ));
        let big_empty = Graph::empty(20);
        assert_eq!(canonical_form(&big_empty).unwrap().len(), 4 + 24);
    }

    #[test]
    fn canonical_form_on_symmetric_graphs() {
        for g in [wheel(12), squared_cycle(12), Graph::complete(8), Graph::cycle(16)] {
            let a = canonical_form(&g).unwrap();
            for seed in 0..3 {
                assert_eq!(a, canonical_form(&shuffle(&g, seed)).unwrap());
            }
        }
    }
}
