//! Gluing template preimages of overlapping suns.
//!
//! A fragment is one way of realising a registered sun by a template: each
//! template vertex becomes a star, the set of host vertices whose preimage
//! edge touches it. Gluing merges stars from different fragments into
//! candidate vertices with a union-find. Two rules drive the merging: a host
//! vertex is a single edge, so its two endpoints must agree across fragments,
//! and two distinct candidate vertices cannot share two edges.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::gadget::{sun_graph, SubGadget, Template};
use crate::graph::Graph;
use crate::iso::isomorphisms;
use crate::tlg::triangular_line_graph;

/// Candidate edges `(u, v, t)`, each realizing host vertex `t`.
pub(crate) type EdgeMap = Vec<(usize, usize, usize)>;

/// One realisation of a registered sun by a template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragment {
    pub template: Template,
    /// `stars[x]`: sorted host vertices whose edge touches template vertex `x`.
    pub stars: Vec<Vec<usize>>,
    /// `(host, x, y)`: the host vertex is the template edge `xy`.
    pub ends: Vec<(usize, usize, usize)>,
}

/// Distinct fragments of `sub` by `template`, in local coordinates when
/// `sub` is the identity embedding.
fn local_fragments(k: usize, template: Template) -> Vec<Fragment> {
    let p = template.graph(k);
    let t = triangular_line_graph(&p);
    let sun = sun_graph(k);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for iso in isomorphisms(&t.derived, &sun, usize::MAX) {
        let mut stars = vec![Vec::new(); p.vertex_count()];
        let mut ends = Vec::with_capacity(t.edges.len());
        for (i, &(x, y)) in t.edges.iter().enumerate() {
            let host = iso.forward[i];
            stars[x].push(host);
            stars[y].push(host);
            ends.push((host, x, y));
        }
        for s in &mut stars {
            s.sort_unstable();
        }
        let mut family = stars.clone();
        family.sort();
        if seen.insert(family) {
            ends.sort_unstable();
            out.push(Fragment { template, stars, ends });
        }
    }
    out
}

impl Fragment {
    fn mapped(&self, sub: &SubGadget) -> Fragment {
        let v = &sub.vertices;
        let mut stars: Vec<Vec<usize>> = self
            .stars
            .iter()
            .map(|s| s.iter().map(|&h| v[h]).collect())
            .collect();
        for s in &mut stars {
            s.sort_unstable();
        }
        Fragment {
            template: self.template,
            stars,
            ends: self.ends.iter().map(|&(h, x, y)| (v[h], x, y)).collect(),
        }
    }
}

/// All distinct ways `template` can realise the registered sun `sub`.
pub fn fragment_options(sub: &SubGadget, template: Template) -> Vec<Fragment> {
    local_fragments(sub.k, template)
        .iter()
        .map(|f| f.mapped(sub))
        .collect()
}

/// Memoises [`local_fragments`] per sun size.
#[derive(Default)]
pub(crate) struct FragmentCache {
    map: HashMap<(usize, Template), Vec<Fragment>>,
}

impl FragmentCache {
    pub(crate) fn options(&mut self, sub: &SubGadget, template: Template) -> Vec<Fragment> {
        self.map
            .entry((sub.k, template))
            .or_insert_with(|| local_fragments(sub.k, template))
            .iter()
            .map(|f| f.mapped(sub))
            .collect()
    }
}

/// Partial gluing of fragments. Star nodes are numbered as fragments arrive.
#[derive(Debug, Clone)]
pub(crate) struct GlueState {
    parent: Vec<usize>,
    /// Per host vertex, the endpoint pairs contributed by each fragment.
    ends: Vec<Vec<(usize, usize)>>,
}

enum Step {
    Changed,
    Stable,
    Conflict,
}

impl GlueState {
    pub(crate) fn new(hosts: usize) -> Self {
        GlueState {
            parent: Vec::new(),
            ends: vec![Vec::new(); hosts],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi] = lo;
        true
    }

    pub(crate) fn add(&mut self, f: &Fragment) {
        let base = self.parent.len();
        self.parent.extend(base..base + f.stars.len());
        for &(h, x, y) in &f.ends {
            self.ends[h].push((base + x, base + y));
        }
    }

    /// Applies the forced merges until nothing changes, branching on host
    /// vertices whose orientation is not yet determined. Returns every
    /// consistent completion.
    pub(crate) fn propagate(mut self, h: &Graph) -> Vec<GlueState> {
        loop {
            match self.orient() {
                Step::Conflict => return Vec::new(),
                Step::Changed => continue,
                Step::Stable => {}
            }
            match self.shared_pairs() {
                Step::Conflict => return Vec::new(),
                Step::Changed => continue,
                Step::Stable => break,
            }
        }
        if let Some((a, b, c, d)) = self.ambiguous() {
            let mut out = Vec::new();
            for (p, q) in [(c, d), (d, c)] {
                let mut s = self.clone();
                s.union(a, p);
                s.union(b, q);
                out.extend(s.propagate(h));
            }
            return out;
        }
        if self.extra_triangle(h) {
            return Vec::new();
        }
        vec![self]
    }

    fn orient(&mut self) -> Step {
        let mut changed = false;
        for t in 0..self.ends.len() {
            let Some(&(a0, b0)) = self.ends[t].first() else { continue };
            for i in 0..self.ends[t].len() {
                let (a, b) = (self.find(a0), self.find(b0));
                if a == b {
                    return Step::Conflict;
                }
                let (c, d) = self.ends[t][i];
                let (c, d) = (self.find(c), self.find(d));
                if c == d {
                    return Step::Conflict;
                }
                let forced = if (a == c && b == d) || (a == d && b == c) {
                    None
                } else if a == c {
                    Some((b, d))
                } else if a == d {
                    Some((b, c))
                } else if b == c {
                    Some((a, d))
                } else if b == d {
                    Some((a, c))
                } else {
                    None
                };
                if let Some((x, y)) = forced {
                    changed |= self.union(x, y);
                }
            }
        }
        if changed {
            Step::Changed
        } else {
            Step::Stable
        }
    }

    /// Two classes sharing two host vertices would make those hosts parallel
    /// edges unless the classes coincide; coinciding classes then show up as
    /// a loop in [`Self::orient`].
    fn shared_pairs(&mut self) -> Step {
        let mut count: HashMap<(usize, usize), usize> = HashMap::new();
        let mut merges = Vec::new();
        for t in 0..self.ends.len() {
            let mut roots: Vec<usize> = Vec::new();
            for i in 0..self.ends[t].len() {
                let (a, b) = self.ends[t][i];
                roots.push(self.find(a));
                roots.push(self.find(b));
            }
            roots.sort_unstable();
            roots.dedup();
            for (i, &x) in roots.iter().enumerate() {
                for &y in &roots[i + 1..] {
                    let c = count.entry((x, y)).or_insert(0);
                    *c += 1;
                    if *c == 2 {
                        merges.push((x, y));
                    }
                }
            }
        }
        if merges.is_empty() {
            return Step::Stable;
        }
        for (x, y) in merges {
            self.union(x, y);
        }
        // A merge of two classes that share a host always yields a loop.
        for t in 0..self.ends.len() {
            for i in 0..self.ends[t].len() {
                let (a, b) = self.ends[t][i];
                if self.find(a) == self.find(b) {
                    return Step::Conflict;
                }
            }
        }
        Step::Changed
    }

    fn ambiguous(&mut self) -> Option<(usize, usize, usize, usize)> {
        for t in 0..self.ends.len() {
            let Some(&(a, b)) = self.ends[t].first() else { continue };
            for i in 1..self.ends[t].len() {
                let (c, d) = self.ends[t][i];
                let (ra, rb, rc, rd) = (self.find(a), self.find(b), self.find(c), self.find(d));
                if !((ra == rc && rb == rd) || (ra == rd && rb == rc)) {
                    return Some((ra, rb, rc, rd));
                }
            }
        }
        None
    }

    /// Endpoint classes of every covered host vertex; `None` for uncovered ones.
    fn class_edges(&mut self) -> Vec<Option<(usize, usize)>> {
        (0..self.ends.len())
            .map(|t| {
                let &(a, b) = self.ends[t].first()?;
                let (a, b) = (self.find(a), self.find(b));
                Some((a.min(b), a.max(b)))
            })
            .collect()
    }

    /// True if the glued classes span a triangle whose three hosts are not a
    /// triangle of `h`; such a triangle would add a target edge.
    fn extra_triangle(&mut self, h: &Graph) -> bool {
        let edges = self.class_edges();
        let mut adj: HashMap<usize, BTreeMap<usize, usize>> = HashMap::new();
        for (t, e) in edges.iter().enumerate() {
            if let Some((x, y)) = *e {
                adj.entry(x).or_default().insert(y, t);
                adj.entry(y).or_default().insert(x, t);
            }
        }
        for (t1, e) in edges.iter().enumerate() {
            let Some((x, y)) = *e else { continue };
            let (nx, ny) = (&adj[&x], &adj[&y]);
            for (z, &t2) in nx {
                if let Some(&t3) = ny.get(z) {
                    if !(h.has_edge(t1, t2) && h.has_edge(t1, t3) && h.has_edge(t2, t3)) {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Candidate graph and map once every host vertex in a triangle is
    /// covered. Classes are numbered by their sorted host lists; isolated
    /// uncovered hosts get two fresh vertices each. `None` if some uncovered
    /// host has a neighbour, since such a vertex cannot be placed.
    pub(crate) fn materialize(&mut self, h: &Graph) -> Option<(Graph, EdgeMap)> {
        let edges = self.class_edges();
        let mut hosts: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (t, e) in edges.iter().enumerate() {
            match *e {
                Some((x, y)) => {
                    hosts.entry(x).or_default().push(t);
                    hosts.entry(y).or_default().push(t);
                }
                None if h.degree(t) > 0 => return None,
                None => {}
            }
        }
        let mut classes: Vec<(Vec<usize>, usize)> = hosts.into_iter().map(|(r, hs)| (hs, r)).collect();
        classes.sort();
        let id: HashMap<usize, usize> = classes.iter().enumerate().map(|(i, &(_, r))| (r, i)).collect();
        let mut next = classes.len();
        let mut map = Vec::with_capacity(edges.len());
        for (t, e) in edges.iter().enumerate() {
            let (a, b) = match *e {
                Some((x, y)) => (id[&x], id[&y]),
                None => {
                    next += 2;
                    (next - 2, next - 1)
                }
            };
            map.push((a.min(b), a.max(b), t));
        }
        let g = Graph::new(next, map.iter().map(|&(a, b, _)| (a, b))).ok()?;
        Some((g, map))
    }
}
