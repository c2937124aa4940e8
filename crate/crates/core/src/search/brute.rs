//! Exhaustive preimage search.
//!
//! Each target vertex is a candidate edge, so the search assigns every target
//! vertex an unordered pair of candidate vertices. Candidate vertices are
//! introduced in first-use order, which removes most relabelling symmetry.
//! Target vertices are visited breadth-first so that, inside a component,
//! every vertex after the first has an already placed neighbour whose
//! endpoints it must share.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::{Budget, SearchLimits};
use crate::error::SearchError;
use crate::graph::Graph;
use crate::iso::canonical_form;
use crate::tlg::PreimageWitness;

const NONE: u32 = u32::MAX;

/// Answer of [`is_tlg_small`]. `Unknown` only ever means the budget ran out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TlgDecision {
    Yes(PreimageWitness),
    No,
    Unknown { nodes: u64 },
}

struct Problem<'a> {
    h: &'a Graph,
    order: Vec<usize>,
    slots: usize,
}

#[derive(Clone)]
struct State {
    pair: Vec<Option<(usize, usize)>>,
    host: Vec<u32>,
    next: usize,
    depth: usize,
}

type Family = Vec<Vec<usize>>;

#[derive(Default)]
struct Found {
    /// Canonical form of the candidate -> smallest family seen and its witness.
    classes: BTreeMap<Vec<u8>, (Family, PreimageWitness)>,
    families: BTreeSet<Family>,
}

impl Found {
    fn merge(&mut self, other: Found) {
        for (k, (fam, w)) in other.classes {
            match self.classes.get(&k) {
                Some((f, _)) if *f <= fam => {}
                _ => {
                    self.classes.insert(k, (fam, w));
                }
            }
        }
        self.families.extend(other.families);
    }
}

fn bfs_order(h: &Graph) -> Vec<usize> {
    let n = h.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let start = order.len();
        order.push(s);
        let mut i = start;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &v in h.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    order.push(v);
                }
            }
        }
    }
    order
}

impl Problem<'_> {
    fn host(&self, st: &State, a: usize, b: usize) -> u32 {
        st.host[a * self.slots + b]
    }

    fn set_host(&self, st: &mut State, a: usize, b: usize, t: u32) {
        st.host[a * self.slots + b] = t;
        st.host[b * self.slots + a] = t;
    }

    fn candidates(&self, st: &State, t: usize) -> Vec<(usize, usize)> {
        let limit = (st.next + 1).min(self.slots);
        let anchor = self.h.neighbors(t).iter().find_map(|&s| st.pair[s]);
        let mut out = Vec::new();
        match anchor {
            Some((p, q)) => {
                for v in [p, q] {
                    for w in (0..limit).filter(|&w| w != v) {
                        out.push((v.min(w), v.max(w)));
                    }
                }
            }
            None => {
                for b in 1..(st.next + 2).min(self.slots) {
                    for a in 0..b {
                        if b == st.next + 1 && a != st.next {
                            continue;
                        }
                        out.push((a, b));
                    }
                }
            }
        }
        out
    }

    fn admissible(&self, st: &State, t: usize, a: usize, b: usize) -> bool {
        if a < st.next && b < st.next && self.host(st, a, b) != NONE {
            return false;
        }
        for &s in self.h.neighbors(t) {
            if let Some((p, q)) = st.pair[s] {
                if p != a && p != b && q != a && q != b {
                    return false;
                }
            }
        }
        for c in 0..st.next {
            if c == a || c == b || a >= st.next || b >= st.next {
                continue;
            }
            let (s1, s2) = (self.host(st, a, c), self.host(st, b, c));
            if s1 != NONE && s2 != NONE {
                let (s1, s2) = (s1 as usize, s2 as usize);
                if !(self.h.has_edge(t, s1) && self.h.has_edge(t, s2) && self.h.has_edge(s1, s2)) {
                    return false;
                }
            }
        }
        true
    }

    /// Every placed pair of adjacent target vertices meets at a candidate
    /// vertex and needs the third side of that triangle. If it is missing,
    /// some unplaced common neighbour must still be able to fill it.
    fn completable(&self, st: &State) -> bool {
        for &s in &self.order[..st.depth] {
            let (sp, sq) = st.pair[s].expect("placed");
            for &r in self.h.neighbors(s).iter().filter(|&&r| r > s) {
                let Some((rp, rq)) = st.pair[r] else { continue };
                let (x, y) = if sp == rp {
                    (sq, rq)
                } else if sp == rq {
                    (sq, rp)
                } else if sq == rp {
                    (sp, rq)
                } else {
                    (sp, rp)
                };
                if self.host(st, x, y) != NONE {
                    continue;
                }
                let open = self
                    .h
                    .common_neighbors(s, r)
                    .iter()
                    .any(|&u| st.pair[u].is_none());
                if !open {
                    return false;
                }
            }
        }
        true
    }

    fn place(&self, st: &mut State, t: usize, a: usize, b: usize) {
        st.pair[t] = Some((a, b));
        st.next = st.next.max(b + 1);
        self.set_host(st, a, b, t as u32);
        st.depth += 1;
    }

    fn children(&self, st: &State) -> Vec<State> {
        let t = self.order[st.depth];
        self.candidates(st, t)
            .into_iter()
            .filter(|&(a, b)| self.admissible(st, t, a, b))
            .filter_map(|(a, b)| {
                let mut child = st.clone();
                self.place(&mut child, t, a, b);
                self.completable(&child).then_some(child)
            })
            .collect()
    }

    fn dfs(&self, st: &State, budget: &Budget, found: &mut Found) {
        if !budget.tick() {
            return;
        }
        if st.depth == self.order.len() {
            self.leaf(st, found);
            return;
        }
        for child in self.children(st) {
            self.dfs(&child, budget, found);
            if budget.exhausted() {
                return;
            }
        }
    }

    fn leaf(&self, st: &State, found: &mut Found) {
        let pairs: Vec<(usize, usize)> = st.pair.iter().map(|p| p.expect("complete")).collect();
        let candidate = Graph::new(st.next, pairs.iter().copied()).expect("slots in range");
        let map = pairs.iter().enumerate().map(|(t, &(a, b))| (a, b, t));
        let Ok(w) = PreimageWitness::new(self.h.clone(), candidate, map) else { return };
        if !w.verify() {
            return;
        }
        let mut family: Family = vec![Vec::new(); st.next];
        for (t, &(a, b)) in pairs.iter().enumerate() {
            family[a].push(t);
            family[b].push(t);
        }
        family.sort();
        let canon = canonical_form(w.candidate()).expect("candidate within the canonical limit");
        found.families.insert(family.clone());
        match found.classes.get(&canon) {
            Some((f, _)) if *f <= family => {}
            _ => {
                found.classes.insert(canon, (family, w));
            }
        }
    }
}

fn search(h: &Graph, limits: &SearchLimits) -> Result<Found, SearchError> {
    let n = h.vertex_count();
    if n > limits.max_target_vertices {
        return Err(SearchError::TargetTooLarge(n, limits.max_target_vertices));
    }
    let slots = limits.max_candidate_vertices.unwrap_or(2 * n).min(2 * n.max(1));
    let problem = Problem {
        h,
        order: bfs_order(h),
        slots,
    };
    let root = State {
        pair: vec![None; n],
        host: vec![NONE; slots * slots],
        next: 0,
        depth: 0,
    };
    let budget = Budget::new(limits);

    // Expand a shallow frontier on this thread, then hand subtrees to workers.
    let mut frontier = vec![root];
    let mut found = Found::default();
    while frontier.len() < 64 && frontier.iter().any(|s| s.depth < n) {
        let mut next = Vec::new();
        for st in frontier {
            if !budget.tick() {
                return Err(SearchError::BudgetExhausted { nodes: budget.nodes() });
            }
            if st.depth == n {
                problem.leaf(&st, &mut found);
            } else {
                next.extend(problem.children(&st));
            }
        }
        frontier = next;
    }
    let parts: Vec<Found> = limits.run(|| {
        frontier
            .par_iter()
            .map(|st| {
                let mut f = Found::default();
                problem.dfs(st, &budget, &mut f);
                f
            })
            .collect()
    });
    if budget.exhausted() {
        return Err(SearchError::BudgetExhausted { nodes: budget.nodes() });
    }
    for p in parts {
        found.merge(p);
    }
    Ok(found)
}

/// One witness per isomorphism class of preimages of `h`, ordered by the
/// canonical form of the candidate. Empty means `h` is not in the image of
/// `T`.
pub fn brute_force_preimages(h: &Graph, limits: &SearchLimits) -> Result<Vec<PreimageWitness>, SearchError> {
    Ok(search(h, limits)?.classes.into_values().map(|(_, w)| w).collect())
}

/// Number of distinct ways to cut `h` into candidate-vertex stars, i.e.
/// certified bijections counted up to relabelling the candidate.
pub fn count_labeled_preimages(h: &Graph, limits: &SearchLimits) -> Result<usize, SearchError> {
    Ok(search(h, limits)?.families.len())
}

/// Three-valued wrapper around [`brute_force_preimages`]. Only an exhausted
/// budget becomes `Unknown`; an oversized target is still an error.
pub fn is_tlg_small(h: &Graph, limits: &SearchLimits) -> Result<TlgDecision, SearchError> {
    match brute_force_preimages(h, limits) {
        Ok(ws) => Ok(match ws.into_iter().next() {
            Some(w) => TlgDecision::Yes(w),
            None => TlgDecision::No,
        }),
        Err(SearchError::BudgetExhausted { nodes }) => Ok(TlgDecision::Unknown { nodes }),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget::{make_bowtie, make_sun, Template};
    use crate::iso::are_isomorphic;
    use crate::tlg::triangular_line_graph;

    #[test]
    fn bowtie_has_one_class_and_two_labelings() {
        let h = make_bowtie().graph;
        let ws = brute_force_preimages(&h, &SearchLimits::default()).unwrap();
        assert_eq!(ws.len(), 1);
        assert!(ws[0].verify());
        let k4e = Graph::new(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(are_isomorphic(ws[0].candidate(), &k4e));
        assert_eq!(count_labeled_preimages(&h, &SearchLimits::default()).unwrap(), 2);
    }

    #[test]
    fn tiny_targets() {
        let lim = SearchLimits::default();
        assert!(brute_force_preimages(&Graph::complete(2), &lim).unwrap().is_empty());
        let k3 = brute_force_preimages(&Graph::complete(3), &lim).unwrap();
        assert_eq!(k3.len(), 1);
        assert!(are_isomorphic(k3[0].candidate(), &Graph::complete(3)));
        assert_eq!(count_labeled_preimages(&Graph::complete(3), &lim).unwrap(), 1);
        let two = brute_force_preimages(&Graph::empty(2), &lim).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(count_labeled_preimages(&Graph::empty(2), &lim).unwrap(), 2);
        assert_eq!(brute_force_preimages(&Graph::empty(0), &lim).unwrap().len(), 1);
    }

    #[test]
    fn seven_sun_has_exactly_the_two_templates() {
        let ws = brute_force_preimages(&make_sun(7).unwrap().graph, &SearchLimits::default().with_workers(0)).unwrap();
        assert_eq!(ws.len(), 2);
        for t in Template::BOTH {
            assert!(ws.iter().any(|w| are_isomorphic(w.candidate(), &t.graph(7))));
        }
    }

    #[test]
    fn decisions() {
        let lim = SearchLimits::default();
        assert!(matches!(is_tlg_small(&make_bowtie().graph, &lim), Ok(TlgDecision::Yes(_))));
        assert_eq!(is_tlg_small(&Graph::complete(2), &lim), Ok(TlgDecision::No));
        let tight = SearchLimits::default().with_node_budget(5);
        assert!(matches!(is_tlg_small(&make_sun(7).unwrap().graph, &tight), Ok(TlgDecision::Unknown { .. })));
        let big = Graph::empty(17);
        assert!(matches!(brute_force_preimages(&big, &lim), Err(SearchError::TargetTooLarge(17, 16))));
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let h = triangular_line_graph(&Graph::new(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)]).unwrap()).derived;
        let one = brute_force_preimages(&h, &SearchLimits::default()).unwrap();
        let many = brute_force_preimages(&h, &SearchLimits::default().with_workers(4)).unwrap();
        assert_eq!(one, many);
    }
}
