//! Preimages of gadget graphs by choosing a template for every registered sun.
//!
//! Each registered sun is realised as a wheel or a squared cycle and the
//! resulting fragments are glued with [`GlueState`]. The glue only merges
//! candidate vertices when forced, so each choice vector yields the least
//! identified candidates compatible with it; every survivor is verified.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::glue::{EdgeMap, FragmentCache, GlueState};
use super::{Budget, SearchLimits};
use crate::error::SearchError;
use crate::gadget::{GadgetBlueprint, SubGadget, Template};
use crate::graph::Graph;
use crate::tlg::PreimageWitness;

/// A verified preimage together with the template each sun took.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateAssignment {
    pub choices: BTreeMap<String, Template>,
    pub witness: PreimageWitness,
}

/// Registered suns in breadth-first order over shared vertices, so that each
/// new sun usually overlaps one already glued.
fn sub_order(g: &GadgetBlueprint) -> Vec<(&str, &SubGadget)> {
    let subs: Vec<(&str, &SubGadget)> = g.sub_gadgets.iter().map(|(n, s)| (n.as_str(), s)).collect();
    let mut by_vertex: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, (_, s)) in subs.iter().enumerate() {
        for &v in &s.vertices {
            by_vertex.entry(v).or_default().push(i);
        }
    }
    let mut seen = vec![false; subs.len()];
    let mut order = Vec::with_capacity(subs.len());
    for start in 0..subs.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            order.push(subs[i]);
            let mut next: BTreeSet<usize> = BTreeSet::new();
            for v in &subs[i].1.vertices {
                next.extend(by_vertex[v].iter().copied().filter(|&j| !seen[j]));
            }
            for j in next {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    order
}

/// Fails unless every triangle of the graph lies inside a registered sun.
/// Returns false if some edge lies in no triangle, which rules out any preimage.
fn precheck(g: &GadgetBlueprint) -> Result<bool, SearchError> {
    let h = &g.graph;
    let mut member: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); h.vertex_count()];
    for (i, s) in g.sub_gadgets.values().enumerate() {
        for &v in &s.vertices {
            member[v].insert(i);
        }
    }
    for t in h.triangles() {
        let [a, b, c] = t.vertices();
        if !member[a].iter().any(|i| member[b].contains(i) && member[c].contains(i)) {
            return Err(SearchError::UnregisteredTriangle([a, b, c]));
        }
    }
    Ok(h.edges().into_iter().all(|(u, v)| !h.common_neighbors(u, v).is_empty()))
}

struct Solver<'a> {
    h: &'a Graph,
    order: Vec<(&'a str, &'a SubGadget)>,
    fixed: Option<&'a BTreeMap<String, Template>>,
    cache: FragmentCache,
    budget: Budget,
    first_only: bool,
    found: Vec<TemplateAssignment>,
    keys: BTreeSet<(Vec<Template>, EdgeMap)>,
}

impl Solver<'_> {
    fn options(&self, name: &str) -> Vec<Template> {
        match self.fixed.and_then(|f| f.get(name)) {
            Some(&t) => vec![t],
            None => Template::BOTH.to_vec(),
        }
    }

    fn done(&self) -> bool {
        self.budget.exhausted() || (self.first_only && !self.found.is_empty())
    }

    fn dfs(&mut self, depth: usize, state: GlueState, choices: &mut Vec<Template>) {
        if !self.budget.tick() {
            return;
        }
        if depth == self.order.len() {
            self.leaf(state, choices);
            return;
        }
        let (name, sub) = self.order[depth];
        for t in self.options(name) {
            for frag in self.cache.options(sub, t) {
                let mut s = state.clone();
                s.add(&frag);
                for next in s.propagate(self.h) {
                    choices.push(t);
                    self.dfs(depth + 1, next, choices);
                    choices.pop();
                    if self.done() {
                        return;
                    }
                }
            }
        }
    }

    fn leaf(&mut self, mut state: GlueState, choices: &[Template]) {
        let Some((candidate, map)) = state.materialize(self.h) else { return };
        if !self.keys.insert((choices.to_vec(), map.clone())) {
            return;
        }
        let Ok(witness) = PreimageWitness::new(self.h.clone(), candidate, map) else { return };
        if !witness.verify() {
            return;
        }
        let choices = self
            .order
            .iter()
            .zip(choices)
            .map(|(&(n, _), &t)| (n.to_owned(), t))
            .collect();
        self.found.push(TemplateAssignment { choices, witness });
    }
}

fn solve(
    g: &GadgetBlueprint,
    fixed: Option<&BTreeMap<String, Template>>,
    limits: &SearchLimits,
    first_only: bool,
) -> Result<Vec<TemplateAssignment>, SearchError> {
    if !precheck(g)? {
        return Ok(Vec::new());
    }
    let mut solver = Solver {
        h: &g.graph,
        order: sub_order(g),
        fixed,
        cache: FragmentCache::default(),
        budget: Budget::new(limits),
        first_only,
        found: Vec::new(),
        keys: BTreeSet::new(),
    };
    solver.dfs(0, GlueState::new(g.graph.vertex_count()), &mut Vec::new());
    if solver.budget.exhausted() {
        return Err(SearchError::BudgetExhausted {
            nodes: solver.budget.nodes(),
        });
    }
    let mut found = solver.found;
    found.sort_by(|a, b| a.choices.cmp(&b.choices));
    Ok(found)
}

/// Every verified preimage obtained by giving each registered sun one of the
/// two templates, sorted by choice vector. Triangles outside the registered
/// suns raise [`SearchError::UnregisteredTriangle`].
pub fn template_solve(g: &GadgetBlueprint, limits: &SearchLimits) -> Result<Vec<TemplateAssignment>, SearchError> {
    solve(g, None, limits, false)
}

/// First verified preimage in which the named suns take the given templates;
/// suns not named are free.
pub fn glue_with_choices(
    g: &GadgetBlueprint,
    choices: &BTreeMap<String, Template>,
) -> Result<Option<PreimageWitness>, SearchError> {
    let found = solve(g, Some(choices), &SearchLimits::default(), true)?;
    Ok(found.into_iter().next().map(|a| a.witness))
}
