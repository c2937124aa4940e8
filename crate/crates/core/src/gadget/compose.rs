use std::collections::BTreeMap;

use super::{GadgetBlueprint, SubGadget};
use crate::error::GadgetError;
use crate::graph::{Graph, VertexLabel};

/// How two bowties are laid on top of each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BowtieJoin {
    /// Both triangles swap cycle and apex vertices.
    Equal,
    /// The first triangles match cycle to cycle, the second ones swap.
    Not,
}

/// Disjoint union of named parts followed by vertex identification.
///
/// Part roles, sub-gadgets and labels are prefixed with the part name. When
/// two vertices are identified the `keep` side's label survives. Surviving
/// vertices are renumbered in order of their original ids.
#[derive(Debug, Default)]
pub struct Composer {
    edges: Vec<(usize, usize)>,
    labels: Vec<Option<VertexLabel>>,
    roles: BTreeMap<String, Vec<usize>>,
    subs: BTreeMap<String, SubGadget>,
    parent: Vec<usize>,
}

fn join_name(prefix: &str, name: &str) -> String {
    if prefix.is_empty() {
        name.to_owned()
    } else {
        format!("{prefix}/{name}")
    }
}

impl Composer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `g` under `name` and returns the offset of its vertex ids.
    pub fn add(&mut self, name: &str, g: &GadgetBlueprint) -> usize {
        let off = self.parent.len();
        let n = g.graph.vertex_count();
        self.parent.extend(off..off + n);
        let prefix: Vec<String> = if name.is_empty() {
            Vec::new()
        } else {
            name.split('/').map(str::to_owned).collect()
        };
        self.labels
            .extend((0..n).map(|v| g.graph.label(v).map(|l| l.prefixed(&prefix))));
        self.edges
            .extend(g.graph.edges().into_iter().map(|(u, v)| (u + off, v + off)));
        for (r, vs) in &g.roles {
            self.roles
                .insert(join_name(name, r), vs.iter().map(|v| v + off).collect());
        }
        for (s, sub) in &g.sub_gadgets {
            let vertices = sub.vertices.iter().map(|v| v + off).collect();
            self.subs
                .insert(join_name(name, s), SubGadget { k: sub.k, vertices });
        }
        off
    }

    pub fn role(&self, name: &str) -> Result<&[usize], GadgetError> {
        self.roles
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| GadgetError::MissingRole(name.to_owned()))
    }

    pub fn set_role(&mut self, name: &str, vertices: Vec<usize>) {
        self.roles.insert(name.to_owned(), vertices);
    }

    pub fn sub(&self, name: &str) -> Result<&SubGadget, GadgetError> {
        self.subs
            .get(name)
            .ok_or_else(|| GadgetError::MissingRole(name.to_owned()))
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    pub fn identify(&mut self, keep: usize, drop: usize) {
        let (k, d) = (self.find(keep), self.find(drop));
        if k != d {
            self.parent[d] = k;
        }
    }

    /// Identifies bowtie `b` onto bowtie `a`, both in role order.
    pub fn join_bowties(&mut self, a: [usize; 5], b: [usize; 5], how: BowtieJoin) {
        let [ac, ax1, aa1, ax2, aa2] = a;
        let [bc, bx1, ba1, bx2, ba2] = b;
        self.identify(ac, bc);
        match how {
            BowtieJoin::Equal => {
                self.identify(ax1, ba1);
                self.identify(aa1, bx1);
            }
            BowtieJoin::Not => {
                self.identify(ax1, bx1);
                self.identify(aa1, ba1);
            }
        }
        self.identify(ax2, ba2);
        self.identify(aa2, bx2);
    }

    pub fn finish(mut self, kind: &str) -> Result<GadgetBlueprint, GadgetError> {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|v| self.find(v)).collect();
        let mut new_id = vec![usize::MAX; n];
        let mut next = 0;
        for v in 0..n {
            if roots[v] == v {
                new_id[v] = next;
                next += 1;
            }
        }
        let map = |v: usize| new_id[roots[v]];
        let graph = Graph::new(next, self.edges.iter().map(|&(u, v)| (map(u), map(v))))?;
        let labels: Vec<_> = (0..n)
            .filter(|&v| roots[v] == v)
            .filter_map(|v| self.labels[v].clone().map(|l| (new_id[v], l)))
            .collect();
        let graph = graph.with_labels(labels)?;
        let roles = self
            .roles
            .into_iter()
            .map(|(r, vs)| (r, vs.into_iter().map(map).collect()))
            .collect();
        let sub_gadgets = self
            .subs
            .into_iter()
            .map(|(s, sub)| {
                let vertices = sub.vertices.into_iter().map(map).collect();
                (s, SubGadget { k: sub.k, vertices })
            })
            .collect();
        Ok(GadgetBlueprint {
            kind: kind.to_owned(),
            graph,
            roles,
            sub_gadgets,
        })
    }
}
