//! Labelled gadget graphs and the machinery for gluing them together.
//!
//! A [`GadgetBlueprint`] is a graph plus named vertex lists (roles) and a
//! registry of embedded suns. Each registered sun is stored in its local
//! order: cycle vertex `i` at position `2i`, the apex over cycle edge
//! `(i, i+1)` at position `2i + 1`.

mod appendix;
mod build;
mod compose;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use appendix::{
    load_appendix_clause_gadget, load_appendix_clause_gadget_from, load_appendix_preimage,
    load_appendix_preimage_from, APPENDIX_FILES,
};
pub use build::*;
pub use compose::{BowtieJoin, Composer};

use crate::error::{GadgetError, ParseError};
use crate::graph::Graph;
use crate::io::GraphJson;

/// Which of the two preimage templates a registered sun takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Template {
    Wheel,
    SquaredCycle,
}

impl Template {
    pub const BOTH: [Template; 2] = [Template::Wheel, Template::SquaredCycle];

    /// The template graph `W_k` or `C_k²`.
    pub fn graph(self, k: usize) -> Graph {
        match self {
            Template::Wheel => wheel_graph(k),
            Template::SquaredCycle => squared_cycle_graph(k),
        }
    }

    pub fn flipped(self) -> Template {
        match self {
            Template::Wheel => Template::SquaredCycle,
            Template::SquaredCycle => Template::Wheel,
        }
    }
}

impl std::fmt::Display for Template {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Template::Wheel => "wheel",
            Template::SquaredCycle => "squared-cycle",
        })
    }
}

/// An embedded `k`-sun whose preimage is assumed to be `W_k` or `C_k²`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubGadget {
    pub k: usize,
    /// Host vertex ids in local sun order.
    pub vertices: Vec<usize>,
}

impl SubGadget {
    pub fn cycle(&self, i: usize) -> usize {
        self.vertices[2 * (i % self.k)]
    }

    pub fn apex(&self, i: usize) -> usize {
        self.vertices[2 * (i % self.k) + 1]
    }

    /// Bowtie centred on cycle vertex `i`, in role order
    /// `[center, t1-cycle, t1-apex, t2-cycle, t2-apex]`.
    pub fn bowtie(&self, i: usize) -> [usize; 5] {
        let k = self.k;
        let prev = (i + k - 1) % k;
        [self.cycle(i), self.cycle(prev), self.apex(prev), self.cycle(i + 1), self.apex(i)]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetBlueprint {
    pub kind: String,
    pub graph: Graph,
    pub roles: BTreeMap<String, Vec<usize>>,
    pub sub_gadgets: BTreeMap<String, SubGadget>,
}

impl GadgetBlueprint {
    pub fn new(kind: impl Into<String>, graph: Graph) -> Self {
        GadgetBlueprint {
            kind: kind.into(),
            graph,
            roles: BTreeMap::new(),
            sub_gadgets: BTreeMap::new(),
        }
    }

    pub fn role(&self, name: &str) -> Result<&[usize], GadgetError> {
        self.roles
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| GadgetError::MissingRole(name.to_owned()))
    }

    pub fn sub(&self, name: &str) -> Result<&SubGadget, GadgetError> {
        self.sub_gadgets
            .get(name)
            .ok_or_else(|| GadgetError::MissingRole(name.to_owned()))
    }

    pub fn bowtie(&self, name: &str) -> Result<[usize; 5], GadgetError> {
        let r = self.role(name)?;
        let b: [usize; 5] = r
            .try_into()
            .map_err(|_| GadgetError::MalformedRole(name.to_owned(), format!("{} vertices", r.len())))?;
        check_bowtie(&self.graph, b).map_err(|msg| GadgetError::MalformedRole(name.to_owned(), msg))?;
        Ok(b)
    }

    /// Checks role ids, bowtie shapes and that every registered sun is a
    /// sun in its declared local order.
    pub fn validate(&self) -> Result<(), GadgetError> {
        let n = self.graph.vertex_count();
        for (name, vs) in &self.roles {
            if let Some(&v) = vs.iter().find(|&&v| v >= n) {
                return Err(GadgetError::MalformedRole(name.clone(), format!("vertex {v} out of range")));
            }
            if name.split('/').any(|s| s == "bowtie") {
                self.bowtie(name)?;
            }
        }
        for (name, sub) in &self.sub_gadgets {
            check_sun_embedding(&self.graph, sub)
                .map_err(|msg| GadgetError::MalformedRole(name.clone(), msg))?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GadgetJson::from(self)).expect("gadget serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let j: GadgetJson = serde_json::from_str(text)?;
        Ok(GadgetBlueprint {
            kind: j.kind,
            graph: Graph::try_from(j.graph)?,
            roles: j.roles,
            sub_gadgets: j.sub_gadgets,
        })
    }
}

/// Two triangles `(c, x1, a1)` and `(c, x2, a2)` meeting only at `c`, with no
/// other edges among the five vertices.
pub fn check_bowtie(g: &Graph, b: [usize; 5]) -> Result<(), String> {
    let [c, x1, a1, x2, a2] = b;
    let mut sorted = b;
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err("repeated vertex".into());
    }
    if b.iter().any(|&v| v >= g.vertex_count()) {
        return Err("vertex out of range".into());
    }
    let (sub, _) = g.induced_subgraph(&b).map_err(|e| e.to_string())?;
    let want = [(c, x1), (c, a1), (x1, a1), (c, x2), (c, a2), (x2, a2)];
    if sub.edge_count() != 6 || !want.iter().all(|&(u, v)| g.has_edge(u, v)) {
        return Err("not two triangles sharing only the center".into());
    }
    Ok(())
}

fn check_sun_embedding(g: &Graph, sub: &SubGadget) -> Result<(), String> {
    if sub.vertices.len() != 2 * sub.k {
        return Err(format!("{} vertices for a {}-sun", sub.vertices.len(), sub.k));
    }
    if sub.vertices.iter().any(|&v| v >= g.vertex_count()) {
        return Err("vertex out of range".into());
    }
    let (induced, _) = g.induced_subgraph(&sub.vertices).map_err(|e| e.to_string())?;
    if induced.vertex_count() != 2 * sub.k {
        return Err("repeated vertex".into());
    }
    let sun = sun_graph(sub.k);
    if induced.without_labels() != sun {
        return Err("vertices do not form a sun in local order".into());
    }
    Ok(())
}

/// Serde mirror of the gadget JSON format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GadgetJson {
    #[serde(default = "gadget_format")]
    pub format: String,
    #[serde(default)]
    pub kind: String,
    #[serde(flatten)]
    pub graph: GraphJson,
    #[serde(default)]
    pub roles: BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    pub sub_gadgets: BTreeMap<String, SubGadget>,
}

fn gadget_format() -> String {
    "trilin-gadget".into()
}

impl From<&GadgetBlueprint> for GadgetJson {
    fn from(b: &GadgetBlueprint) -> Self {
        GadgetJson {
            format: gadget_format(),
            kind: b.kind.clone(),
            graph: GraphJson::from(&b.graph),
            roles: b.roles.clone(),
            sub_gadgets: b.sub_gadgets.clone(),
        }
    }
}
