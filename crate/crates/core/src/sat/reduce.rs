//! The formula-to-graph compiler and the translations between satisfying
//! assignments and preimages of its output.

use std::collections::{BTreeMap, BTreeSet};

use super::cnf::{Assignment, CnfFormula, Literal};
use super::patterns::{ClausePatterns, Pattern};
use crate::error::{SatError, WitnessError};
use crate::gadget::{add_cluster, join_clause_in, Composer, GadgetBlueprint, SubGadget, Template, CLAUSE_SUN_K};
use crate::iso::are_isomorphic;
use crate::search::glue_with_choices;
use crate::tlg::{restrict_preimage, verify_certificate, PreimageWitness};

/// Construction parameters. The default reproduces the published gadgets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionConfig {
    /// Size of the binary-enforced sun inside each large variable gadget.
    pub enforced_k: usize,
}

impl Default for ReductionConfig {
    fn default() -> Self {
        ReductionConfig {
            enforced_k: CLAUSE_SUN_K,
        }
    }
}

/// One literal of a clause and the large variable gadget it consumes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leg {
    pub literal: Literal,
    /// Index `j` of the gadget `V/j` in the variable's cluster.
    pub index: usize,
}

#[derive(Debug, Clone)]
pub struct ReductionOutput {
    pub formula: CnfFormula,
    pub config: ReductionConfig,
    pub graph: GadgetBlueprint,
    /// `legs[c][l]` for clause `c + 1`, literal `l + 1`.
    pub legs: Vec<[Leg; 3]>,
}

/// Gadget index used by a literal of clause `j` (1-based): `2j` for a
/// positive literal, `2j - 1` for a negative one.
pub fn leg_index(clause: usize, lit: Literal) -> usize {
    if lit.positive {
        2 * clause
    } else {
        2 * clause - 1
    }
}

/// Template of `H/j` (and of `V/j`) in the cluster of a variable with the
/// given value. `H/0` is a squared cycle exactly when the variable is true
/// and the wire alternates from there.
pub fn cluster_template(value: bool, j: usize) -> Template {
    if value == (j % 2 == 1) {
        Template::Wheel
    } else {
        Template::SquaredCycle
    }
}

fn cluster_prefix(var: usize) -> String {
    format!("x{var}/")
}

impl ReductionOutput {
    /// The 7-sun `H/j` on the wire of `var`'s cluster.
    pub fn wire_sun(&self, var: usize, j: usize) -> Result<&SubGadget, SatError> {
        Ok(self.graph.sub(&format!("x{var}/H/{j}/S"))?)
    }

    /// The enforced sun of the large variable gadget `V/j` of `var`.
    pub fn large_sun(&self, var: usize, j: usize) -> Result<&SubGadget, SatError> {
        Ok(self.graph.sub(&format!("x{var}/V/{j}/S"))?)
    }

    /// The three suns joined by clause `c` (1-based), in literal order.
    pub fn clause_suns(&self, c: usize) -> Result<[&SubGadget; 3], SatError> {
        let legs = self
            .legs
            .get(c.wrapping_sub(1))
            .ok_or_else(|| SatError::Internal(format!("no clause {c}")))?;
        let s = |l: usize| self.large_sun(legs[l].literal.var, legs[l].index);
        Ok([s(0)?, s(1)?, s(2)?])
    }

    /// Template for every registered sun under `x`.
    fn choices(&self, x: &Assignment) -> Result<BTreeMap<String, Template>, SatError> {
        let mut out = BTreeMap::new();
        for name in self.graph.sub_gadgets.keys() {
            let parsed = name
                .strip_prefix('x')
                .and_then(|rest| {
                    let mut it = rest.split('/');
                    let var: usize = it.next()?.parse().ok()?;
                    it.next()?;
                    let j: usize = it.next()?.parse().ok()?;
                    Some((var, j))
                })
                .filter(|&(var, _)| (1..=x.len()).contains(&var));
            let (var, j) = parsed.ok_or_else(|| SatError::Internal(format!("unexpected sub-gadget `{name}`")))?;
            out.insert(name.clone(), cluster_template(x.get(var), j));
        }
        Ok(out)
    }

    /// Pattern a clause's suns take under `x`; a leg is a wheel exactly when
    /// its literal is false.
    pub fn clause_pattern(&self, c: usize, x: &Assignment) -> Pattern {
        self.legs[c - 1].clone().map(|leg| cluster_template(x.get(leg.literal.var), leg.index))
    }
}

/// Compiles with the default configuration.
pub fn compile(f: &CnfFormula) -> Result<ReductionOutput, SatError> {
    compile_with(f, &ReductionConfig::default())
}

/// One variable cluster with `2m` large gadgets per variable, then one
/// clause join per clause over the gadgets its literals select.
pub fn compile_with(f: &CnfFormula, config: &ReductionConfig) -> Result<ReductionOutput, SatError> {
    let m = f.clauses().len();
    let mut c = Composer::new();
    for var in 1..=f.variable_count() {
        add_cluster(&mut c, &cluster_prefix(var), m, config.enforced_k)?;
    }
    let mut used = BTreeSet::new();
    let mut legs = Vec::with_capacity(m);
    for (i, clause) in f.clauses().iter().enumerate() {
        let j = i + 1;
        let these = clause.map(|literal| Leg {
            literal,
            index: leg_index(j, literal),
        });
        let names: Vec<String> = these
            .iter()
            .map(|l| format!("x{}/V/{}", l.literal.var, l.index))
            .collect();
        for n in &names {
            if !used.insert(n.clone()) {
                return Err(SatError::Internal(format!("gadget {n} consumed twice")));
            }
        }
        join_clause_in(&mut c, [&names[0], &names[1], &names[2]])?;
        legs.push(these);
    }
    let graph = c.finish("reduction")?;
    Ok(ReductionOutput {
        formula: f.clone(),
        config: config.clone(),
        graph,
        legs,
    })
}

/// Builds a verified preimage of the compiled graph from a satisfying
/// assignment: every wire sun and large gadget takes the template its
/// cluster parity dictates and the glue completes the clause parts.
pub fn witness_from_assignment(r: &ReductionOutput, x: &Assignment) -> Result<PreimageWitness, SatError> {
    witness_with_patterns(r, x, None)
}

pub(crate) fn witness_with_patterns(
    r: &ReductionOutput,
    x: &Assignment,
    table: Option<&ClausePatterns>,
) -> Result<PreimageWitness, SatError> {
    let n = r.formula.variable_count();
    if x.len() != n {
        return Err(SatError::AssignmentLength(x.len(), n));
    }
    if let Some(c) = r.formula.first_unsatisfied(x) {
        return Err(SatError::Unsatisfied(c));
    }
    let owned;
    let table = match table {
        Some(t) => t,
        None => {
            owned = ClausePatterns::for_sun_size(r.config.enforced_k)?;
            &owned
        }
    };
    for c in 1..=r.legs.len() {
        let p = r.clause_pattern(c, x);
        if !table.is_feasible(&p) {
            return Err(SatError::Internal(format!("clause {c} needs infeasible pattern {p:?}")));
        }
    }
    let choices = r.choices(x)?;
    let w = glue_with_choices(&r.graph, &choices)?.ok_or_else(|| SatError::NotRealizable(x.to_string()))?;
    if !verify_certificate(&w) {
        return Err(SatError::Internal("glued preimage does not verify".into()));
    }
    Ok(w)
}

/// Reads the assignment off a preimage: `x_i` is true exactly when the
/// first wire sun of its cluster has a squared-cycle preimage.
pub fn assignment_from_witness(r: &ReductionOutput, w: &PreimageWitness) -> Result<Assignment, SatError> {
    if w.target() != &r.graph.graph || !w.verify() {
        return Err(SatError::Witness(WitnessError::Invalid));
    }
    let mut values = Vec::with_capacity(r.formula.variable_count());
    for var in 1..=r.formula.variable_count() {
        let sun = r.wire_sun(var, 0)?;
        let part = restrict_preimage(w, &sun.vertices)?;
        let cand = part.candidate().clone().without_labels();
        let value = if are_isomorphic(&cand, &Template::SquaredCycle.graph(sun.k)) {
            true
        } else if are_isomorphic(&cand, &Template::Wheel.graph(sun.k)) {
            false
        } else {
            return Err(SatError::CorruptedWitness(format!("x{var}/H/0/S")));
        };
        values.push(value);
    }
    let x = Assignment::new(values);
    if let Some(c) = r.formula.first_unsatisfied(&x) {
        return Err(SatError::Unsatisfied(c));
    }
    Ok(x)
}
