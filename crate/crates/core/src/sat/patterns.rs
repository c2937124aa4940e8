//! Which wheel / squared-cycle combinations the three suns of a clause
//! gadget can take, each backed by a verified preimage.

use std::collections::BTreeMap;

use crate::error::SatError;
use crate::gadget::{
    join_clause, load_appendix_clause_gadget, load_appendix_preimage, make_clause_sun_with, GadgetBlueprint,
    Template, CLAUSE_SUN_K,
};
use crate::graph::VertexLabel;
use crate::iso::are_isomorphic;
use crate::search::{template_solve, SearchLimits};
use crate::tlg::{restrict_preimage, PreimageWitness};

/// Templates of the suns `S/1`, `S/2`, `S/3`.
pub type Pattern = [Template; 3];

pub const SUN_NAMES: [&str; 3] = ["S/1/S", "S/2/S", "S/3/S"];

/// Feasible clause patterns with one certified witness each.
#[derive(Debug, Clone)]
pub struct ClausePatterns {
    pub gadget: GadgetBlueprint,
    witnesses: BTreeMap<Pattern, PreimageWitness>,
}

/// The template a witness induces on a registered sun.
pub fn template_of(g: &GadgetBlueprint, w: &PreimageWitness, sun: &str) -> Result<Template, SatError> {
    let sub = g.sub(sun)?;
    let r = restrict_preimage(w, &sub.vertices)?;
    let cand = r.candidate().clone().without_labels().without_isolated();
    Template::BOTH
        .into_iter()
        .find(|t| are_isomorphic(&cand, &t.graph(sub.k)))
        .ok_or_else(|| SatError::CorruptedWitness(sun.to_owned()))
}

fn pattern_of(g: &GadgetBlueprint, w: &PreimageWitness) -> Result<Pattern, SatError> {
    Ok([
        template_of(g, w, SUN_NAMES[0])?,
        template_of(g, w, SUN_NAMES[1])?,
        template_of(g, w, SUN_NAMES[2])?,
    ])
}

/// Relabels target vertices `S/l/i -> S/(l+1)/i`, the cyclic symmetry of
/// the clause join.
fn rotated(g: &GadgetBlueprint, w: &PreimageWitness) -> Result<PreimageWitness, SatError> {
    let index = g.graph.label_index();
    let mut image = vec![usize::MAX; g.graph.vertex_count()];
    for (label, &v) in &index {
        let s = label.segments();
        let moved = match s {
            [p, l, i] if p == "S" => l
                .parse::<usize>()
                .ok()
                .map(|l| VertexLabel::new(["S".to_owned(), (l % 3 + 1).to_string(), i.clone()])),
            _ => None,
        };
        let target = moved
            .and_then(|m| index.get(&m).copied())
            .ok_or_else(|| SatError::Internal(format!("clause gadget vertex {label} has no rotation image")))?;
        image[v] = target;
    }
    let map = w.entries().map(|(u, v, t)| (u, v, image[t]));
    let r = PreimageWitness::new(w.target().clone(), w.candidate().clone(), map)?;
    if !r.verify() {
        return Err(SatError::Internal("rotated clause preimage does not verify".into()));
    }
    Ok(r)
}

impl ClausePatterns {
    /// The shipped preimages with zero, one and two wheels and their cyclic
    /// rotations, each re-verified.
    pub fn shipped() -> Result<Self, SatError> {
        let gadget = load_appendix_clause_gadget()?;
        let mut witnesses = BTreeMap::new();
        for wheels in 0..3 {
            let mut w = load_appendix_preimage(wheels)?;
            for _ in 0..3 {
                if !w.verify() {
                    return Err(SatError::Internal(format!("shipped {wheels}-wheel preimage does not verify")));
                }
                witnesses.entry(pattern_of(&gadget, &w)?).or_insert_with(|| w.clone());
                w = rotated(&gadget, &w)?;
            }
        }
        Self::checked(ClausePatterns { gadget, witnesses })
    }

    /// Patterns found by the template solver on three bare `k`-suns.
    pub fn solved(k: usize) -> Result<Self, SatError> {
        let s = make_clause_sun_with(k)?;
        let gadget = join_clause(&s, &s, &s)?;
        let mut witnesses = BTreeMap::new();
        for a in template_solve(&gadget, &SearchLimits::default())? {
            let p = [a.choices[SUN_NAMES[0]], a.choices[SUN_NAMES[1]], a.choices[SUN_NAMES[2]]];
            witnesses.entry(p).or_insert(a.witness);
        }
        Self::checked(ClausePatterns { gadget, witnesses })
    }

    /// [`Self::shipped`] for 12-suns, [`Self::solved`] otherwise.
    pub fn for_sun_size(k: usize) -> Result<Self, SatError> {
        if k == CLAUSE_SUN_K {
            Self::shipped()
        } else {
            Self::solved(k)
        }
    }

    /// A clause gadget is only usable if exactly the all-wheel pattern fails.
    fn checked(self) -> Result<Self, SatError> {
        let all_wheel = [Template::Wheel; 3];
        if self.witnesses.len() != 7 || self.witnesses.contains_key(&all_wheel) {
            let found: Vec<String> = self.witnesses.keys().map(|p| format!("{p:?}")).collect();
            return Err(SatError::Internal(format!(
                "clause gadget admits {} patterns, expected the 7 with a squared cycle: {}",
                self.witnesses.len(),
                found.join(", ")
            )));
        }
        Ok(self)
    }

    pub fn is_feasible(&self, p: &Pattern) -> bool {
        self.witnesses.contains_key(p)
    }

    pub fn patterns(&self) -> impl Iterator<Item = &Pattern> {
        self.witnesses.keys()
    }

    pub fn witness(&self, p: &Pattern) -> Option<&PreimageWitness> {
        self.witnesses.get(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tlg::verify_certificate;

    #[test]
    fn shipped_table_has_the_seven_patterns() {
        let t = ClausePatterns::shipped().unwrap();
        assert_eq!(t.patterns().count(), 7);
        assert!(!t.is_feasible(&[Template::Wheel; 3]));
        for p in t.patterns() {
            assert!(verify_certificate(t.witness(p).unwrap()));
        }
    }

    #[test]
    fn solver_agrees_with_the_shipped_table() {
        let shipped: Vec<Pattern> = ClausePatterns::shipped().unwrap().patterns().copied().collect();
        let solved: Vec<Pattern> = ClausePatterns::solved(12).unwrap().patterns().copied().collect();
        assert_eq!(shipped, solved);
    }

    #[test]
    fn rotation_is_a_symmetry_of_the_gadget() {
        let g = load_appendix_clause_gadget().unwrap();
        let w = load_appendix_preimage(1).unwrap();
        let once = rotated(&g, &w).unwrap();
        let thrice = rotated(&g, &rotated(&g, &once).unwrap()).unwrap();
        assert_eq!(thrice, w);
        let p = pattern_of(&g, &w).unwrap();
        assert_eq!(pattern_of(&g, &once).unwrap(), [p[2], p[0], p[1]]);
    }
}
