//! Exhaustive satisfiability through the reduction.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::cnf::{Assignment, CnfFormula};
use super::patterns::ClausePatterns;
use super::reduce::{compile_with, witness_with_patterns, ReductionConfig, ReductionOutput};
use crate::error::SatError;
use crate::search::SearchLimits;
use crate::tlg::PreimageWitness;

pub const DEFAULT_MAX_VARS: usize = 20;

const CHUNK: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecideLimits {
    /// Formulas with more variables are refused.
    pub max_vars: usize,
    /// Caps the number of assignments examined.
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    pub workers: usize,
}

impl Default for DecideLimits {
    fn default() -> Self {
        DecideLimits {
            max_vars: DEFAULT_MAX_VARS,
            node_budget: None,
            time_budget: None,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Decision {
    Sat {
        assignment: Assignment,
        witness: PreimageWitness,
    },
    /// `rejected` counts assignments that every clause table accepted but
    /// that did not glue into a verified preimage.
    Unsat { rejected: u64 },
    Unknown { examined: u64 },
}

impl Decision {
    pub fn status(&self) -> &'static str {
        match self {
            Decision::Sat { .. } => "SAT",
            Decision::Unsat { .. } => "UNSAT",
            Decision::Unknown { .. } => "UNKNOWN",
        }
    }
}

pub fn decide(f: &CnfFormula, limits: &DecideLimits) -> Result<Decision, SatError> {
    decide_with(f, &ReductionConfig::default(), limits)
}

/// Walks the `2^n` cluster assignments in lexicographic order. An
/// assignment is accepted once every clause pattern is feasible and the
/// compiled graph glues into a verified preimage under it; the lowest
/// accepted assignment wins regardless of worker count.
pub fn decide_with(f: &CnfFormula, config: &ReductionConfig, limits: &DecideLimits) -> Result<Decision, SatError> {
    let n = f.variable_count();
    let guard = limits.max_vars.min(63);
    if n > guard {
        return Err(SatError::TooManyVariables(n, guard));
    }
    let r = compile_with(f, config)?;
    let table = ClausePatterns::for_sun_size(config.enforced_k)?;
    let total = 1u64 << n;
    let limit = limits.node_budget.map_or(total, |b| b.min(total));
    let deadline = limits.time_budget.map(|d| Instant::now() + d);
    let feasible = |i: u64| {
        let x = Assignment::from_index(i, n);
        (1..=r.legs.len()).all(|c| table.is_feasible(&r.clause_pattern(c, &x)))
    };
    let pool = SearchLimits::default().with_workers(limits.workers);
    let mut rejected = 0;
    let mut start = 0;
    while start < limit {
        if deadline.is_some_and(|d| Instant::now() > d) {
            return Ok(Decision::Unknown { examined: start });
        }
        let end = (start + CHUNK).min(limit);
        let hit = pool.run(|| (start..end).into_par_iter().find_first(|&i| feasible(i)));
        let Some(i) = hit else {
            start = end;
            continue;
        };
        let x = Assignment::from_index(i, n);
        match accept(&r, &x, &table) {
            Ok(witness) => return Ok(Decision::Sat { assignment: x, witness }),
            Err(SatError::NotRealizable(_)) => rejected += 1,
            Err(e) => return Err(e),
        }
        start = i + 1;
    }
    if limit < total {
        Ok(Decision::Unknown { examined: limit })
    } else {
        Ok(Decision::Unsat { rejected })
    }
}

fn accept(r: &ReductionOutput, x: &Assignment, table: &ClausePatterns) -> Result<PreimageWitness, SatError> {
    witness_with_patterns(r, x, Some(table))
}
