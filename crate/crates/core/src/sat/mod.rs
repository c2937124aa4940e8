//! 3-SAT reduction: compile a formula into a graph that has a preimage
//! under the triangular line graph operator iff the formula is satisfiable.

mod cnf;
mod decide;
mod patterns;
mod reduce;

pub use cnf::{parse_dimacs, Assignment, Clause, CnfFormula, Literal};
pub use decide::{decide, decide_with, DecideLimits, Decision, DEFAULT_MAX_VARS};
pub use patterns::{template_of, ClausePatterns, Pattern, SUN_NAMES};
pub use reduce::{
    assignment_from_witness, cluster_template, compile, compile_with, leg_index, witness_from_assignment, Leg,
    ReductionConfig, ReductionOutput,
};
