//! Preimage search: an exhaustive oracle for small targets and a solver for
//! gadget graphs that only branches over wheel / squared-cycle choices.

mod brute;
mod glue;
mod template;

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

pub use brute::{brute_force_preimages, count_labeled_preimages, is_tlg_small, TlgDecision};
pub use glue::{fragment_options, Fragment};
pub use template::{glue_with_choices, template_solve, TemplateAssignment};

/// Caps for the exhaustive searches. A zero budget means unlimited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_target_vertices: usize,
    /// Defaults to twice the target size, which never loses a preimage.
    pub max_candidate_vertices: Option<usize>,
    pub time_budget: Option<Duration>,
    pub node_budget: Option<u64>,
    /// Worker threads; `1` runs on the calling thread, `0` uses the rayon default.
    pub workers: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_target_vertices: 16,
            max_candidate_vertices: None,
            time_budget: None,
            node_budget: None,
            workers: 1,
        }
    }
}

impl SearchLimits {
    pub fn with_node_budget(mut self, nodes: u64) -> Self {
        self.node_budget = Some(nodes);
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub(crate) fn run<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        if self.workers == 1 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.workers).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}

/// Shared node counter and clock for one search.
pub(crate) struct Budget {
    nodes: AtomicU64,
    stopped: AtomicBool,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
}

impl Budget {
    pub(crate) fn new(limits: &SearchLimits) -> Self {
        Budget {
            nodes: AtomicU64::new(0),
            stopped: AtomicBool::new(false),
            node_limit: limits.node_budget,
            deadline: limits.time_budget.map(|d| Instant::now() + d),
        }
    }

    /// Counts one node; false once the budget is gone.
    pub(crate) fn tick(&self) -> bool {
        if self.stopped.load(Ordering::Relaxed) {
            return false;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.node_limit.is_some_and(|l| n > l);
        let over_time = n.is_multiple_of(256) && self.deadline.is_some_and(|d| Instant::now() > d);
        if over_nodes || over_time {
            self.stopped.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.stopped.load(Ordering::Relaxed)
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }
}
