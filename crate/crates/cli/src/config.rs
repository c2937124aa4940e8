//! Settings from `TRILIN_CONFIG` (TOML) merged under command-line flags.

use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use serde::Deserialize;

use trilin::sat::{DecideLimits, ReductionConfig, DEFAULT_MAX_VARS};
use trilin::SearchLimits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Edgelist,
    Dot,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    format: Option<Format>,
    workers: Option<usize>,
    time_budget: Option<f64>,
    node_budget: Option<u64>,
    max_vars: Option<usize>,
    max_target_vertices: Option<usize>,
    appendix_dir: Option<PathBuf>,
    enforced_k: Option<usize>,
}

/// Flags shared by every command.
#[derive(Debug, Default, Args)]
pub struct GlobalOpts {
    /// Output format for graph-valued results
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the main output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for the searches (0 = one per core)
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Wall-clock budget per search, in seconds
    #[arg(long, global = true)]
    pub time_budget: Option<f64>,
    /// Node budget per search (search nodes, or assignments for `decide`)
    #[arg(long, global = true)]
    pub node_budget: Option<u64>,
    /// Largest formula `decide` accepts
    #[arg(long, global = true)]
    pub max_vars: Option<usize>,
    /// Largest target the exhaustive preimage search accepts
    #[arg(long, global = true)]
    pub max_target_vertices: Option<usize>,
    /// Directory holding the clause gadget data files
    #[arg(long, global = true)]
    pub appendix_dir: Option<PathBuf>,
    /// Sun size inside the large variable gadgets
    #[arg(long, global = true)]
    pub enforced_k: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Config {
    pub format: Format,
    pub out: Option<PathBuf>,
    pub workers: usize,
    pub time_budget: Option<Duration>,
    pub node_budget: Option<u64>,
    pub max_vars: usize,
    pub max_target_vertices: usize,
    pub appendix_dir: Option<PathBuf>,
    pub enforced_k: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            format: Format::Json,
            out: None,
            workers: 1,
            time_budget: None,
            node_budget: None,
            max_vars: DEFAULT_MAX_VARS,
            max_target_vertices: SearchLimits::default().max_target_vertices,
            appendix_dir: None,
            enforced_k: ReductionConfig::default().enforced_k,
        }
    }
}

fn seconds(s: f64) -> Result<Duration> {
    Duration::try_from_secs_f64(s).with_context(|| format!("invalid time budget {s}"))
}

impl Config {
    /// Defaults, then the file named by `TRILIN_CONFIG`, then flags.
    pub fn load(flags: &GlobalOpts) -> Result<Self> {
        let file = match std::env::var_os("TRILIN_CONFIG") {
            Some(path) => read_file_config(Path::new(&path))?,
            None => FileConfig::default(),
        };
        let d = Config::default();
        let time_budget = match flags.time_budget.or(file.time_budget) {
            Some(s) => Some(seconds(s)?),
            None => None,
        };
        Ok(Config {
            format: flags.format.or(file.format).unwrap_or(d.format),
            out: flags.out.clone(),
            workers: flags.workers.or(file.workers).unwrap_or(d.workers),
            time_budget,
            node_budget: flags.node_budget.or(file.node_budget),
            max_vars: flags.max_vars.or(file.max_vars).unwrap_or(d.max_vars),
            max_target_vertices: flags
                .max_target_vertices
                .or(file.max_target_vertices)
                .unwrap_or(d.max_target_vertices),
            appendix_dir: flags.appendix_dir.clone().or(file.appendix_dir),
            enforced_k: flags.enforced_k.or(file.enforced_k).unwrap_or(d.enforced_k),
        })
    }

    pub fn search_limits(&self) -> SearchLimits {
        SearchLimits {
            max_target_vertices: self.max_target_vertices,
            max_candidate_vertices: None,
            time_budget: self.time_budget,
            node_budget: self.node_budget,
            workers: self.workers,
        }
    }

    pub fn decide_limits(&self) -> DecideLimits {
        DecideLimits {
            max_vars: self.max_vars,
            node_budget: self.node_budget,
            time_budget: self.time_budget,
            workers: self.workers,
        }
    }

    pub fn reduction(&self) -> ReductionConfig {
        ReductionConfig {
            enforced_k: self.enforced_k,
        }
    }
}

fn read_file_config(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
}
