mod commands;
mod config;
mod lemmas;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::{Config, GlobalOpts};
use trilin::{GadgetError, SatError, SearchError};

#[derive(Parser)]
#[command(name = "trilin", version, about = "Triangular line graphs, their preimages and the 3-SAT reduction")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graph operators
    #[command(subcommand)]
    Tlg(TlgCommand),
    /// Gadget blueprints
    #[command(subcommand)]
    Gadget(GadgetCommand),
    /// Preimage search and certificate checking
    #[command(subcommand)]
    Preimage(PreimageCommand),
    /// Compile a 3-CNF file into its gadget graph
    Reduce { cnf: PathBuf },
    /// Decide a 3-CNF file through the reduction
    Decide {
        cnf: PathBuf,
        /// Write the certificate of a SAT answer here
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Build the certificate for a satisfying assignment (`0110` or `-1 2 3 -4`)
    Witness {
        cnf: PathBuf,
        #[arg(allow_hyphen_values = true)]
        assignment: String,
    },
    /// Self-checks
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Subcommand)]
enum TlgCommand {
    /// Apply an operator to a graph file (edge list or JSON)
    Compute {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Operator::T)]
        operator: Operator,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Operator {
    /// Triangular line graph
    T,
    /// Line graph
    Line,
    /// Gallai graph
    Gallai,
}

#[derive(Subcommand)]
enum GadgetCommand {
    /// Emit a blueprint; `trilin gadget build --help` lists the kinds
    Build {
        /// sun, wheel, squared-cycle, fan, strip, bowtie, double-triangle,
        /// binary-enforced-sun, sun7, wire, large-variable, cluster,
        /// clause-sun, clause, appendix-clause
        kind: String,
        params: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum PreimageCommand {
    /// Find every preimage class of a small graph, or with `--templates`
    /// every template assignment of a gadget blueprint
    Solve {
        graph: PathBuf,
        #[arg(long)]
        templates: bool,
    },
    /// Check a witness file; prints VALID or INVALID
    Verify { witness: PathBuf },
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Run the self-check battery
    Lemmas,
}

/// Exit statuses that are not errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    Negative = 1,
    Unknown = 3,
}

/// Marks an error as an integrity or internal failure (exit code 4).
#[derive(Debug)]
pub struct Integrity(pub String);

impl std::fmt::Display for Integrity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Integrity {}

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.is::<Integrity>() {
            return 4;
        }
        if let Some(g) = cause.downcast_ref::<GadgetError>() {
            if matches!(g, GadgetError::Integrity(_)) {
                return 4;
            }
        }
        if let Some(SearchError::BudgetExhausted { .. }) = cause.downcast_ref::<SearchError>() {
            return 3;
        }
        if let Some(s) = cause.downcast_ref::<SatError>() {
            match s {
                SatError::Internal(_)
                | SatError::NotRealizable(_)
                | SatError::CorruptedWitness(_)
                | SatError::Gadget(GadgetError::Integrity(_)) => return 4,
                SatError::Search(SearchError::BudgetExhausted { .. }) => return 3,
                SatError::Unsatisfied(_) => return 1,
                _ => {}
            }
        }
    }
    2
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    let cfg = Config::load(&cli.opts)?;
    log::debug!("{cfg:?}");
    match cli.command {
        Command::Tlg(TlgCommand::Compute { graph, operator }) => commands::tlg_compute(&cfg, &graph, operator),
        Command::Gadget(GadgetCommand::Build { kind, params }) => commands::gadget_build(&cfg, &kind, &params),
        Command::Preimage(PreimageCommand::Solve { graph, templates }) => {
            commands::preimage_solve(&cfg, &graph, templates)
        }
        Command::Preimage(PreimageCommand::Verify { witness }) => commands::preimage_verify(&cfg, &witness),
        Command::Reduce { cnf } => commands::reduce(&cfg, &cnf),
        Command::Decide { cnf, witness_out } => commands::decide(&cfg, &cnf, witness_out.as_deref()),
        Command::Witness { cnf, assignment } => commands::witness(&cfg, &cnf, &assignment),
        Command::Check(CheckCommand::Lemmas) => lemmas::run(&cfg),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
