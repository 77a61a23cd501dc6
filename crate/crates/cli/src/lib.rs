//! Command-line front end for the weak closure solver.
//!
//! Every command writes machine-readable JSON. Exit codes: 0 when a command
//! ran to a verdict (whatever the verdict), 1 for bad input, 2 for internal
//! failures and 3 when a check or expectation does not hold.

pub mod commands;
pub mod corpus;
pub mod input;

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wca_core::closure::RestartMode;
use wca_core::wca::SolverConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "wca", version, about = "Decide graph non-Hamiltonicity by weak closure")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the solver and print its verdict.
    Decide(DecideArgs),
    /// Print exclusion-set statistics after one propagation fixpoint.
    Stats(StatsArgs),
    /// Check the solver and the theory against exhaustive enumeration.
    Oracle(OracleArgs),
    /// Test whether two adjacency matrices describe non-isomorphic graphs.
    Noniso(NonisoArgs),
    /// Decide every graph listed in a manifest, one JSON line each.
    Corpus(CorpusArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Edgelist,
    Graph6,
    Builtin,
}

#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    /// Input file, or a builtin name such as `petersen` or `complete:5`.
    pub input: String,
    /// Input format; inferred from the file extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Read edge-list pairs as arcs instead of undirected edges.
    #[arg(long)]
    pub directed: bool,
    /// Vertex label to use as the fixed start of every cycle.
    #[arg(long, value_name = "LABEL")]
    pub start_vertex: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Restart {
    WorkQueue,
    Literal,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Top-level probe cap (default 50 n^4).
    #[arg(long)]
    pub probe_budget: Option<u64>,
    /// Wall-clock cap in seconds.
    #[arg(long, value_name = "SECONDS")]
    pub time_limit: Option<f64>,
    #[arg(long, value_enum, default_value = "work-queue")]
    pub restart: Restart,
    /// Stop at the first verified cycle instead of closing to the fixpoint.
    #[arg(long)]
    pub no_settle: bool,
}

impl SolverArgs {
    pub fn config(&self) -> SolverConfig {
        SolverConfig {
            probe_budget: self.probe_budget,
            time_limit: self.time_limit,
            restart: match self.restart {
                Restart::WorkQueue => RestartMode::WorkQueue,
                Restart::Literal => RestartMode::Literal,
            },
            settle: !self.no_settle,
            seed_exclusions: None,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct DecideArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// File of `u i v j` inducers merged into the exclusion set.
    #[arg(long, value_name = "PATH")]
    pub seed_exclusions: Option<PathBuf>,
    /// Print every top-level deduction to standard error.
    #[arg(long)]
    pub trace: bool,
    /// Write the full report here (`-` for standard output).
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Write the check results here (`-` for standard output).
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct NonisoArgs {
    /// Adjacency matrix of G: one row per line, entries 0 or 1.
    pub g: PathBuf,
    /// Adjacency matrix of H.
    pub h: PathBuf,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CorpusArgs {
    /// TOML manifest listing graphs and their expected results.
    pub manifest: PathBuf,
    /// Graphs decided concurrently.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
}

/// Marks an error as the caller's fault (exit code 1).
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

/// A check that ran but did not hold (exit code 3).
#[derive(Debug)]
pub struct CheckFailed(pub String);

impl fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

pub fn input_error(message: impl Into<String>) -> anyhow::Error {
    InputError(message.into()).into()
}

pub fn exit_code(err: &anyhow::Error) -> i32 {
    if err.chain().any(|e| e.is::<CheckFailed>()) {
        EXIT_CHECK_FAILED
    } else if err.chain().any(|e| e.is::<InputError>()) {
        EXIT_INPUT
    } else {
        EXIT_INTERNAL
    }
}

pub fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Decide(a) => commands::cmd_decide(&a),
        Command::Stats(a) => commands::cmd_stats(&a),
        Command::Oracle(a) => commands::cmd_oracle(&a),
        Command::Noniso(a) => commands::cmd_noniso(&a),
        Command::Corpus(a) => corpus::cmd_corpus(&a),
    }
}
