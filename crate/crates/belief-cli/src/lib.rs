//! Command-line front end for the belief toolkit.
//!
//! Subcommands: `generate` (seeded scenario datasets), `analyze`
//! (two-directional independence report), `adjust` (fold a dependence
//! mass into sources), `combine` (fusion rules), `sweep` (rate grids
//! as CSV) and `reproduce` (golden reference checks).
//!
//! Exit codes: 0 success, 1 golden mismatch, 2 bad flags or
//! parameters, 3 I/O failure, 4 data mismatch.

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod golden;
pub mod render;
pub mod reproduce;

pub const EXIT_GOLDEN_MISMATCH: i32 = 1;
pub const EXIT_BAD_FLAGS: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_DATA: i32 = 4;

/// A command failure carrying its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    pub fn io(err: std::io::Error, path: &std::path::Path) -> Self {
        CliError::new(EXIT_IO, format!("{}: {err}", path.display()))
    }

    /// Library errors from flag-derived parameters.
    pub fn param(err: belief::Error) -> Self {
        CliError::new(EXIT_BAD_FLAGS, err.to_string())
    }

    /// Library errors from file-derived data.
    pub fn data(err: belief::Error) -> Self {
        let code = match err {
            belief::Error::TooFewObjects { .. } => EXIT_BAD_FLAGS,
            _ => EXIT_DATA,
        };
        CliError::new(code, err.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "belief",
    about = "Belief-function fusion with source-independence estimation",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Generate a seeded two-source dataset for a dependence scenario.
    Generate(GenerateArgs),
    /// Estimate the independence of two sources from their datasets.
    Analyze(AnalyzeArgs),
    /// Fold a dependence mass into a mass function or dataset.
    Adjust(AdjustArgs),
    /// Combine mass functions with a fusion rule.
    Combine(CombineArgs),
    /// Evaluate the adjustment over a grid of rates, as CSV.
    Sweep(SweepArgs),
    /// Re-run a pinned reference table or figure and diff the values.
    Reproduce(ReproduceArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScenarioArg {
    Independent,
    Positive,
    Negative,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlphaPolicyArg {
    /// Constant attenuation 1.
    One,
    /// Referent cluster size over the object count.
    ClusterSize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    Conjunctive,
    Disjunctive,
    Mean,
}

#[derive(Args)]
pub struct GenerateArgs {
    /// Frame cardinality (1..=16).
    #[arg(long, default_value_t = 5)]
    pub frame_size: usize,
    /// Mass functions per source.
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum)]
    pub scenario: ScenarioArg,
    /// Output prefix; writes `<out>-s1.json` and `<out>-s2.json`.
    #[arg(long)]
    pub out: std::path::PathBuf,
}

#[derive(Args)]
pub struct AnalyzeArgs {
    /// First source dataset (JSON).
    pub source1: std::path::PathBuf,
    /// Second source dataset (JSON).
    pub source2: std::path::PathBuf,
    /// Cluster count; defaults to the frame cardinality.
    #[arg(long)]
    pub clusters: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = AlphaPolicyArg::One)]
    pub alpha_policy: AlphaPolicyArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args)]
pub struct AdjustArgs {
    /// Mass or dataset file (JSON).
    #[arg(long)]
    pub mass: std::path::PathBuf,
    /// Dependence mass on the independent singleton.
    #[arg(long = "I")]
    pub independent: Option<f64>,
    /// Dependence mass on the positive singleton.
    #[arg(long = "P")]
    pub positive: Option<f64>,
    /// Dependence mass on the negative singleton.
    #[arg(long = "N")]
    pub negative: Option<f64>,
    /// Attenuation rate (with --beta and --gamma).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Dependence rate.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Negative-dependence rate.
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    /// Also write the product-space intermediates here (single-mass
    /// input only).
    #[arg(long)]
    pub trace: Option<std::path::PathBuf>,
}

#[derive(Args)]
pub struct CombineArgs {
    /// Mass files (JSON), two or more.
    #[arg(required = true, num_args = 2..)]
    pub masses: Vec<std::path::PathBuf>,
    #[arg(long, value_enum)]
    pub rule: RuleArg,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args)]
pub struct SweepArgs {
    /// Mass file (JSON) to adjust at every grid point.
    #[arg(long)]
    pub mass: std::path::PathBuf,
    /// Grid as start:stop:step, applied to every unpinned rate.
    #[arg(long)]
    pub grid: String,
    /// Pin the attenuation rate instead of sweeping it.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Pin the dependence rate instead of sweeping it.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Pin the negative-dependence rate instead of sweeping it.
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args)]
pub struct ReproduceArgs {
    /// Reference table to re-run (1..=4).
    #[arg(long, conflicts_with = "figure")]
    pub table: Option<u8>,
    /// Reference figure sweep to re-run (1..=2).
    #[arg(long)]
    pub figure: Option<u8>,
    /// Also write the checked values (tables) or sweep (figures) as CSV.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

/// Runs a parsed command; the caller maps the error to an exit code.
pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Generate(args) => commands::generate(&args),
        Command::Analyze(args) => commands::analyze(&args),
        Command::Adjust(args) => commands::adjust(&args),
        Command::Combine(args) => commands::combine(&args),
        Command::Sweep(args) => commands::sweep(&args),
        Command::Reproduce(args) => reproduce::reproduce(&args),
    }
}
