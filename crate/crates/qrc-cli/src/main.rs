//! Experiment harness for the quantum-reservoir kernel pipeline.
//!
//! Exit codes: 0 success, 2 configuration error, 3 data error,
//! 4 numerical-rank error.

mod commands;
mod config;
mod csvio;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{BackendKind, RunConfig};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Data(String),
    Numeric(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Data(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Data(m) | CliError::Numeric(m) => m,
        }
    }
}

impl From<qrc::Error> for CliError {
    fn from(e: qrc::Error) -> Self {
        match e {
            qrc::Error::NumericalRank(m) => CliError::Numeric(m),
            qrc::Error::Data(m) => CliError::Data(m),
            other => CliError::Config(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "qrc",
    about = "Quantum-reservoir kernel experiments: data generation, featurization, tuning, sweeps, bounds",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON run configuration; defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Master seed override.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Measurement backend override.
    #[arg(long, global = true, value_enum)]
    backend: Option<BackendKind>,

    /// Worker threads for embedding and Gram assembly (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Output directory override.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the input series and the strided window datasets.
    Generate,
    /// Featurize the windows (cached by content hash).
    Embed,
    /// Select Matern kernel hyper-parameters per task.
    Tune,
    /// Sweep the readout regularization; emits per-task curves.
    SweepReg,
    /// Sweep the training-set size on nested prefixes.
    SweepN,
    /// Evaluate the generalization bound next to the observed gap.
    Bound,
    /// Run the whole pipeline in order.
    All,
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(workers) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| CliError::Config(format!("cannot size worker pool: {e}")))?;
    }
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(backend) = cli.backend {
        cfg.measurement.backend = backend;
    }
    if let Some(out) = cli.out {
        cfg.output_dir = out;
    }
    match cli.command {
        Command::Generate => commands::cmd_generate(&cfg),
        Command::Embed => commands::cmd_embed(&cfg),
        Command::Tune => commands::cmd_tune(&cfg),
        Command::SweepReg => commands::cmd_sweep_reg(&cfg),
        Command::SweepN => commands::cmd_sweep_n(&cfg),
        Command::Bound => commands::cmd_bound(&cfg),
        Command::All => commands::cmd_all(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
