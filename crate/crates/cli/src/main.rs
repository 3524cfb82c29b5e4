//! `dcfp`: reliability curves, sensitivity sweeps, oracle validation and
//! path export for the dependent competing failure model.

mod commands;
mod config;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numeric guard: {0}")]
    Numeric(String),
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::ValidationFailed(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<dcfp_core::Error> for CliError {
    fn from(e: dcfp_core::Error) -> Self {
        use dcfp_core::Error as E;
        match e {
            E::StepTooLarge { .. } | E::Quadrature { .. } => CliError::Numeric(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "dcfp",
    version,
    about = "Reliability under mutually dependent degradation and shocks"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed (overrides run.master_seed).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of replications (overrides run.n_reps).
    #[arg(long, global = true)]
    reps: Option<u64>,
    /// Time step (overrides numerics.dt).
    #[arg(long, global = true)]
    dt: Option<f64>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output file (overrides output.path; default stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the resolved configuration as JSON and exit.
    #[arg(long, global = true)]
    print_config: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Monte Carlo reliability curve.
    Curve,
    /// One curve per parameter value, with common random numbers.
    Sweep {
        /// One of D0, gamma, eta, lambda0, alpha2, H, D1.
        parameter: String,
        /// Comma-separated values, e.g. 0,0.001,0.01.
        values: String,
    },
    /// Compare Monte Carlo against the decoupled-case analytic reliability.
    Validate {
        /// Fixed absolute tolerance replacing max(3 CI half-widths, 0.01).
        #[arg(long)]
        tolerance: Option<f64>,
        /// Run the lambda0 x eta grid {0.1,0.5,1} x {0.05,0.2,1}.
        #[arg(long)]
        suite: bool,
    },
    /// Export simulated degradation paths.
    Paths {
        /// Number of paths.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Keep every n-th step (the last point is always kept).
        #[arg(long, default_value_t = 1)]
        stride: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dcfp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let needs_config = !matches!(cli.command, Command::Validate { .. });
    let config = commands::resolve_config(&cli.common, needs_config)?;
    if cli.common.print_config {
        print!("{}", config.to_json());
        return Ok(());
    }
    let work = || match cli.command {
        Command::Curve => commands::curve(&config),
        Command::Sweep {
            ref parameter,
            ref values,
        } => commands::sweep(&config, parameter, values),
        Command::Validate { tolerance, suite } => commands::validate(&config, tolerance, suite),
        Command::Paths { k, stride } => commands::paths(&config, k, stride),
    };
    match cli.common.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Config(format!("--threads: {e}")))?
            .install(work),
        None => work(),
    }
}
