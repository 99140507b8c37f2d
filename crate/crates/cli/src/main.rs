//! Experiment runner: norms, scheme error curves, Lebesgue constants,
//! embedding bounds, H(b) Gram dumps, and plot-script emission.
//!
//! Exit codes: 0 success, 2 config error, 3 runtime error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;
mod csv_out;
mod plot;

/// Command errors carrying the exit-code class.
#[derive(Debug)]
pub enum CliError {
    /// Invalid configuration (exit code 2).
    Config(String),
    /// Failure while running a valid experiment (exit code 3).
    Runtime(String),
}

impl CliError {
    fn runtime(e: diskapprox::Error) -> Self {
        Self::Runtime(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "diskapprox",
    version,
    about = "Polynomial approximation experiments on function spaces over the unit disk"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON config file (see the README for per-command schemas).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Random seed for every sampled quantity.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output file (overrides the config's `output` field).
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Default degree horizon for spaces that do not carry one.
    #[arg(long, global = true, default_value_t = 512)]
    horizon: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate monomial norms of a space (CSV: n, monomial_norm).
    Norms,
    /// Run a scheme over inputs and record error curves (CSV).
    SchemeRun,
    /// Lebesgue constants of the analytic Dirichlet kernel (CSV: n, L_n).
    Lebesgue {
        /// Degrees to evaluate, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        /// Quadrature point budget; 0 picks 64*(n+1) per degree.
        #[arg(long, default_value_t = 0)]
        quadrature_points: usize,
    },
    /// Inclusion constants, isometry spot checks, and membership bounds (CSV).
    Embed,
    /// Build an H(b) Gram matrix and dump it as a gram-space JSON descriptor.
    HbGram,
    /// Emit a plotting script for a CSV produced by this tool.
    PlotScript {
        /// CSV file to plot.
        #[arg(long)]
        csv: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed;
    let output = cli.output.clone();
    let horizon = cli.horizon;
    let config = cli.config.clone();

    let result = match cli.command {
        Command::Norms => commands::norms(config.as_deref(), output, horizon),
        Command::SchemeRun => {
            commands::scheme_run(config.as_deref(), seed, output, horizon)
        }
        Command::Lebesgue {
            n_list,
            quadrature_points,
        } => commands::lebesgue(&n_list, quadrature_points, output),
        Command::Embed => commands::embed(config.as_deref(), seed, output),
        Command::HbGram => commands::hb_gram(config.as_deref(), output, horizon),
        Command::PlotScript { csv } => commands::plot_script(&csv, output),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(message)) => {
            eprintln!("config error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(message)) => {
            eprintln!("runtime error: {message}");
            ExitCode::from(3)
        }
    }
}
