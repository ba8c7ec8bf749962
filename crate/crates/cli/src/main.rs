//! `randers`: flag curvatures of left-invariant Randers metrics from the
//! command line.
//!
//! Exit status: 0 success, 1 verdict or tolerance failure, 2 usage or config
//! error, 3 I/O error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::CliError;
use config::{Model, ModelConfig};

#[derive(Parser)]
#[command(name = "randers", version, about = "Chern-Rund connections and flag curvatures of left-invariant Randers metrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Either a JSON config file or the heisenberg5 preset parameters.
#[derive(Args)]
struct ModelArgs {
    /// JSON model config (preset or explicit structure constants)
    #[arg(long, conflicts_with_all = ["lambda", "mu", "xi"])]
    config: Option<PathBuf>,
    /// heisenberg5 bracket constant of [e1,e2]
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    /// heisenberg5 bracket constant of [e3,e4]
    #[arg(long, allow_negative_numbers = true)]
    mu: Option<f64>,
    /// deformation X0 = xi*Z, 0 < xi < 1
    #[arg(long, allow_negative_numbers = true)]
    xi: Option<f64>,
}

impl ModelArgs {
    fn resolve(&self) -> Result<Model, CliError> {
        match (&self.config, self.lambda, self.mu, self.xi) {
            (Some(path), ..) => {
                let text = commands::read_config(path)?;
                ModelConfig::parse(&text)
                    .and_then(ModelConfig::into_model)
                    .map_err(CliError::Usage)
            }
            (None, Some(lambda), Some(mu), Some(xi)) => {
                config::preset_model("heisenberg5", lambda, mu, xi).map_err(CliError::Usage)
            }
            _ => Err(CliError::Usage(
                "give either --config <path> or all of --lambda, --mu, --xi".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Flag curvatures of the eight special flag families as CSV
    Table1 {
        #[command(flatten)]
        model: ModelArgs,
        /// output CSV path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Connection components against their closed forms as JSON
    ConnectionTables {
        #[command(flatten)]
        model: ModelArgs,
        /// output JSON path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Flag curvature K(w, x) of one flag
    Flag {
        #[command(flatten)]
        model: ModelArgs,
        /// flag pole, comma-separated coordinates
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        w: Vec<f64>,
        /// transverse vector, comma-separated coordinates
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        x: Vec<f64>,
    },
    /// Find flags of strictly positive and strictly negative curvature
    Search {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2000)]
        max_samples: usize,
    },
    /// Run the residual suite (finite-difference oracles, connection contracts)
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// random draws per check
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Table1 { model, out, seed } => commands::table1(&model.resolve()?, out.as_deref(), seed),
        Command::ConnectionTables { model, out, seed } => {
            commands::connection_tables(&model.resolve()?, out.as_deref(), seed)
        }
        Command::Flag { model, w, x } => commands::flag(&model.resolve()?, &w, &x),
        Command::Search { model, seed, max_samples } => {
            commands::search(&model.resolve()?, seed, max_samples)
        }
        Command::Verify { model, seed, samples } => commands::verify(&model.resolve()?, seed, samples),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("randers: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
