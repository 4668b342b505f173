//! `frustra` command-line runner.

mod args;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use frustra::spin_core::{DenseConfig, DENSE_CAP_ENV};

use crate::output::{manifest_path, to_json, write_atomic, Format, RunManifest};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] frustra::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    /// The run completed and its output was written, but a checked bound
    /// failed.
    #[error("{0}")]
    Violations(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use frustra::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Lib(E::Validation(_) | E::SizeLimit { .. } | E::DegenerateCut { .. } | E::Parse { .. }) => 2,
            CliError::Lib(_) | CliError::Violations(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "frustra", version, about = "Cooling, block entanglement and frustration in spin models")]
struct Cli {
    /// Output file, or directory for `fig1`. Standard output when omitted.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Largest site count for exact diagonalization.
    #[arg(long, global = true, env = DENSE_CAP_ENV)]
    dense_cap: Option<usize>,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Block entropy over a grid of sizes and block lengths.
    Scaling(commands::ScalingArgs),
    /// Cool one state and report block entropies per threshold.
    Cool(commands::CoolArgs),
    /// Frustration degree of a model or Hamiltonian file.
    Frustration(commands::FrustrationArgs),
    /// Entanglement interference ratio.
    Interference(commands::InterferenceArgs),
    /// RVB interference curves for square and horizontal boundaries.
    Fig1(commands::Fig1Args),
    /// Sample states and check block entropies against analytic bounds.
    BoundsCheck(commands::BoundsArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Scaling(_) => "scaling",
            Command::Cool(_) => "cool",
            Command::Frustration(_) => "frustration",
            Command::Interference(_) => "interference",
            Command::Fig1(_) => "fig1",
            Command::BoundsCheck(_) => "bounds-check",
        }
    }

    fn parameters(&self) -> serde_json::Value {
        let v = match self {
            Command::Scaling(a) => serde_json::to_value(a),
            Command::Cool(a) => serde_json::to_value(a),
            Command::Frustration(a) => serde_json::to_value(a),
            Command::Interference(a) => serde_json::to_value(a),
            Command::Fig1(a) => serde_json::to_value(a),
            Command::BoundsCheck(a) => serde_json::to_value(a),
        };
        v.expect("arguments serialize")
    }

    fn default_format(&self) -> Format {
        match self {
            Command::Scaling(_) | Command::Cool(_) | Command::BoundsCheck(_) => Format::Csv,
            Command::Frustration(_) | Command::Interference(_) => Format::Json,
            Command::Fig1(_) => Format::Tsv,
        }
    }
}

pub struct Context {
    pub cfg: DenseConfig,
    pub format: Format,
    pub seed: u64,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = match cli.dense_cap {
        Some(cap) => DenseConfig::with_cap(cap),
        None => DenseConfig::default(),
    };
    let format = cli.format.unwrap_or_else(|| cli.command.default_format());
    let ctx = Context { cfg, format, seed: cli.seed };
    let (artifacts, outcome) = match &cli.command {
        Command::Scaling(a) => (commands::scaling(a, &ctx)?, Ok(())),
        Command::Cool(a) => (commands::cool(a, &ctx)?, Ok(())),
        Command::Frustration(a) => (commands::frustration(a, &ctx)?, Ok(())),
        Command::Interference(a) => (commands::interference(a, &ctx)?, Ok(())),
        Command::Fig1(a) => (commands::fig1(a, &ctx)?, Ok(())),
        Command::BoundsCheck(a) => commands::bounds_check(a, &ctx)?,
    };
    let multi = artifacts.len() > 1;
    match &cli.output {
        None => {
            for a in &artifacts {
                if multi {
                    println!("# {}", a.file);
                }
                print!("{}", a.contents);
            }
        }
        Some(out) => {
            let paths: Vec<PathBuf> = if multi {
                artifacts.iter().map(|a| out.join(a.file)).collect()
            } else {
                vec![out.clone()]
            };
            for (a, p) in artifacts.iter().zip(&paths) {
                write_atomic(p, &a.contents)?;
            }
            let manifest = RunManifest {
                tool: env!("CARGO_PKG_NAME"),
                version: env!("CARGO_PKG_VERSION"),
                subcommand: cli.command.name(),
                parameters: cli.command.parameters(),
                format,
                dense_cap: ctx.cfg.max_sites,
                seed: ctx.seed,
                outputs: paths,
            };
            write_atomic(&manifest_path(out, multi), &to_json(&manifest))?;
        }
    }
    outcome
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
