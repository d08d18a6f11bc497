//! `blochkit`: command-line front end.
//!
//! Exit codes: 0 success, 1 verify-suite had failures, 2 invalid input or
//! usage, 3 numerical failure (pole, overflow, singular system). Every
//! failure writes one `blochkit-error kind=<tag> msg=<text>` line to stderr.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use blochkit::{BlochError, DiskGrid};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "blochkit", version, about = "Bloch-space norms, operator bounds, isometries and spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Common {
    /// Input JSON file.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Report destination; stdout when omitted.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Rings at radii 1 - 2^-k, k = 1..=K (plus the origin).
    #[arg(long, global = true, default_value_t = DiskGrid::DEFAULT_RINGS)]
    rings: usize,
    /// Points per ring.
    #[arg(long, global = true, default_value_t = DiskGrid::DEFAULT_ANGLES)]
    angles: usize,
    /// Local refinement rounds after the grid pass.
    #[arg(long, global = true, default_value_t = DiskGrid::DEFAULT_REFINE)]
    refine: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Bloch norm, seminorm and sup norm of a function.
    Norm,
    /// Norm bounds and an empirical lower bound for an operator.
    Bounds,
    /// Isometry verdict for a multiplication or composition operator.
    CheckIsometry,
    /// Spectrum of a multiplication, rotation-composition or isometric weighted operator.
    Spectrum,
    /// Solve f(zeta z) - mu f(z) = g(z) for a rotation of finite order.
    Resolvent,
    /// Run the built-in verification catalogue.
    VerifySuite,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Norm => "norm",
            Command::Bounds => "bounds",
            Command::CheckIsometry => "check-isometry",
            Command::Spectrum => "spectrum",
            Command::Resolvent => "resolvent",
            Command::VerifySuite => "verify-suite",
        }
    }
}

/// Failure of a job, carrying its stderr tag and exit code.
#[derive(Debug)]
pub enum JobError {
    Bloch(BlochError),
    Input(String),
    Io(String),
}

impl JobError {
    fn tag(&self) -> &'static str {
        match self {
            JobError::Bloch(e) => e.tag(),
            JobError::Input(_) => "invalid_input",
            JobError::Io(_) => "io",
        }
    }

    fn code(&self) -> u8 {
        match self {
            JobError::Bloch(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            JobError::Bloch(e) => e.to_string(),
            JobError::Input(m) | JobError::Io(m) => m.clone(),
        }
    }
}

impl From<BlochError> for JobError {
    fn from(e: BlochError) -> Self {
        JobError::Bloch(e)
    }
}

fn configure_threads() -> Result<(), JobError> {
    let Ok(raw) = std::env::var("BLOCHKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| JobError::Input(format!("BLOCHKIT_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| JobError::Io(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| commands::run(cli.command, &cli.common));
    match result {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let msg = e.message().replace(['\n', '\r'], " ");
            eprintln!("blochkit-error kind={} msg={}", e.tag(), msg);
            ExitCode::from(e.code())
        }
    }
}
