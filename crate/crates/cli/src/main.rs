//! `tenseig` command-line front end.
//!
//! Exit codes: 0 ok, 1 failed check, 2 input or usage error, 3 audit violation,
//! 4 degenerate input.

mod check;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use tenseig::io::{format_number, format_tensor, read_tensor, read_vector};
use tenseig::report::{run_eig, run_svd, EigTarget, RunReport, RunSettings};
use tenseig::{random_tensor, Config, Error, Shape};

/// Environment variable that overrides the default restart count.
const RESTARTS_ENV: &str = "TENSEIG_RESTARTS";

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "tenseig", version, about = "Eigenpairs and singular tuples of real dense tensors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the multilinear form at one vector per mode.
    Eval {
        tensor: PathBuf,
        #[arg(required = true)]
        vectors: Vec<PathBuf>,
    },
    /// Compute eigenpairs of a square tensor and print a JSON report.
    #[command(group(ArgGroup::new("target").required(true).args(["mode", "symmetric"])))]
    Eig {
        tensor: PathBuf,
        /// Mode (1-based) whose stationarity equation to solve.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        mode: Option<u64>,
        /// Critical points of the symmetric form on the unit sphere.
        #[arg(long)]
        symmetric: bool,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        restarts: Option<usize>,
        /// Classify Morse indices and check them against the sphere's topology.
        #[arg(long, requires = "symmetric", conflicts_with = "mode")]
        audit: bool,
    },
    /// Compute singular tuples and print a JSON report.
    Svd {
        tensor: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        restarts: Option<usize>,
    },
    /// Write a seeded random tensor.
    Gen {
        /// Comma-separated dimensions, e.g. `3,3,3`.
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        symmetric: bool,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the identity checks on a tensor.
    Check {
        tensor: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn input_error(context: &Path, e: Error) -> ExitCode {
    eprintln!("tenseig: {}: {e}", context.display());
    ExitCode::from(EXIT_USAGE)
}

fn settings(p: f64, seed: u64, restarts: Option<usize>) -> Result<RunSettings, String> {
    let (restarts, restarts_source) = match restarts {
        Some(r) => (r, "flag".to_string()),
        None => match std::env::var(RESTARTS_ENV) {
            Ok(v) => {
                let r = v.trim().parse().map_err(|_| format!("{RESTARTS_ENV}={v:?} is not a count"))?;
                (r, format!("env:{RESTARTS_ENV}"))
            }
            Err(_) => (Config::default().restarts, "default".to_string()),
        },
    };
    Ok(RunSettings { p, seed, restarts, restarts_source })
}

fn emit(report: &RunReport) -> ExitCode {
    print!("{}", report.to_json());
    for d in &report.diagnostics {
        eprintln!("tenseig: {d}");
    }
    ExitCode::from(report.status.exit_code() as u8)
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Eval { tensor, vectors } => {
            let (t, _) = match read_tensor(&tensor) {
                Ok(x) => x,
                Err(e) => return input_error(&tensor, e),
            };
            let mut vs = Vec::with_capacity(vectors.len());
            for path in &vectors {
                match read_vector(path) {
                    Ok(v) => vs.push(v),
                    Err(e) => return input_error(path, e),
                }
            }
            let refs: Vec<&[f64]> = vs.iter().map(Vec::as_slice).collect();
            match t.evaluate(&refs) {
                Ok(x) => {
                    println!("{}", format_number(x));
                    ExitCode::SUCCESS
                }
                Err(e) => input_error(&tensor, e),
            }
        }
        Command::Eig { tensor, mode, symmetric, p, seed, restarts, audit } => {
            let settings = match settings(p, seed, restarts) {
                Ok(s) => s,
                Err(msg) => {
                    eprintln!("tenseig: {msg}");
                    return ExitCode::from(EXIT_USAGE);
                }
            };
            let target = match (symmetric, mode) {
                (true, _) => EigTarget::Symmetric,
                (false, Some(m)) => EigTarget::Mode(m as usize - 1),
                (false, None) => unreachable!("clap requires --mode or --symmetric"),
            };
            let bytes = match std::fs::read(&tensor) {
                Ok(b) => b,
                Err(e) => return input_error(&tensor, e.into()),
            };
            match run_eig(&bytes, target, &settings, audit) {
                Ok(report) => emit(&report),
                Err(e) => input_error(&tensor, e),
            }
        }
        Command::Svd { tensor, p, seed, restarts } => {
            let settings = match settings(p, seed, restarts) {
                Ok(s) => s,
                Err(msg) => {
                    eprintln!("tenseig: {msg}");
                    return ExitCode::from(EXIT_USAGE);
                }
            };
            let bytes = match std::fs::read(&tensor) {
                Ok(b) => b,
                Err(e) => return input_error(&tensor, e.into()),
            };
            match run_svd(&bytes, &settings) {
                Ok(report) => emit(&report),
                Err(e) => input_error(&tensor, e),
            }
        }
        Command::Gen { shape, seed, symmetric, out } => {
            let t = match Shape::new(shape).and_then(|s| random_tensor::<f64>(&s, seed, symmetric)) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("tenseig: {e}");
                    return ExitCode::from(EXIT_USAGE);
                }
            };
            let text = format_tensor(&t);
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text) {
                        return input_error(&path, e.into());
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Command::Check { tensor, seed } => {
            let (t, _) = match read_tensor(&tensor) {
                Ok(x) => x,
                Err(e) => return input_error(&tensor, e),
            };
            let results = check::run_checks(&t, seed);
            let mut failed = false;
            for r in &results {
                println!("{r}");
                failed |= r.failed();
            }
            if failed {
                ExitCode::from(EXIT_CHECK_FAILED)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    run(cli)
}
