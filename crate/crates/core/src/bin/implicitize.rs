use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use implicitize::par::{configure_threads, THREADS_ENV};
use implicitize::pipeline::{self, InputSpec, RunOptions};
use implicitize::report::{to_json, RegionReport, VerifyReport};
use implicitize::{parse_tpoly, region, verify_substitution, Bidegree, Error, TPoly};

/// Matrix representations and implicit equations of rational surfaces P1xP1 --> P3.
#[derive(Parser, Debug)]
#[command(name = "implicitize", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the corners of the good evaluation region for a bidegree.
    Region {
        #[arg(long, value_name = "E1,E2")]
        bidegree: Bidegree,
    },
    /// Hilbert function of Z0..Z3 in degree nu, Euler characteristic and MacRae degree.
    Hilbert {
        input: PathBuf,
        #[arg(long, value_name = "A,B")]
        nu: Option<Bidegree>,
    },
    /// Print the matrix representation M_nu.
    Matrix {
        input: PathBuf,
        #[arg(long, value_name = "A,B")]
        nu: Option<Bidegree>,
    },
    /// Run the full pipeline and print the report.
    Implicitize {
        input: PathBuf,
        #[arg(long, value_name = "A,B")]
        nu: Option<Bidegree>,
        /// Number of maximal minors whose determinants are combined by gcd.
        #[arg(long, value_name = "K")]
        minors: Option<usize>,
        #[arg(long, value_name = "N")]
        seed: Option<u64>,
        /// Also run the rank-drop and interpolation cross-checks.
        #[arg(long)]
        verify: bool,
        /// Stop after building the matrix.
        #[arg(long)]
        matrix_only: bool,
        /// Record per-stage wall-clock timings (reports are then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Check that an equation vanishes on the parametrization.
    Verify {
        input: PathBuf,
        /// File holding the equation in T1..T4, or a report from `implicitize`.
        #[arg(long, value_name = "FILE")]
        equation: PathBuf,
    },
}

fn read_equation(path: &Path) -> Result<TPoly, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    if let Ok(serde_json::Value::Object(obj)) = serde_json::from_str(&text) {
        return match obj.get("equation") {
            Some(serde_json::Value::String(s)) => parse_tpoly(s),
            _ => Err(Error::Input(format!("{} has no \"equation\" string", path.display()))),
        };
    }
    parse_tpoly(text.trim())
}

fn warn_all(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn run(cmd: Command) -> Result<String, Error> {
    match cmd {
        Command::Region { bidegree } => Ok(to_json(&RegionReport::from(&region(bidegree)?))),
        Command::Hilbert { input, nu } => {
            let spec = InputSpec::from_path(&input)?;
            let opts = RunOptions { nu, ..Default::default() };
            let r = pipeline::run_hilbert(&spec, &opts)?;
            warn_all(&r.warnings);
            Ok(to_json(&r))
        }
        Command::Matrix { input, nu } => {
            let spec = InputSpec::from_path(&input)?;
            let opts = RunOptions { nu, ..Default::default() };
            let (r, _) = pipeline::run_matrix(&spec, &opts)?;
            warn_all(&r.warnings);
            Ok(to_json(&r))
        }
        Command::Implicitize { input, nu, minors, seed, verify, matrix_only, timings } => {
            let spec = InputSpec::from_path(&input)?;
            let opts = RunOptions {
                nu,
                seed,
                minors,
                matrix_only,
                extra_checks: verify,
                timings,
                ..Default::default()
            };
            warn_all(&pipeline::prepare(&spec, &opts)?.warnings);
            Ok(to_json(&pipeline::run_implicitize(&spec, &opts)?))
        }
        Command::Verify { input, equation } => {
            let spec = InputSpec::from_path(&input)?;
            let f = spec.parametrization()?;
            let eq = read_equation(&equation)?;
            Ok(to_json(&VerifyReport {
                equation: eq.to_string(),
                equation_degree: eq.total_degree().unwrap_or(0) as usize,
                verified: verify_substitution(&eq, &f),
            }))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        configure_threads(n);
    }
    match run(cli.command) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 1 } else { 2 })
        }
    }
}
