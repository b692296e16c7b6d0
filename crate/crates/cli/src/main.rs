//! `isoperim`: single-shot computations, sweeps and property suites.

mod commands;
mod output;
mod random;
mod suites;
mod sweep;

use clap::{Args, Parser, Subcommand, ValueEnum};
use isoperim::Error;
use std::path::PathBuf;
use std::process::ExitCode;

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_NONCONVERGENCE: u8 = 3;
pub const EXIT_VERIFY: u8 = 4;

/// Default seed of the randomized property suites.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Debug)]
#[command(name = "isoperim", version, about = "Weighted isoperimetric inequalities on the half-space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Write to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Override grid sizes (angular nodes, eigen grid).
    #[arg(long, global = true, value_parser = grid_size)]
    pub grid: Option<usize>,
    /// Override the relative quadrature tolerance.
    #[arg(long, global = true, value_parser = positive)]
    pub tol: Option<f64>,
    /// Seed of the randomized property suites.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

fn finite(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        Ok(_) => Err("value must be finite".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let x = finite(s)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err("value must be positive".into())
    }
}

fn grid_size(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e: std::num::ParseIntError| e.to_string())?;
    if n >= 16 {
        Ok(n)
    } else {
        Err("grid must have at least 16 nodes".into())
    }
}

/// (k, l, N, α).
#[derive(Args, Debug, Clone, Copy)]
pub struct Quad {
    #[arg(long, allow_hyphen_values = true, value_parser = finite)]
    pub k: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = finite)]
    pub l: f64,
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true, value_parser = finite)]
    pub alpha: f64,
}

/// A star set: either m(θ) = 1 + amp·cos(freq·θ) or samples read from a CSV
/// file with columns `theta,m` spanning the whole angular interval.
#[derive(Args, Debug, Clone)]
pub struct Shape {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true, value_parser = finite)]
    pub amp: f64,
    #[arg(long, default_value_t = 2.0, value_parser = finite)]
    pub freq: f64,
    #[arg(long, value_name = "CSV")]
    pub file: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Perturbation {
    Sin,
    Cos,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenKind {
    Wirtinger,
    Poincare,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Rearrange,
    Geometry,
    Spectral,
    Functional,
    Counterex,
    Orthant,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Region label and thresholds of (k, l, N, α).
    Classify(Quad),
    /// Rayleigh ratio of the half-ball.
    Crad(Quad),
    /// Rayleigh ratio of a star set.
    Rayleigh {
        #[command(flatten)]
        quad: Quad,
        #[command(flatten)]
        shape: Shape,
    },
    /// Radius of the half-ball with the same weighted measure as a star set.
    Symmetrize {
        #[command(flatten)]
        quad: Quad,
        #[command(flatten)]
        shape: Shape,
    },
    /// Starshaped rearrangement of v(θ, z) = bump(|z − c0 − c1·cos 2θ| / width);
    /// the interpolation bound is evaluated on v.
    Starshape {
        #[command(flatten)]
        quad: Quad,
        #[arg(long, default_value_t = 0.8, value_parser = finite)]
        c0: f64,
        #[arg(long, default_value_t = 0.2, allow_hyphen_values = true, value_parser = finite)]
        c1: f64,
        #[arg(long, default_value_t = 0.5, value_parser = positive)]
        width: f64,
        /// Exponent A of the interpolation bound; defaults to its largest value.
        #[arg(long, value_parser = finite)]
        a: Option<f64>,
    },
    /// Second variation of the half-ball along sin(freq·θ) or cos(freq·θ).
    Secvar {
        #[command(flatten)]
        quad: Quad,
        #[arg(long, value_enum, default_value_t = Perturbation::Sin)]
        u: Perturbation,
        #[arg(long, default_value_t = 1.0, value_parser = finite)]
        freq: f64,
    },
    /// Weighted Wirtinger or hemisphere Poincaré eigenvalue.
    Eigen {
        #[arg(long, value_enum)]
        kind: EigenKind,
        #[arg(long, allow_hyphen_values = true, value_parser = finite)]
        alpha: f64,
        #[arg(long = "N", default_value_t = 2)]
        n: usize,
    },
    /// Hardy constant and its witness sequence.
    Hardy {
        #[arg(long, value_parser = finite)]
        p: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = finite)]
        k: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = finite)]
        alpha: f64,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, value_parser = positive)]
        eps: Option<f64>,
    },
    /// Caffarelli–Kohn–Nirenberg thresholds, radial minimizer and constant.
    Ckn {
        #[arg(long, allow_hyphen_values = true, value_parser = finite)]
        a: f64,
        #[arg(long, value_parser = finite)]
        p: f64,
        #[arg(long, value_parser = finite)]
        q: f64,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, allow_hyphen_values = true, value_parser = finite)]
        alpha: f64,
    },
    /// Rectangle with isoperimetric ratio below eps for a negative exponent.
    Counterexample {
        #[arg(long, allow_hyphen_values = true, value_parser = finite)]
        alpha: f64,
        #[arg(long, value_parser = positive)]
        eps: f64,
    },
    /// Orthant with monomial weight x^a.
    Orthant {
        #[arg(long, allow_hyphen_values = true, value_parser = finite)]
        k: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = finite)]
        l: f64,
        /// Exponents a_1,…,a_N.
        #[arg(long, value_delimiter = ',', required = true, value_parser = finite)]
        a: Vec<f64>,
    },
    /// Tabulate a quantity over a one- or two-parameter grid.
    Sweep(sweep::SweepArgs),
    /// Run a property suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonConvergence(_) => EXIT_NONCONVERGENCE,
            _ => EXIT_DOMAIN,
        };
        Failure { code, message: e.to_string() }
    }
}

fn init_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("ISOPERIM_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::usage("ISOPERIM_THREADS must be a positive integer"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    init_threads()?;
    let g = cli.global;
    let (report, code) = match cli.command {
        Command::Sweep(args) => {
            let table = sweep::run(&args, &g)?;
            output::emit_table(&table, &g)?;
            return Ok(0);
        }
        Command::Verify { suite } => {
            let seed = g.seed.unwrap_or(DEFAULT_SEED);
            let outcome = suites::run(suite, seed)?;
            let code = if outcome.all_passed() { 0 } else { EXIT_VERIFY };
            (outcome.report(suite, seed), code)
        }
        other => (commands::run(other, &g)?, 0),
    };
    output::emit_report(&report, &g)?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_to_exit_codes() {
        assert_eq!(Failure::from(Error::Domain("x".into())).code, EXIT_DOMAIN);
        assert_eq!(Failure::from(Error::Overflow("x".into())).code, EXIT_DOMAIN);
        assert_eq!(Failure::from(Error::Classification("x".into())).code, EXIT_DOMAIN);
        assert_eq!(Failure::from(Error::NonConvergence("x".into())).code, EXIT_NONCONVERGENCE);
    }

    #[test]
    fn sweep_axes_parse() {
        let a = sweep::parse_axis("eps=1e-4:1:5:log").unwrap();
        assert_eq!(a.values.len(), 5);
        assert!((a.values[0] - 1e-4).abs() < 1e-18 && (a.values[4] - 1.0).abs() < 1e-15);
        assert!((a.values[2] - 1e-2).abs() < 1e-15);
        let b = sweep::parse_axis("k=-0.5:2:61").unwrap();
        assert_eq!(b.values[60], 2.0);
        for bad in ["k", "k=0:1", "k=0:1:1", "k=0:1:x", "k=0:1:3:lin", "k=-1:1:3:log", "k=nan:1:3"] {
            assert!(sweep::parse_axis(bad).is_err(), "{bad}");
        }
    }
}
