//! `rankgame`: generate, solve, approximate and verify bimatrix games.
//!
//! Exit codes: 0 success, 1 verification failed, 2 usage error, 3 input
//! parse error, 4 guard or cap exceeded.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rankgame::numerics::parse_rational;
use rankgame::Rational;

#[derive(Parser, Debug)]
#[command(name = "rankgame", version, about = "Exact and approximate equilibria of low-rank bimatrix games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a game from one of the built-in families.
    Gen {
        family: Family,
        #[arg(long)]
        d: Option<usize>,
        /// Inner game of a block game, as FAMILY:D.
        #[arg(long)]
        inner: Option<String>,
        /// Outer game of a block game, as FAMILY:D.
        #[arg(long)]
        outer: Option<String>,
        /// Grid values g(1..d) for the polynomial kernel family.
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        /// Kernel polynomial coefficients, constant term first.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate equilibria, solve a zero-sum game, or count components.
    Solve {
        game: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Enum)]
        mode: Mode,
        #[arg(long, default_value_t = rankgame::enumeration::DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Approximate equilibrium of a low-rank game.
    Approx {
        game: PathBuf,
        #[arg(long, value_enum, default_value_t = Scheme::Abs)]
        scheme: Scheme,
        #[arg(long, value_parser = positive_rational)]
        eps: Rational,
        /// Nonnegative decomposition of A+B (required for `rel`).
        #[arg(long)]
        decomp: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a profile `x1,..,xm;y1,..,yn`. Exits 1 if the check fails.
    Verify {
        game: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        profile: String,
        #[arg(long, value_parser = nonnegative_rational)]
        eps: Option<Rational>,
    },
    /// Count connected components of the equilibrium set.
    Components {
        game: PathBuf,
        #[arg(long, default_value_t = rankgame::enumeration::DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print equilibrium count bounds for d x d games.
    Bounds {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        d: u64,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Factor A+B into rank-one terms.
    Rankfact {
        game: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replace A+B by its rank-k truncation and report ε.
    Perturb {
        game: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Rank1,
    Aux,
    Identity,
    Block,
    Poly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Enum,
    Zerosum,
    Components,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Scheme {
    Abs,
    Rel,
}

fn positive_rational(text: &str) -> Result<Rational, String> {
    let value = parse_rational(text).map_err(|e| e.to_string())?;
    if value > Rational::from_integer(0.into()) {
        Ok(value)
    } else {
        Err(format!("must be positive, got {value}"))
    }
}

fn nonnegative_rational(text: &str) -> Result<Rational, String> {
    let value = parse_rational(text).map_err(|e| e.to_string())?;
    if value >= Rational::from_integer(0.into()) {
        Ok(value)
    } else {
        Err(format!("must be nonnegative, got {value}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
