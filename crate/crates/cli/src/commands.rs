use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use serde_json::json;

use rankgame::bounds::{bound_report, rank_component_bound, support_pair_bound};
use rankgame::constructors::FamilySpec;
use rankgame::enumeration::{enumerate_equilibria_with_cap, solve_zero_sum};
use rankgame::format::{parse_decomposition, parse_game, parse_profile, write_decomposition, write_game, ReportFile};
use rankgame::game::{is_eps_approximate, is_exact_equilibrium, loss};
use rankgame::lowrank::{approx_absolute, approx_relative_detailed, perturb_game, svd_truncate};
use rankgame::numerics::{parse_rational_list, rank_factorize};
use rankgame::{BimatrixGame, Error};

use crate::{Command, Family, Mode, Scheme};

pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_PARSE: u8 = 3;
pub const EXIT_GUARD: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Self {
            code: EXIT_PARSE,
            message: format!("{}: {e}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_) | Error::InvalidProfile(_) | Error::DimensionMismatch(_) | Error::EmptyMatrix => EXIT_PARSE,
            Error::CapExceeded { .. } | Error::RankGuard { .. } | Error::Precondition(_) => EXIT_GUARD,
            Error::InvalidArgument(_) => EXIT_USAGE,
            Error::ApproximationFailed(_) => EXIT_VERIFY_FAILED,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T = ExitCode> = Result<T, CliError>;

fn read_game(path: &Path) -> CliResult<BimatrixGame> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_game(&text).map_err(|e| CliError {
        code: EXIT_PARSE,
        message: format!("{}: {e}", path.display()),
    })
}

/// Writes `artifact` to `out` and `summary` to stdout, or `artifact` to
/// stdout and `summary` to stderr when there is no output path.
fn emit(out: Option<&PathBuf>, artifact: &str, summary: &str) -> CliResult<()> {
    match out {
        Some(path) => {
            fs::write(path, artifact).map_err(|e| CliError::io(path, e))?;
            print!("{summary}");
        }
        None => {
            print!("{artifact}");
            eprint!("{summary}");
        }
    }
    Ok(())
}

pub fn run(command: Command) -> CliResult {
    match command {
        Command::Gen {
            family,
            d,
            inner,
            outer,
            g,
            coeffs,
            out,
        } => gen(family, d, inner, outer, g, coeffs, out),
        Command::Solve { game, mode, cap, out } => solve(&game, mode, cap, out),
        Command::Approx {
            game,
            scheme,
            eps,
            decomp,
            out,
        } => approx(&game, scheme, eps, decomp, out),
        Command::Verify { game, profile, eps } => verify(&game, &profile, eps),
        Command::Components { game, cap, out } => solve(&game, Mode::Components, cap, out),
        Command::Bounds { d, k } => bounds(d, k),
        Command::Rankfact { game, out } => rankfact(&game, out),
        Command::Perturb { game, k, out } => perturb(&game, k, out),
    }
}

fn gen(
    family: Family,
    d: Option<usize>,
    inner: Option<String>,
    outer: Option<String>,
    g: Option<String>,
    coeffs: Option<String>,
    out: Option<PathBuf>,
) -> CliResult {
    let need_d = || d.ok_or_else(|| CliError::usage("--d is required for this family"));
    let spec = match family {
        Family::Rank1 => FamilySpec::Rank1 { d: need_d()? },
        Family::Aux => FamilySpec::Aux { d: need_d()? },
        Family::Identity => FamilySpec::Identity { d: need_d()? },
        Family::Block => {
            let part = |arg: Option<String>, name: &str| -> CliResult<FamilySpec> {
                let text = arg.ok_or_else(|| CliError::usage(format!("--{name} is required for block games")))?;
                FamilySpec::parse_simple(&text).map_err(|e| CliError::usage(e.to_string()))
            };
            FamilySpec::Block {
                inner: Box::new(part(inner, "inner")?),
                outer: Box::new(part(outer, "outer")?),
            }
        }
        Family::Poly => {
            let list = |arg: Option<String>, name: &str| -> CliResult<Vec<_>> {
                let text = arg.ok_or_else(|| CliError::usage(format!("--{name} is required for poly games")))?;
                parse_rational_list(&text).map_err(|e| CliError::usage(e.to_string()))
            };
            FamilySpec::PolyKernel {
                g: list(g, "g")?,
                coeffs: list(coeffs, "coeffs")?,
            }
        }
    };
    let game = spec.build().map_err(|e| CliError::usage(e.to_string()))?;
    let (m, n) = game.shape();
    emit(out.as_ref(), &write_game(&game), &format!("size {m}x{n}\nrank {}\n", game.rank()))?;
    Ok(ExitCode::SUCCESS)
}

fn solve(path: &Path, mode: Mode, cap: usize, out: Option<PathBuf>) -> CliResult {
    let game = read_game(path)?;
    let mut report = ReportFile::new(match mode {
        Mode::Enum => "solve",
        Mode::Zerosum => "zerosum",
        Mode::Components => "components",
    });
    report.shape = Some(game.shape());
    let summary = match mode {
        Mode::Zerosum => {
            let r = solve_zero_sum(&game)?;
            report.extra.insert("value".into(), json!(r.payoff1.to_string()));
            let value = r.payoff1.to_string();
            report.equilibria.push(r);
            format!("value {value}\n")
        }
        Mode::Enum | Mode::Components => {
            let set = enumerate_equilibria_with_cap(&game, cap)?;
            report.extra.insert("nondegenerate".into(), json!(set.nondegenerate));
            let mut summary = format!("equilibria {}\n", set.len());
            if mode == Mode::Components {
                report.component_count = Some(set.component_count());
                summary.push_str(&format!("components {}\n", set.component_count()));
                let k = game.a().rank().max(game.b().rank());
                report.extra.insert("max_player_rank".into(), json!(k));
                if game.is_square() {
                    let d = game.rows() as u64;
                    if let Ok(bound) = rank_component_bound(d, k as u64) {
                        summary.push_str(&format!("component_bound {bound}\n"));
                        report.component_bound = Some(bound);
                    }
                    let pairs = support_pair_bound(d, k as u64);
                    summary.push_str(&format!("support_pair_bound {pairs}\n"));
                    report.extra.insert("support_pair_bound".into(), json!(pairs.to_string()));
                }
            }
            report.equilibria = set.equilibria;
            summary
        }
    };
    emit(out.as_ref(), &report.to_pretty_string(), &summary)?;
    Ok(ExitCode::SUCCESS)
}

fn approx(
    path: &Path,
    scheme: Scheme,
    eps: rankgame::Rational,
    decomp: Option<PathBuf>,
    out: Option<PathBuf>,
) -> CliResult {
    let game = read_game(path)?;
    let mut report = ReportFile::new("approx");
    report.shape = Some(game.shape());
    report.extra.insert("eps".into(), json!(eps.to_string()));
    let summary = match scheme {
        Scheme::Abs => {
            let r = approx_absolute(&game, &eps)?;
            let bound = &eps * game.norm();
            report.extra.insert("scheme".into(), json!("abs"));
            report.extra.insert("loss_bound".into(), json!(bound.to_string()));
            let summary = format!("loss {}\nbound {bound}\n", r.loss);
            report.equilibria.push(r);
            summary
        }
        Scheme::Rel => {
            let decomp_path = decomp.ok_or_else(|| CliError::usage("--decomp is required for the rel scheme"))?;
            let text = fs::read_to_string(&decomp_path).map_err(|e| CliError::io(&decomp_path, e))?;
            let decomposition = parse_decomposition(&text)?;
            let sol = approx_relative_detailed(&game, &decomposition, &eps)?;
            report.extra.insert("scheme".into(), json!("rel"));
            report.extra.insert("rho".into(), json!(sol.rho.to_string()));
            report.extra.insert("s".into(), json!(sol.s.to_string()));
            let summary = format!("loss {}\ns {}\nrho {}\n", sol.report.loss, sol.s, sol.rho);
            report.equilibria.push(sol.report);
            summary
        }
    };
    emit(out.as_ref(), &report.to_pretty_string(), &summary)?;
    Ok(ExitCode::SUCCESS)
}

fn verify(path: &Path, profile: &str, eps: Option<rankgame::Rational>) -> CliResult {
    let game = read_game(path)?;
    let p = parse_profile(profile)?;
    let l = loss(&game, &p)?;
    println!("loss {l}");
    let holds = match &eps {
        Some(e) => is_eps_approximate(&game, &p, e)?,
        None => is_exact_equilibrium(&game, &p)?,
    };
    let what = match &eps {
        Some(e) => format!("{e}-approximate equilibrium"),
        None => "exact equilibrium".to_string(),
    };
    if holds {
        println!("verified: {what}");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("failed: not an {what}");
        Ok(ExitCode::from(EXIT_VERIFY_FAILED))
    }
}

fn bounds(d: u64, k: Option<u64>) -> CliResult {
    let report = bound_report(d, k).map_err(|e| CliError::usage(e.to_string()))?;
    println!("d {}", report.d);
    if let Some(t) = &report.tau {
        println!("tau {t}");
    }
    println!("keiding_bound {}", report.keiding);
    if let (Some(k), Some(b)) = (report.k, &report.rank_component_bound) {
        println!("k {k}");
        println!("component_bound {b}");
    }
    Ok(ExitCode::SUCCESS)
}

fn rankfact(path: &Path, out: Option<PathBuf>) -> CliResult {
    let game = read_game(path)?;
    let f = rank_factorize(game.sum());
    let summary = format!("rank {}\nnonnegative {}\n", f.len(), f.is_nonnegative());
    emit(out.as_ref(), &write_decomposition(&f), &summary)?;
    Ok(ExitCode::SUCCESS)
}

fn perturb(path: &Path, k: usize, out: Option<PathBuf>) -> CliResult {
    let game = read_game(path)?;
    let c_prime = svd_truncate(game.sum(), k);
    let pert = perturb_game(&game, &c_prime)?;
    let summary = format!("rank {}\neps {}\n", pert.perturbed.rank(), pert.eps);
    emit(out.as_ref(), &write_game(&pert.perturbed), &summary)?;
    Ok(ExitCode::SUCCESS)
}
