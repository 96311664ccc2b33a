use num::{One, Signed, Zero};
use rayon::prelude::*;

use super::grid::{absolute_cells, relative_cells, AbsGridCell, GridCell};
use crate::error::{Error, Result};
use crate::game::{best_response_values, loss, BimatrixGame, EquilibriumReport, MixedProfile, SolutionKind};
use crate::numerics::{max_of, min_of, rank_factorize, LinearProgram, RankFactorization, Rational, Sense};

/// Largest `rank(A+B)` accepted by [`approx_absolute`].
pub const DEFAULT_RANK_LIMIT: usize = 4;
/// Halvings attempted past the target step before giving up.
pub const DEFAULT_EXTRA_LEVELS: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsoluteOptions {
    pub rank_limit: usize,
    pub extra_levels: u32,
}

impl Default for AbsoluteOptions {
    fn default() -> Self {
        Self {
            rank_limit: DEFAULT_RANK_LIMIT,
            extra_levels: DEFAULT_EXTRA_LEVELS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsoluteSolution {
    pub report: EquilibriumReport,
    /// Cell that produced the profile; `None` when `A + B = 0`.
    pub cell: Option<AbsGridCell>,
    /// Number of step halvings at which the cell was found.
    pub level: u32,
    pub cells_solved: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeSolution {
    pub report: EquilibriumReport,
    pub cell: GridCell,
    /// `maxᵢ (Ay)ᵢ + maxⱼ (xᵀB)ⱼ`.
    pub s: Rational,
    /// `1 − 1/(1+ε)²`.
    pub rho: Rational,
    pub cells_solved: usize,
}

/// Bounds `lo ≤ coeffs · var ≤ hi` on one linear form.
struct FormBound<'a> {
    coeffs: &'a [Rational],
    lo: &'a Rational,
    hi: &'a Rational,
}

/// LP over `(x, y, s₁, s₂)`: `s₁ ≥ A⁽ⁱ⁾y`, `s₂ ≥ xᵀB₍ⱼ₎`, `s₁ + s₂ ≤ |A+B|`,
/// both simplices, and the given bounds on `uᵀx` and `vᵀy`. The objective is
/// `s₁ + s₂ + y_objective · y`.
fn cell_lp(
    game: &BimatrixGame,
    x_forms: &[FormBound<'_>],
    y_forms: &[FormBound<'_>],
    y_objective: Option<Vec<Rational>>,
) -> LinearProgram {
    let (m, n) = game.shape();
    let vars = m + n + 2;
    let (s1, s2) = (m + n, m + n + 1);
    let mut objective = vec![Rational::zero(); vars];
    if let Some(coeffs) = y_objective {
        for (j, c) in coeffs.into_iter().enumerate() {
            objective[m + j] = c;
        }
    }
    objective[s1] = Rational::one();
    objective[s2] = Rational::one();
    let mut lp = LinearProgram::new(objective);
    lp.set_free(s1);
    lp.set_free(s2);

    let row = |entries: &mut dyn Iterator<Item = (usize, Rational)>| {
        let mut r = vec![Rational::zero(); vars];
        for (idx, value) in entries {
            r[idx] = value;
        }
        r
    };

    lp.add_constraint(row(&mut (0..m).map(|i| (i, Rational::one()))), Sense::Eq, Rational::one());
    lp.add_constraint(row(&mut (0..n).map(|j| (m + j, Rational::one()))), Sense::Eq, Rational::one());
    for i in 0..m {
        let a_row = game.a().row(i);
        let mut r = row(&mut (0..n).map(|j| (m + j, a_row[j].clone())));
        r[s1] = -Rational::one();
        lp.add_constraint(r, Sense::Le, Rational::zero());
    }
    for j in 0..n {
        let mut r = row(&mut (0..m).map(|i| (i, game.b()[(i, j)].clone())));
        r[s2] = -Rational::one();
        lp.add_constraint(r, Sense::Le, Rational::zero());
    }
    lp.add_constraint(
        row(&mut [(s1, Rational::one()), (s2, Rational::one())].into_iter()),
        Sense::Le,
        game.norm().clone(),
    );

    let mut add_form = |offset: usize, form: &FormBound<'_>| {
        let r = row(&mut form.coeffs.iter().cloned().enumerate().map(|(i, c)| (offset + i, c)));
        if form.lo == form.hi {
            lp.add_constraint(r, Sense::Eq, form.lo.clone());
        } else {
            lp.add_constraint(r.clone(), Sense::Ge, form.lo.clone());
            lp.add_constraint(r, Sense::Le, form.hi.clone());
        }
    };
    for form in x_forms {
        add_form(0, form);
    }
    for form in y_forms {
        add_form(m, form);
    }
    lp
}

/// Solves `lp` and returns the profile part of an optimal point.
fn solve_profile(game: &BimatrixGame, lp: &LinearProgram) -> Result<Option<MixedProfile>> {
    let (m, n) = game.shape();
    let solution = lp.solve()?;
    if !solution.is_optimal() {
        return Ok(None);
    }
    Ok(solution.point.map(|point| MixedProfile {
        x: point[..m].to_vec(),
        y: point[m..m + n].to_vec(),
    }))
}

fn range(values: &[Rational]) -> (Rational, Rational) {
    (
        min_of(values).expect("nonempty factor"),
        max_of(values).expect("nonempty factor"),
    )
}

/// Profile with `ℓ(x, y) ≤ ε·|A+B|`, using the default options.
pub fn approx_absolute(game: &BimatrixGame, eps: &Rational) -> Result<EquilibriumReport> {
    Ok(approx_absolute_with(game, eps, &AbsoluteOptions::default())?.report)
}

/// Additive grid on `zᵢ = xᵀu⁽ⁱ⁾` plus one LP per cell.
///
/// With `C = Σ u⁽ⁱ⁾v⁽ⁱ⁾ᵀ`, the cell LP minimizes `s − Σ ẑᵢ·v⁽ⁱ⁾ᵀy` where `ẑᵢ`
/// is the cell center. Steps start at `|C| / (2k·maxⱼ|v⁽ⁱ⁾ⱼ|)` and are halved
/// level by level until they are at most `ε` times that; the best profile
/// over all levels so far (smallest exact loss, then earliest level and cell)
/// is returned once its loss is within `ε·|C|`. A loss of zero ends the
/// search early. Every candidate is checked in exact arithmetic.
pub fn approx_absolute_with(game: &BimatrixGame, eps: &Rational, opts: &AbsoluteOptions) -> Result<AbsoluteSolution> {
    if !eps.is_positive() {
        return Err(Error::invalid(format!("ε must be positive, got {eps}")));
    }
    let rank = game.rank();
    if rank > opts.rank_limit {
        return Err(Error::RankGuard {
            rank,
            limit: opts.rank_limit,
        });
    }
    let kind = SolutionKind::EpsApproximate(eps.clone());

    let factors = rank_factorize(game.sum());
    if factors.is_empty() {
        let lp = cell_lp(game, &[], &[], None);
        let profile = solve_profile(game, &lp)?
            .ok_or_else(|| Error::ApproximationFailed("zero-sum LP has no optimum".into()))?;
        return Ok(AbsoluteSolution {
            report: EquilibriumReport::new(game, profile, kind)?,
            cell: None,
            level: 0,
            cells_solved: 1,
        });
    }

    let k = Rational::from_integer(factors.len().into());
    let ranges: Vec<(Rational, Rational)> = factors.pairs().iter().map(|p| range(&p.u)).collect();
    let base_steps: Vec<Rational> = factors
        .pairs()
        .iter()
        .map(|p| {
            let vmax = p.v.iter().map(|c| c.abs()).max().expect("nonempty");
            game.norm() / (Rational::from_integer(2.into()) * &k * vmax)
        })
        .collect();
    let mut target_level = 0u32;
    while Rational::new(1.into(), num::BigInt::from(2u8).pow(target_level)) > *eps {
        target_level += 1;
    }
    let threshold = eps * game.norm();

    let mut best: Option<(Rational, MixedProfile, AbsGridCell, u32)> = None;
    let mut cells_solved = 0usize;
    for level in 0..=target_level + opts.extra_levels {
        let divisor = Rational::from_integer(num::BigInt::from(2u8).pow(level));
        let steps: Vec<Rational> = base_steps.iter().map(|s| s / &divisor).collect();
        let cells = absolute_cells(&ranges, &steps)?;
        cells_solved += cells.len();

        let results = cells
            .par_iter()
            .map(|cell| solve_absolute_cell(game, &factors, cell))
            .collect::<Result<Vec<_>>>()?;
        for (cell, result) in cells.into_iter().zip(results) {
            if let Some((l, profile)) = result {
                if best.as_ref().is_none_or(|(b, ..)| &l < b) {
                    best = Some((l, profile, cell, level));
                }
            }
        }

        if let Some((l, ..)) = &best {
            if l.is_zero() || (level >= target_level && l <= &threshold) {
                let (_, profile, cell, level) = best.expect("checked above");
                return Ok(AbsoluteSolution {
                    report: EquilibriumReport::new(game, profile, kind)?,
                    cell: Some(cell),
                    level,
                    cells_solved,
                });
            }
        }
    }
    Err(Error::ApproximationFailed(match best {
        Some((l, ..)) => format!("best loss {l} exceeds ε·|A+B| = {threshold} after refinement"),
        None => "no grid cell LP was feasible".into(),
    }))
}

fn solve_absolute_cell(
    game: &BimatrixGame,
    factors: &RankFactorization,
    cell: &AbsGridCell,
) -> Result<Option<(Rational, MixedProfile)>> {
    let n = game.cols();
    let x_forms: Vec<FormBound<'_>> = factors
        .pairs()
        .iter()
        .zip(&cell.intervals)
        .map(|(p, (lo, hi))| FormBound { coeffs: &p.u, lo, hi })
        .collect();
    let mut y_objective = vec![Rational::zero(); n];
    for (p, center) in factors.pairs().iter().zip(&cell.centers) {
        for (coef, v) in y_objective.iter_mut().zip(&p.v) {
            *coef -= center * v;
        }
    }
    let lp = cell_lp(game, &x_forms, &[], Some(y_objective));
    match solve_profile(game, &lp)? {
        Some(profile) => Ok(Some((loss(game, &profile)?, profile))),
        None => Ok(None),
    }
}

/// Profile with `s − xᵀCy ≤ (1 − 1/(1+ε)²)·s` for a nonnegative decomposition.
pub fn approx_relative(game: &BimatrixGame, decomp: &RankFactorization, eps: &Rational) -> Result<EquilibriumReport> {
    Ok(approx_relative_detailed(game, decomp, eps)?.report)
}

/// Geometric grids on `zᵢ = xᵀu⁽ⁱ⁾` and `wᵢ = v⁽ⁱ⁾ᵀy`, one LP minimizing `s`
/// per cell. Cells whose optimum meets the ratio are candidates; the one
/// with the smallest exact loss (then smallest index) is returned.
pub fn approx_relative_detailed(
    game: &BimatrixGame,
    decomp: &RankFactorization,
    eps: &Rational,
) -> Result<RelativeSolution> {
    if !eps.is_positive() {
        return Err(Error::invalid(format!("ε must be positive, got {eps}")));
    }
    if decomp.shape() != game.shape() {
        return Err(Error::dims(format!(
            "decomposition is {:?} but the game is {:?}",
            decomp.shape(),
            game.shape()
        )));
    }
    if !decomp.is_nonnegative() {
        return Err(Error::Precondition("decomposition has negative entries".into()));
    }
    if &decomp.reconstruct() != game.sum() {
        return Err(Error::Precondition("decomposition does not reconstruct A + B".into()));
    }
    let ratio = Rational::one() + eps;
    let rho = Rational::one() - (&ratio * &ratio).recip();

    let z_ranges: Vec<_> = decomp.pairs().iter().map(|p| range(&p.u)).collect();
    let w_ranges: Vec<_> = decomp.pairs().iter().map(|p| range(&p.v)).collect();
    let cells = relative_cells(&z_ranges, &w_ranges, eps)?;

    let results = cells
        .par_iter()
        .map(|cell| solve_relative_cell(game, decomp, cell))
        .collect::<Result<Vec<_>>>()?;
    let cells_solved = cells.len();

    let mut best: Option<(Rational, Rational, MixedProfile, GridCell)> = None;
    for (cell, result) in cells.into_iter().zip(results) {
        let Some((l, s, profile)) = result else { continue };
        if l > &rho * &s {
            continue;
        }
        if best.as_ref().is_none_or(|(b, ..)| &l < b) {
            best = Some((l, s, profile, cell));
        }
    }
    let (_, s, profile, cell) =
        best.ok_or_else(|| Error::ApproximationFailed("no grid cell met the approximation ratio".into()))?;
    Ok(RelativeSolution {
        report: EquilibriumReport::new(game, profile, SolutionKind::RelativeApproximate(rho.clone()))?,
        cell,
        s,
        rho,
        cells_solved,
    })
}

fn solve_relative_cell(
    game: &BimatrixGame,
    decomp: &RankFactorization,
    cell: &GridCell,
) -> Result<Option<(Rational, Rational, MixedProfile)>> {
    let x_forms: Vec<FormBound<'_>> = decomp
        .pairs()
        .iter()
        .zip(&cell.z)
        .map(|(p, (lo, hi))| FormBound { coeffs: &p.u, lo, hi })
        .collect();
    let y_forms: Vec<FormBound<'_>> = decomp
        .pairs()
        .iter()
        .zip(&cell.w)
        .map(|(p, (lo, hi))| FormBound { coeffs: &p.v, lo, hi })
        .collect();
    let lp = cell_lp(game, &x_forms, &y_forms, None);
    let Some(profile) = solve_profile(game, &lp)? else {
        return Ok(None);
    };
    let (r, c) = best_response_values(game, &profile)?;
    Ok(Some((loss(game, &profile)?, r + c, profile)))
}
