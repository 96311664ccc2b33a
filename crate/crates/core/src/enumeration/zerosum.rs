use crate::error::{Error, Result};
use crate::game::{BimatrixGame, EquilibriumReport, MixedProfile, SolutionKind};
use crate::numerics::{one, solve_lp, LinearProgram, Rational, Sense};

/// One exact equilibrium of a zero-sum game via the two minimax LPs.
///
/// Player 2 solves `min u s.t. A y ≤ u·1, y ∈ S₂`; player 1 solves
/// `max v s.t. xᵀA ≥ v·1ᵀ, x ∈ S₁`. Both optima equal the game value.
pub fn solve_zero_sum(game: &BimatrixGame) -> Result<EquilibriumReport> {
    if !game.is_zero_sum() {
        return Err(Error::Precondition("game is not zero-sum (A + B != 0)".into()));
    }
    let a = game.a();
    let (m, n) = game.shape();
    let zero = || Rational::from_integer(0.into());

    // Variables (y_1..y_n, u).
    let mut objective = vec![zero(); n + 1];
    objective[n] = one();
    let mut col_lp = LinearProgram::new(objective);
    col_lp.set_free(n);
    for i in 0..m {
        let mut row = a.row(i).to_vec();
        row.push(-one());
        col_lp.add_constraint(row, Sense::Le, zero());
    }
    let mut simplex = vec![one(); n];
    simplex.push(zero());
    col_lp.add_constraint(simplex, Sense::Eq, one());

    // Variables (x_1..x_m, v); maximize v.
    let mut objective = vec![zero(); m + 1];
    objective[m] = -one();
    let mut row_lp = LinearProgram::new(objective);
    row_lp.set_free(m);
    for j in 0..n {
        let mut row: Vec<Rational> = a.column(j).iter().map(|v| -v).collect();
        row.push(one());
        row_lp.add_constraint(row, Sense::Le, zero());
    }
    let mut simplex = vec![one(); m];
    simplex.push(zero());
    row_lp.add_constraint(simplex, Sense::Eq, one());

    let optimal_point = |lp: &LinearProgram| -> Result<Vec<Rational>> {
        solve_lp(lp)?
            .point
            .ok_or_else(|| Error::ApproximationFailed("minimax LP has no optimum".into()))
    };
    let mut y = optimal_point(&col_lp)?;
    let mut x = optimal_point(&row_lp)?;
    y.truncate(n);
    x.truncate(m);
    EquilibriumReport::new(game, MixedProfile::new(x, y)?, SolutionKind::Exact)
}
