//! Low-rank approximation of games and approximate equilibria for games
//! whose sum matrix `C = A + B` has small rank.
//!
//! [`perturb_game`] moves a game to a nearby one with a prescribed sum
//! `C′`; [`svd_truncate`] supplies a low-rank `C′`. [`approx_absolute`] finds
//! an `ε`-approximate equilibrium through an additive grid over `xᵀu⁽ⁱ⁾` and
//! one LP per cell. [`approx_relative`] uses a geometric grid for a
//! nonnegative decomposition and bounds the loss relative to the best-response
//! payoffs.

mod approx;
mod grid;
mod perturb;
mod svd;

pub use approx::{
    approx_absolute, approx_absolute_with, approx_relative, approx_relative_detailed, AbsoluteOptions,
    AbsoluteSolution, RelativeSolution, DEFAULT_EXTRA_LEVELS, DEFAULT_RANK_LIMIT,
};
pub use grid::{absolute_cells, additive_intervals, geometric_intervals, relative_cells, AbsGridCell, GridCell};
pub use perturb::{check_perturbation_theorem, perturb_game, GamePerturbation};
pub use svd::{jacobi_svd, svd_truncate, Svd, JACOBI_TOLERANCE, RATIONAL_DENOMINATOR_CAP};
