use num::Zero;

use crate::error::{Error, Result};
use crate::game::{is_eps_approximate, is_exact_equilibrium, BimatrixGame, MixedProfile};
use crate::numerics::{max_abs_entry, Rational, RationalMatrix};

/// The game `(A + ½(C′−C), B + ½(C′−C))`, whose sum is `C′`, together with
/// the smallest `ε = |C − C′| / |A + B|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GamePerturbation {
    pub original: BimatrixGame,
    pub c_prime: RationalMatrix,
    pub perturbed: BimatrixGame,
    pub eps: Rational,
}

pub fn perturb_game(game: &BimatrixGame, c_prime: &RationalMatrix) -> Result<GamePerturbation> {
    if c_prime.shape() != game.shape() {
        return Err(Error::dims(format!(
            "C' is {:?} but the game is {:?}",
            c_prime.shape(),
            game.shape()
        )));
    }
    if game.norm().is_zero() {
        return Err(Error::Precondition("|A+B| = 0: ε is undefined for a zero-sum game".into()));
    }
    let delta = c_prime.sub(game.sum())?;
    let distance = max_abs_entry(&delta)?;
    if &distance >= game.norm() {
        return Err(Error::Precondition(format!(
            "|C - C'| = {distance} is not below |A+B| = {}",
            game.norm()
        )));
    }
    let half = delta.scale(&Rational::new(1.into(), 2.into()));
    let perturbed = BimatrixGame::new(game.a().add(&half)?, game.b().add(&half)?)?;
    debug_assert_eq!(perturbed.sum(), c_prime);
    Ok(GamePerturbation {
        original: game.clone(),
        c_prime: c_prime.clone(),
        perturbed,
        eps: distance / game.norm(),
    })
}

/// Whether `eq`, an exact equilibrium of the original game, is a
/// `3ε`-approximate equilibrium of the perturbed one.
pub fn check_perturbation_theorem(pert: &GamePerturbation, eq: &MixedProfile) -> Result<bool> {
    if !is_exact_equilibrium(&pert.original, eq)? {
        return Err(Error::Precondition("profile is not an equilibrium of the original game".into()));
    }
    let three_eps = &pert.eps * Rational::from_integer(3.into());
    is_eps_approximate(&pert.perturbed, eq, &three_eps)
}
