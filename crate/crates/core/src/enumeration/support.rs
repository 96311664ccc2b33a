use std::collections::BTreeSet;

use itertools::Itertools;
use num::{Signed, Zero};
use rayon::prelude::*;

use super::check_cap;
use crate::error::Result;
use crate::game::{is_exact_equilibrium, BimatrixGame, MixedProfile};
use crate::numerics::{one, solve_unique, Rational, RationalMatrix};

/// Brute-force support enumeration.
///
/// For each pair of nonempty supports `(I, J)`, solves the indifference
/// system that makes every row in `I` a best response to `y` (and every column
/// in `J` a best response to `x`), keeps unique strictly positive solutions,
/// and accepts those with zero loss. Returns profiles in lexicographic order.
///
/// This shares no code with the polyhedral enumerator beyond the loss check.
pub fn support_enumeration_oracle(game: &BimatrixGame, cap: usize) -> Result<Vec<MixedProfile>> {
    check_cap(game, cap)?;
    let (m, n) = game.shape();
    let row_supports: Vec<Vec<usize>> = nonempty_subsets(m);
    let col_supports: Vec<Vec<usize>> = nonempty_subsets(n);
    let pairs: Vec<(&Vec<usize>, &Vec<usize>)> =
        row_supports.iter().cartesian_product(&col_supports).collect();

    let found: Vec<MixedProfile> = pairs
        .par_iter()
        .filter_map(|(rows, cols)| {
            let a = game.a();
            let y = indifferent_mix(cols, n, rows.iter().map(|&i| a.row(i).to_vec()))?;
            let b = game.b();
            let x = indifferent_mix(rows, m, cols.iter().map(|&j| b.column(j)))?;
            let profile = MixedProfile { x, y };
            is_exact_equilibrium(game, &profile)
                .ok()
                .filter(|&ok| ok)
                .map(|_| profile)
        })
        .collect();
    Ok(found.into_iter().collect::<BTreeSet<_>>().into_iter().collect())
}

fn nonempty_subsets(size: usize) -> Vec<Vec<usize>> {
    (1..=size).flat_map(|k| (0..size).combinations(k)).collect()
}

/// Mixed strategy supported exactly on `support` (over `len` pure strategies)
/// that equalizes the payoffs `payoff_rows · strategy`. Each payoff row is
/// indexed by the full strategy space.
fn indifferent_mix(
    support: &[usize],
    len: usize,
    payoff_rows: impl Iterator<Item = Vec<Rational>>,
) -> Option<Vec<Rational>> {
    // Unknowns: strategy entries on the support, then the common payoff.
    let k = support.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for payoff in payoff_rows {
        let mut row: Vec<Rational> = support.iter().map(|&s| payoff[s].clone()).collect();
        row.push(-one());
        rows.push(row);
        rhs.push(Rational::zero());
    }
    let mut norm = vec![one(); k];
    norm.push(Rational::zero());
    rows.push(norm);
    rhs.push(one());

    let system = RationalMatrix::from_rows(rows).expect("rectangular");
    let solution = solve_unique(&system, &rhs)?;
    if solution[..k].iter().any(|p| !p.is_positive()) {
        return None;
    }
    let mut full = vec![Rational::zero(); len];
    for (&s, p) in support.iter().zip(&solution) {
        full[s] = p.clone();
    }
    Some(full)
}
