use num::{One, Zero};
use proptest::prelude::*;

use rankgame::bounds::rank_component_bound;
use rankgame::enumeration::{connected_components, enumerate_equilibria};
use rankgame::game::{best_response_values, is_eps_approximate, loss};
use rankgame::lowrank::{
    absolute_cells, approx_absolute, approx_relative_detailed, check_perturbation_theorem, perturb_game,
    relative_cells, svd_truncate,
};
use rankgame::numerics::{matrix_rank, FactorPair, RankFactorization};
use rankgame::{BimatrixGame, Rational, RationalMatrix};

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn matrix(d: usize, entries: &[i64]) -> RationalMatrix {
    RationalMatrix::new(d, d, entries.iter().map(|&v| int(v)).collect()).unwrap()
}

fn low_rank(d: usize, k: usize, entries: &[i64]) -> RationalMatrix {
    let mut out = RationalMatrix::zeros(d, d);
    for t in 0..k {
        let u: Vec<Rational> = entries[2 * t * d..(2 * t + 1) * d].iter().map(|&v| int(v)).collect();
        let v: Vec<Rational> = entries[(2 * t + 1) * d..(2 * t + 2) * d].iter().map(|&v| int(v)).collect();
        out = out.add(&RationalMatrix::outer(&u, &v)).unwrap();
    }
    out
}

fn square_game(max_d: usize) -> impl Strategy<Value = BimatrixGame> {
    (2..=max_d).prop_flat_map(|d| {
        proptest::collection::vec(-9i64..=9, 2 * d * d)
            .prop_map(move |e| BimatrixGame::new(matrix(d, &e[..d * d]), matrix(d, &e[d * d..])).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn truncated_sum_keeps_equilibria_approximate(game in square_game(5), k in 1usize..3) {
        prop_assume!(!game.norm().is_zero());
        let c_prime = svd_truncate(game.sum(), k);
        prop_assert!(matrix_rank(&c_prime) <= k);
        let pert = perturb_game(&game, &c_prime);
        prop_assume!(pert.is_ok());
        let pert = pert.unwrap();
        prop_assert_eq!(pert.perturbed.sum(), &c_prime);
        for eq in enumerate_equilibria(&game).unwrap().profiles() {
            prop_assert!(check_perturbation_theorem(&pert, &eq).unwrap());
        }
    }

    #[test]
    fn components_within_rank_bound(
        d in 3usize..=4,
        entries in proptest::collection::vec(-3i64..=3, 4 * 4),
    ) {
        let a = low_rank(d, 1, &entries[..2 * d]);
        let b = low_rank(d, 1, &entries[8..8 + 2 * d]);
        let game = BimatrixGame::new(a, b).unwrap();
        let set = enumerate_equilibria(&game).unwrap();
        let comps = connected_components(&set, &game).unwrap();
        prop_assert!(num::BigInt::from(comps) <= rank_component_bound(d as u64, 1).unwrap());
    }

    #[test]
    fn absolute_loss_shrinks_with_eps(
        d in 2usize..=3,
        entries in proptest::collection::vec(-4i64..=4, 4 * 3 + 9),
    ) {
        let c = low_rank(d, 2, &entries);
        let a = matrix(d, &entries[12..12 + d * d]);
        let game = BimatrixGame::new(a.clone(), c.sub(&a).unwrap()).unwrap();
        let mut previous: Option<Rational> = None;
        for den in [2i64, 4, 8] {
            let eps = Rational::new(1.into(), den.into());
            let r = approx_absolute(&game, &eps).unwrap();
            prop_assert!(is_eps_approximate(&game, &r.profile, &eps).unwrap());
            prop_assert_eq!(&r.loss, &loss(&game, &r.profile).unwrap());
            if let Some(p) = &previous {
                prop_assert!(&r.loss <= p);
            }
            previous = Some(r.loss);
        }
    }

    #[test]
    fn relative_guarantee_on_positive_decompositions(
        d in 2usize..=3,
        k in 1usize..=2,
        factors in proptest::collection::vec(1i64..=5, 12),
        a_entries in proptest::collection::vec(-9i64..=9, 9),
        eps_den in 1i64..=4,
    ) {
        let pairs: Vec<FactorPair> = (0..k)
            .map(|t| FactorPair {
                u: factors[2 * t * d..(2 * t + 1) * d].iter().map(|&v| int(v)).collect(),
                v: factors[(2 * t + 1) * d..(2 * t + 2) * d].iter().map(|&v| int(v)).collect(),
            })
            .collect();
        let decomp = RankFactorization::new(d, d, pairs).unwrap();
        let c = decomp.reconstruct();
        let a = matrix(d, &a_entries[..d * d]);
        let game = BimatrixGame::new(a.clone(), c.sub(&a).unwrap()).unwrap();
        let eps = Rational::new(1.into(), eps_den.into());
        let sol = approx_relative_detailed(&game, &decomp, &eps).unwrap();
        let (r, col) = best_response_values(&game, &sol.report.profile).unwrap();
        let s = r + col;
        prop_assert_eq!(&s, &sol.s);
        let rho = Rational::one() - (Rational::one() + &eps).pow(2).recip();
        prop_assert!(sol.report.loss <= &rho * &s);
    }

    #[test]
    fn grid_cells_cover_ranges(
        lo in -20i64..20,
        width in 0i64..20,
        num in 1i64..5,
        den in 1i64..5,
    ) {
        let range = (int(lo), int(lo + width));
        let step = Rational::new(num.into(), den.into());
        let cells = absolute_cells(std::slice::from_ref(&range), std::slice::from_ref(&step)).unwrap();
        prop_assert_eq!(&cells.first().unwrap().intervals[0].0, &range.0);
        prop_assert_eq!(&cells.last().unwrap().intervals[0].1, &range.1);
        for w in cells.windows(2) {
            prop_assert_eq!(&w[0].intervals[0].1, &w[1].intervals[0].0);
        }
        for cell in &cells {
            let (a, b) = &cell.intervals[0];
            let half = &step / int(2);
            prop_assert!(&cell.centers[0] - a <= half && b - &cell.centers[0] <= half);
        }

        let pos = (int(lo.abs()), int(lo.abs() + width));
        let cells = relative_cells(std::slice::from_ref(&pos), std::slice::from_ref(&pos), &step).unwrap();
        let per_axis = (cells.len() as f64).sqrt().round() as usize;
        prop_assert_eq!(per_axis * per_axis, cells.len());
        prop_assert!(cells.iter().all(|c| !c.z[0].0.is_zero() || pos.0.is_zero()));
    }
}
