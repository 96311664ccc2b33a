//! Bimatrix games, mixed profiles, the equilibrium loss and the exact and
//! approximate equilibrium checks built on it.
//!
//! Loss of a profile `(x, y)`:
//!
//! ```text
//! ℓ(x, y) = maxᵢ (A y)ᵢ + maxⱼ (xᵀ B)ⱼ − xᵀ (A + B) y
//! ```
//!
//! It is nonnegative and vanishes exactly at Nash equilibria. A profile is
//! ε-approximate when `ℓ ≤ ε·|A+B|`, with `|·|` the max-absolute-entry norm.
//! For zero-sum games `|A+B| = 0`, so the literal definition makes every
//! profile 0-approximate only if its loss is 0; with ε > 0 the bound is still
//! `0`, which means the ε-check collapses to the exact check there.

use num::{Signed, Zero};

use crate::enumeration::{build_polyhedra, enumerate_vertices};
use crate::error::{Error, Result};
use crate::numerics::{dot, matrix_rank, max_abs_entry, Rational, RationalMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimatrixGame {
    a: RationalMatrix,
    b: RationalMatrix,
    sum: RationalMatrix,
    rank_sum: usize,
    norm_sum: Rational,
}

impl BimatrixGame {
    pub fn new(a: RationalMatrix, b: RationalMatrix) -> Result<Self> {
        if a.shape() != b.shape() {
            return Err(Error::dims(format!(
                "payoff matrices {:?} and {:?}",
                a.shape(),
                b.shape()
            )));
        }
        if a.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let sum = a.add(&b)?;
        let rank_sum = matrix_rank(&sum);
        let norm_sum = max_abs_entry(&sum)?;
        Ok(Self {
            a,
            b,
            sum,
            rank_sum,
            norm_sum,
        })
    }

    pub fn from_ints<R: AsRef<[i64]>>(a: &[R], b: &[R]) -> Result<Self> {
        Self::new(RationalMatrix::from_ints(a), RationalMatrix::from_ints(b))
    }

    /// The zero-sum game `(A, −A)`.
    pub fn zero_sum(a: RationalMatrix) -> Result<Self> {
        let b = a.neg();
        Self::new(a, b)
    }

    pub fn a(&self) -> &RationalMatrix {
        &self.a
    }

    pub fn b(&self) -> &RationalMatrix {
        &self.b
    }

    /// `C = A + B`.
    pub fn sum(&self) -> &RationalMatrix {
        &self.sum
    }

    pub fn rank(&self) -> usize {
        self.rank_sum
    }

    /// `|A + B|`.
    pub fn norm(&self) -> &Rational {
        &self.norm_sum
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.a.shape()
    }

    pub fn is_zero_sum(&self) -> bool {
        self.sum.is_zero()
    }

    pub fn is_square(&self) -> bool {
        self.a.is_square()
    }

    /// The game with the players' roles exchanged: `(Bᵀ, Aᵀ)`.
    pub fn swapped(&self) -> Self {
        Self::new(self.b.transpose(), self.a.transpose()).expect("transposes share a shape")
    }
}

/// A pair of mixed strategies `(x, y) ∈ S₁ × S₂`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MixedProfile {
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
}

fn check_simplex(v: &[Rational], name: &str) -> Result<()> {
    if v.is_empty() {
        return Err(Error::InvalidProfile(format!("{name} is empty")));
    }
    if v.iter().any(Signed::is_negative) {
        return Err(Error::InvalidProfile(format!("{name} has a negative entry")));
    }
    let total: Rational = v.iter().sum();
    if total != Rational::from_integer(1.into()) {
        return Err(Error::InvalidProfile(format!("{name} sums to {total}, not 1")));
    }
    Ok(())
}

impl MixedProfile {
    pub fn new(x: Vec<Rational>, y: Vec<Rational>) -> Result<Self> {
        check_simplex(&x, "x")?;
        check_simplex(&y, "y")?;
        Ok(Self { x, y })
    }

    /// `(eᵢ, eⱼ)`, zero-based.
    pub fn pure(m: usize, n: usize, i: usize, j: usize) -> Self {
        Self {
            x: unit(m, i),
            y: unit(n, j),
        }
    }

    pub fn uniform(m: usize, n: usize) -> Self {
        let fx = Rational::new(1.into(), (m as i64).into());
        let fy = Rational::new(1.into(), (n as i64).into());
        Self {
            x: vec![fx; m],
            y: vec![fy; n],
        }
    }

    pub fn support_x(&self) -> Vec<usize> {
        support(&self.x)
    }

    pub fn support_y(&self) -> Vec<usize> {
        support(&self.y)
    }

    /// `(y, x)`, the profile seen from the swapped game.
    pub fn swapped(&self) -> Self {
        Self {
            x: self.y.clone(),
            y: self.x.clone(),
        }
    }

    fn check_against(&self, game: &BimatrixGame) -> Result<()> {
        if self.x.len() != game.rows() || self.y.len() != game.cols() {
            return Err(Error::dims(format!(
                "profile ({}, {}) for a {}x{} game",
                self.x.len(),
                self.y.len(),
                game.rows(),
                game.cols()
            )));
        }
        Ok(())
    }
}

pub fn unit(len: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    v[i] = Rational::from_integer(1.into());
    v
}

pub fn support(v: &[Rational]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, p)| p.is_positive())
        .map(|(i, _)| i)
        .collect()
}

/// How a reported profile was certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionKind {
    Exact,
    /// `ℓ ≤ ε·|A+B|`.
    EpsApproximate(Rational),
    /// `ℓ ≤ ρ·s` with `s` the sum of best-response payoffs.
    RelativeApproximate(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquilibriumReport {
    pub profile: MixedProfile,
    pub loss: Rational,
    pub payoff1: Rational,
    pub payoff2: Rational,
    pub kind: SolutionKind,
    pub support1: Vec<usize>,
    pub support2: Vec<usize>,
}

impl EquilibriumReport {
    /// Recomputes loss and payoffs for `profile`. Fails when the claimed kind
    /// is not met by the recomputed loss.
    pub fn new(game: &BimatrixGame, profile: MixedProfile, kind: SolutionKind) -> Result<Self> {
        let loss = loss(game, &profile)?;
        let payoff1 = game.a().bilinear(&profile.x, &profile.y)?;
        let payoff2 = game.b().bilinear(&profile.x, &profile.y)?;
        let holds = match &kind {
            SolutionKind::Exact => loss.is_zero(),
            SolutionKind::EpsApproximate(eps) => loss <= eps * game.norm(),
            SolutionKind::RelativeApproximate(rho) => {
                let (r, c) = best_response_values(game, &profile)?;
                loss <= rho * (r + c)
            }
        };
        if !holds {
            return Err(Error::Precondition(format!(
                "profile with loss {loss} does not satisfy {kind:?}"
            )));
        }
        Ok(Self {
            support1: profile.support_x(),
            support2: profile.support_y(),
            profile,
            loss,
            payoff1,
            payoff2,
            kind,
        })
    }
}

/// `(maxᵢ (A y)ᵢ, maxⱼ (xᵀ B)ⱼ)`.
pub fn best_response_values(game: &BimatrixGame, p: &MixedProfile) -> Result<(Rational, Rational)> {
    p.check_against(game)?;
    let ay = game.a().mul_vec(&p.y)?;
    let xb = game.b().vec_mul(&p.x)?;
    Ok((
        ay.into_iter().max().expect("nonempty"),
        xb.into_iter().max().expect("nonempty"),
    ))
}

/// Pure strategies of player 1 that are best responses to `y`.
pub fn row_best_responses(game: &BimatrixGame, y: &[Rational]) -> Result<Vec<usize>> {
    let ay = game.a().mul_vec(y)?;
    let best = ay.iter().max().cloned().expect("nonempty");
    Ok(ay.iter().enumerate().filter(|(_, v)| **v == best).map(|(i, _)| i).collect())
}

/// Pure strategies of player 2 that are best responses to `x`.
pub fn column_best_responses(game: &BimatrixGame, x: &[Rational]) -> Result<Vec<usize>> {
    let xb = game.b().vec_mul(x)?;
    let best = xb.iter().max().cloned().expect("nonempty");
    Ok(xb.iter().enumerate().filter(|(_, v)| **v == best).map(|(j, _)| j).collect())
}

pub fn loss(game: &BimatrixGame, p: &MixedProfile) -> Result<Rational> {
    let (row_best, col_best) = best_response_values(game, p)?;
    let joint = game.sum().bilinear(&p.x, &p.y)?;
    Ok(row_best + col_best - joint)
}

pub fn is_exact_equilibrium(game: &BimatrixGame, p: &MixedProfile) -> Result<bool> {
    Ok(loss(game, p)?.is_zero())
}

fn check_eps(eps: &Rational) -> Result<()> {
    if eps.is_negative() {
        return Err(Error::invalid(format!("ε must be nonnegative, got {eps}")));
    }
    Ok(())
}

/// `ℓ(x, y) ≤ ε·|A+B|`.
pub fn is_eps_approximate(game: &BimatrixGame, p: &MixedProfile, eps: &Rational) -> Result<bool> {
    check_eps(eps)?;
    Ok(loss(game, p)? <= eps * game.norm())
}

/// Checks `xᵀA ȳ + x̄ᵀB y − x̄ᵀ(A+B)ȳ ≤ ε|A+B|` against every pure deviation
/// pair `(eᵢ, eⱼ)`. The left side is bilinear in the deviation, so pure
/// deviations attain its maximum over the simplices.
pub fn check_deviation_bound(game: &BimatrixGame, p: &MixedProfile, eps: &Rational) -> Result<bool> {
    check_eps(eps)?;
    p.check_against(game)?;
    let joint = game.sum().bilinear(&p.x, &p.y)?;
    let bound = eps * game.norm();
    for i in 0..game.rows() {
        let row_dev = dot(game.a().row(i), &p.y);
        for j in 0..game.cols() {
            let col_dev = dot(&p.x, &game.b().column(j));
            if &row_dev + col_dev - &joint > bound {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Objective of the quadratic program `min s − zᵀQz` at `z = (x, y)`, with
/// `s` at its smallest feasible value `max_{i,j} (A⁽ⁱ⁾ | B₍ⱼ₎ᵀ) z` and `Q`
/// the symmetric matrix with off-diagonal blocks `½C` and `½Cᵀ`.
pub fn qp_objective(game: &BimatrixGame, p: &MixedProfile) -> Result<Rational> {
    p.check_against(game)?;
    let (m, n) = game.shape();
    let half = Rational::new(1.into(), 2.into());
    let c = game.sum();
    let q = RationalMatrix::from_fn(m + n, m + n, |r, s| match (r < m, s < m) {
        (true, false) => &half * &c[(r, s - m)],
        (false, true) => &half * &c[(s, r - m)],
        _ => Rational::zero(),
    });
    let z: Vec<Rational> = p.x.iter().chain(&p.y).cloned().collect();
    let quad = q.bilinear(&z, &z)?;

    let mut s: Option<Rational> = None;
    for i in 0..m {
        for j in 0..n {
            // Row (A⁽ⁱ⁾ | B₍ⱼ₎ᵀ) acting on z = (x, y): x-block holds B's column j.
            let mut coeffs = vec![Rational::zero(); m + n];
            for (t, slot) in coeffs.iter_mut().enumerate().take(m) {
                *slot = game.b()[(t, j)].clone();
            }
            for (t, slot) in coeffs.iter_mut().enumerate().skip(m) {
                *slot = game.a()[(i, t - m)].clone();
            }
            let value = dot(&coeffs, &z);
            if s.as_ref().is_none_or(|cur| value > *cur) {
                s = Some(value);
            }
        }
    }
    Ok(s.expect("nonempty game") - quad)
}

/// Vertex-level non-degeneracy: at every vertex of each best-response
/// polyhedron, the number of binding best-response rows is at most the
/// support size of the strategy part.
pub fn is_nondegenerate(game: &BimatrixGame) -> bool {
    let (m, n) = game.shape();
    let (p_bar, q_bar) = build_polyhedra(game);
    let q_ok = enumerate_vertices(&q_bar).iter().all(|v| {
        let responses = v.binding.iter().filter(|&&l| l < m).count();
        responses <= support(v.strategy()).len()
    });
    q_ok && enumerate_vertices(&p_bar).iter().all(|v| {
        let responses = v.binding.iter().filter(|&&l| l >= m && l < m + n).count();
        responses <= support(v.strategy()).len()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{identity_game, rank1_family};
    use crate::numerics::{frac, int};
    use proptest::prelude::*;

    fn family2() -> BimatrixGame {
        BimatrixGame::from_ints(&[[2, 7], [1, 8]], &[[2, 1], [7, 8]]).unwrap()
    }

    fn half() -> Vec<Rational> {
        vec![frac(1, 2), frac(1, 2)]
    }

    fn pennies() -> BimatrixGame {
        BimatrixGame::zero_sum(RationalMatrix::from_ints(&[[1, -1], [-1, 1]])).unwrap()
    }

    #[test]
    fn game_caches() {
        let g = family2();
        assert_eq!(g.sum(), &RationalMatrix::from_ints(&[[4, 8], [8, 16]]));
        assert_eq!(g.rank(), 1);
        assert_eq!(g.norm(), &int(16));
        assert!(BimatrixGame::new(RationalMatrix::zeros(2, 2), RationalMatrix::zeros(2, 3)).is_err());
        assert!(BimatrixGame::new(RationalMatrix::zeros(0, 0), RationalMatrix::zeros(0, 0)).is_err());
    }

    #[test]
    fn profile_validation() {
        assert!(MixedProfile::new(vec![frac(1, 2)], vec![int(1)]).is_err());
        assert!(MixedProfile::new(vec![int(2), int(-1)], vec![int(1)]).is_err());
        assert!(MixedProfile::new(vec![], vec![int(1)]).is_err());
        let p = MixedProfile::new(vec![frac(1, 3), frac(2, 3), int(0)], vec![int(1)]).unwrap();
        assert_eq!(p.support_x(), vec![0, 1]);
    }

    #[test]
    fn loss_examples() {
        let g = family2();
        assert_eq!(loss(&g, &MixedProfile::pure(2, 2, 0, 0)).unwrap(), int(0));
        assert_eq!(loss(&g, &MixedProfile::pure(2, 2, 0, 1)).unwrap(), int(2));
        assert_eq!(loss(&pennies(), &MixedProfile::uniform(2, 2)).unwrap(), int(0));
        let wrong = MixedProfile::pure(3, 2, 0, 0);
        assert!(matches!(loss(&g, &wrong), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn best_response_value_examples() {
        let g = family2();
        let p = MixedProfile::new(unit(2, 0), half()).unwrap();
        assert_eq!(best_response_values(&g, &p).unwrap().0, frac(9, 2));
        assert_eq!(best_response_values(&g, &p).unwrap().1, int(2));
        let id = identity_game(2).unwrap();
        let p = MixedProfile::pure(2, 2, 1, 0);
        assert_eq!(best_response_values(&id, &p).unwrap().0, int(1));
    }

    #[test]
    fn exact_equilibrium_examples() {
        let g = family2();
        let mixed = MixedProfile::new(half(), half()).unwrap();
        assert!(is_exact_equilibrium(&g, &mixed).unwrap());
        assert!(!is_exact_equilibrium(&g, &MixedProfile::pure(2, 2, 0, 1)).unwrap());
    }

    #[test]
    fn eps_examples() {
        let g = family2();
        let off = MixedProfile::pure(2, 2, 0, 1);
        assert!(is_eps_approximate(&g, &off, &frac(1, 8)).unwrap());
        assert!(!is_eps_approximate(&g, &off, &frac(1, 10)).unwrap());
        let eq = MixedProfile::new(half(), half()).unwrap();
        assert!(is_eps_approximate(&g, &eq, &int(0)).unwrap());
        assert!(is_eps_approximate(&g, &off, &frac(-1, 2)).is_err());
    }

    #[test]
    fn zero_sum_eps_degeneracy() {
        // |A+B| = 0: only exact equilibria pass, whatever ε is.
        let g = pennies();
        let off = MixedProfile::pure(2, 2, 0, 0);
        assert!(!is_eps_approximate(&g, &off, &int(5)).unwrap());
        assert!(is_eps_approximate(&g, &MixedProfile::uniform(2, 2), &int(0)).unwrap());
    }

    #[test]
    fn deviation_bound_examples() {
        let g = family2();
        let eq = MixedProfile::new(half(), half()).unwrap();
        assert!(check_deviation_bound(&g, &eq, &int(0)).unwrap());
        assert!(!check_deviation_bound(&g, &MixedProfile::pure(2, 2, 0, 1), &int(0)).unwrap());
    }

    #[test]
    fn nondegeneracy_examples() {
        for d in 2..=6 {
            assert!(is_nondegenerate(&rank1_family(d).unwrap()), "d = {d}");
        }
        let ones = BimatrixGame::from_ints(&[[1, 1], [1, 1]], &[[1, 1], [1, 1]]).unwrap();
        assert!(!is_nondegenerate(&ones));
        assert!(is_nondegenerate(&identity_game(2).unwrap()));
    }

    #[test]
    fn qp_objective_examples() {
        let g = family2();
        assert_eq!(qp_objective(&g, &MixedProfile::pure(2, 2, 0, 1)).unwrap(), int(2));
        let z = pennies();
        let p = MixedProfile::pure(2, 2, 0, 1);
        let (r, c) = best_response_values(&z, &p).unwrap();
        assert_eq!(qp_objective(&z, &p).unwrap(), r + c);
    }

    #[test]
    fn report_checks_kind() {
        let g = family2();
        let off = MixedProfile::pure(2, 2, 0, 1);
        assert!(EquilibriumReport::new(&g, off.clone(), SolutionKind::Exact).is_err());
        let r = EquilibriumReport::new(&g, off, SolutionKind::EpsApproximate(frac(1, 8))).unwrap();
        assert_eq!(r.loss, int(2));
        assert_eq!(r.payoff1, int(7));
        assert_eq!(r.payoff2, int(1));
        assert_eq!((r.support1, r.support2), (vec![0], vec![1]));
    }

    fn arb_game() -> impl Strategy<Value = BimatrixGame> {
        (1usize..4, 1usize..4).prop_flat_map(|(m, n)| {
            (
                proptest::collection::vec(-5i64..=5, m * n),
                proptest::collection::vec(-5i64..=5, m * n),
            )
                .prop_map(move |(a, b)| {
                    BimatrixGame::new(
                        RationalMatrix::new(m, n, a.into_iter().map(int).collect()).unwrap(),
                        RationalMatrix::new(m, n, b.into_iter().map(int).collect()).unwrap(),
                    )
                    .unwrap()
                })
        })
    }

    fn arb_simplex(len: usize) -> impl Strategy<Value = Vec<Rational>> {
        proptest::collection::vec(0i64..=4, len).prop_map(move |w| {
            let total: i64 = w.iter().sum();
            if total == 0 {
                unit(len, 0)
            } else {
                w.iter().map(|&v| frac(v, total)).collect()
            }
        })
    }

    fn arb_case() -> impl Strategy<Value = (BimatrixGame, MixedProfile)> {
        arb_game().prop_flat_map(|g| {
            let (m, n) = g.shape();
            (Just(g), arb_simplex(m), arb_simplex(n))
                .prop_map(|(g, x, y)| (g, MixedProfile { x, y }))
        })
    }

    proptest! {
        #[test]
        fn loss_nonnegative((g, p) in arb_case()) {
            prop_assert!(!loss(&g, &p).unwrap().is_negative());
        }

        #[test]
        fn qp_identity((g, p) in arb_case()) {
            prop_assert_eq!(qp_objective(&g, &p).unwrap(), loss(&g, &p).unwrap());
        }

        #[test]
        fn deviation_equivalence((g, p) in arb_case(), num in 0i64..6, den in 1i64..8) {
            let eps = frac(num, den);
            prop_assert_eq!(
                is_eps_approximate(&g, &p, &eps).unwrap(),
                check_deviation_bound(&g, &p, &eps).unwrap()
            );
        }

        #[test]
        fn column_and_row_shifts_preserve_equilibria(
            (g, p) in arb_case(),
            shifts in proptest::collection::vec(-6i64..=6, 6),
        ) {
            let (m, n) = g.shape();
            let a = RationalMatrix::from_fn(m, n, |i, j| &g.a()[(i, j)] + int(shifts[j % 6]));
            let b = RationalMatrix::from_fn(m, n, |i, j| &g.b()[(i, j)] + int(shifts[(i + 3) % 6]));
            let shifted = BimatrixGame::new(a, b).unwrap();
            prop_assert_eq!(
                is_exact_equilibrium(&g, &p).unwrap(),
                is_exact_equilibrium(&shifted, &p).unwrap()
            );
        }

        #[test]
        fn loss_is_role_symmetric((g, p) in arb_case()) {
            prop_assert_eq!(loss(&g, &p).unwrap(), loss(&g.swapped(), &p.swapped()).unwrap());
        }
    }
}
