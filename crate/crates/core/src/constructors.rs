//! Builders for the game families used throughout the crate, plus the
//! additive-sum to zero-sum reduction.

use num::Zero;

use crate::error::{Error, Result};
use crate::game::BimatrixGame;
use crate::numerics::{int, Rational, RationalMatrix};

/// Tagged description of a constructible game, as used by the CLI `gen`
/// command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Rank1 { d: usize },
    Aux { d: usize },
    Identity { d: usize },
    Block { inner: Box<FamilySpec>, outer: Box<FamilySpec> },
    /// `A = B = (p(g(i) − g(j)))`, coefficients in ascending degree.
    PolyKernel { g: Vec<Rational>, coeffs: Vec<Rational> },
}

impl FamilySpec {
    pub fn build(&self) -> Result<BimatrixGame> {
        match self {
            FamilySpec::Rank1 { d } => rank1_family(*d),
            FamilySpec::Aux { d } => aux_family(*d),
            FamilySpec::Identity { d } => identity_game(*d),
            FamilySpec::Block { inner, outer } => block_game(&inner.build()?, &outer.build()?),
            FamilySpec::PolyKernel { g, coeffs } => {
                let k = poly_kernel_matrix(g, coeffs)?;
                BimatrixGame::new(k.clone(), k)
            }
        }
    }

    /// Parses `name:d` (e.g. `rank1:3`, `identity:2`, `aux:4`).
    pub fn parse_simple(text: &str) -> Result<Self> {
        let (name, d) = text
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("expected FAMILY:D, got {text:?}")))?;
        let d: usize = d
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad size in {text:?}")))?;
        match name.trim() {
            "rank1" => Ok(FamilySpec::Rank1 { d }),
            "aux" => Ok(FamilySpec::Aux { d }),
            "identity" => Ok(FamilySpec::Identity { d }),
            other => Err(Error::invalid(format!("unknown family {other:?}"))),
        }
    }
}

fn check_size(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::invalid("d must be at least 1"));
    }
    Ok(())
}

/// `a_ij = 2ij − i² + j²`, `b_ij = 2ij + i² − j²` (one-based `i`, `j`).
/// `A + B = (4ij)` has rank 1 and `A = Bᵀ`.
pub fn rank1_family(d: usize) -> Result<BimatrixGame> {
    check_size(d)?;
    let entry = |i: usize, j: usize, sign: i64| {
        let (i, j) = (i as i64 + 1, j as i64 + 1);
        int(2 * i * j + sign * (j * j - i * i))
    };
    BimatrixGame::new(
        RationalMatrix::from_fn(d, d, |i, j| entry(i, j, 1)),
        RationalMatrix::from_fn(d, d, |i, j| entry(i, j, -1)),
    )
}

/// `ā_ij = b̄_ij = −(i − j)²`.
pub fn aux_family(d: usize) -> Result<BimatrixGame> {
    check_size(d)?;
    let m = RationalMatrix::from_fn(d, d, |i, j| {
        let diff = i as i64 - j as i64;
        int(-diff * diff)
    });
    BimatrixGame::new(m.clone(), m)
}

pub fn identity_game(d: usize) -> Result<BimatrixGame> {
    check_size(d)?;
    BimatrixGame::new(RationalMatrix::identity(d), RationalMatrix::identity(d))
}

/// Block-diagonal game `(diag(A′, A″), diag(B′, B″))`.
pub fn block_game(inner: &BimatrixGame, outer: &BimatrixGame) -> Result<BimatrixGame> {
    if !inner.is_square() || !outer.is_square() {
        return Err(Error::invalid("block_game needs square inner and outer games"));
    }
    BimatrixGame::new(inner.a().block_diag(outer.a()), inner.b().block_diag(outer.b()))
}

/// `c_ij = p(g(i) − g(j))` with `p(t) = Σ coeffs[k] tᵏ`. A degree-`n`
/// polynomial gives rank at most `(n+1)(n+2)/2`.
pub fn poly_kernel_matrix(g: &[Rational], coeffs: &[Rational]) -> Result<RationalMatrix> {
    if g.is_empty() {
        return Err(Error::invalid("grid mapping g is empty"));
    }
    if coeffs.is_empty() {
        return Err(Error::invalid("polynomial has no coefficients"));
    }
    let eval = |t: Rational| {
        coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &t + c)
    };
    Ok(RationalMatrix::from_fn(g.len(), g.len(), |i, j| eval(&g[i] - &g[j])))
}

/// `(n+1)(n+2)/2` for a polynomial of degree `n`.
pub fn poly_kernel_rank_bound(degree: usize) -> usize {
    (degree + 1) * (degree + 2) / 2
}

/// `a′_ij = a_ij − v_j`, `b′_ij = b_ij − u_i`, valid when
/// `a_ij + b_ij = u_i + v_j`. The result is zero-sum with the same equilibria.
pub fn additive_to_zerosum(game: &BimatrixGame, u: &[Rational], v: &[Rational]) -> Result<BimatrixGame> {
    let (m, n) = game.shape();
    if u.len() != m || v.len() != n {
        return Err(Error::dims(format!(
            "u, v of lengths ({}, {}) for a {m}x{n} game",
            u.len(),
            v.len()
        )));
    }
    for i in 0..m {
        for j in 0..n {
            if game.sum()[(i, j)] != &u[i] + &v[j] {
                return Err(Error::Precondition(format!(
                    "a+b at ({}, {}) is {}, but u_i + v_j = {}",
                    i + 1,
                    j + 1,
                    game.sum()[(i, j)],
                    &u[i] + &v[j]
                )));
            }
        }
    }
    BimatrixGame::new(
        RationalMatrix::from_fn(m, n, |i, j| &game.a()[(i, j)] - &v[j]),
        RationalMatrix::from_fn(m, n, |i, j| &game.b()[(i, j)] - &u[i]),
    )
}

/// Finds `(u, v)` with `c_ij = u_i + v_j` and `u₁ = 0`, if one exists.
pub fn find_additive_decomposition(c: &RationalMatrix) -> Option<(Vec<Rational>, Vec<Rational>)> {
    let (m, n) = c.shape();
    if m == 0 || n == 0 {
        return Some((vec![Rational::zero(); m], vec![Rational::zero(); n]));
    }
    let v: Vec<Rational> = c.row(0).to_vec();
    let u: Vec<Rational> = (0..m).map(|i| &c[(i, 0)] - &c[(0, 0)]).collect();
    let fits = (0..m).all(|i| (0..n).all(|j| c[(i, j)] == &u[i] + &v[j]));
    fits.then_some((u, v))
}
