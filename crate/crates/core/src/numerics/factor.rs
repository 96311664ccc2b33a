use num::{Signed, Zero};

use super::{Rational, RationalMatrix};
use crate::error::{Error, Result};

/// One rank-one term `u vᵀ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorPair {
    pub u: Vec<Rational>,
    pub v: Vec<Rational>,
}

impl FactorPair {
    /// Flips the pair's sign so the first nonzero entry of `u` is positive.
    fn normalized(mut self) -> Self {
        if self.u.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
            self.u.iter_mut().for_each(|x| *x = -&*x);
            self.v.iter_mut().for_each(|x| *x = -&*x);
        }
        self
    }

    fn is_nonnegative(&self) -> bool {
        self.u.iter().chain(&self.v).all(|x| !x.is_negative())
    }
}

/// `M = Σ u⁽ⁱ⁾ (v⁽ⁱ⁾)ᵀ`, together with a flag recording whether every factor
/// entry is nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankFactorization {
    rows: usize,
    cols: usize,
    pairs: Vec<FactorPair>,
    nonnegative: bool,
}

impl RankFactorization {
    /// Wraps user-supplied factors after checking their lengths. Each pair is
    /// sign-normalized before the nonnegativity flag is computed.
    pub fn new(rows: usize, cols: usize, pairs: Vec<FactorPair>) -> Result<Self> {
        for (i, p) in pairs.iter().enumerate() {
            if p.u.len() != rows || p.v.len() != cols {
                return Err(Error::dims(format!(
                    "factor {i} has lengths ({}, {}), expected ({rows}, {cols})",
                    p.u.len(),
                    p.v.len()
                )));
            }
        }
        let pairs: Vec<FactorPair> = pairs.into_iter().map(FactorPair::normalized).collect();
        let nonnegative = pairs.iter().all(FactorPair::is_nonnegative);
        Ok(Self {
            rows,
            cols,
            pairs,
            nonnegative,
        })
    }

    pub fn pairs(&self) -> &[FactorPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.nonnegative
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn reconstruct(&self) -> RationalMatrix {
        self.pairs.iter().fold(RationalMatrix::zeros(self.rows, self.cols), |acc, p| {
            acc.add(&RationalMatrix::outer(&p.u, &p.v)).expect("same shape")
        })
    }
}

/// Exact rank factorization by successive rank-one elimination.
///
/// The pivot is the first nonzero entry in column-major scan order of the
/// current residual. The pivot column, scaled by the pivot, becomes `u`, and
/// the pivot row becomes `v`, so `u` has a 1 at the pivot row.
pub fn rank_factorize(m: &RationalMatrix) -> RankFactorization {
    let (rows, cols) = m.shape();
    let mut residual = m.clone();
    let mut pairs = Vec::new();
    for j in 0..cols {
        let Some(i) = (0..rows).find(|&i| !residual[(i, j)].is_zero()) else {
            continue;
        };
        let pivot = residual[(i, j)].clone();
        let u: Vec<Rational> = residual.column(j).iter().map(|x| x / &pivot).collect();
        let v: Vec<Rational> = residual.row(i).to_vec();
        for (r, ur) in u.iter().enumerate() {
            if ur.is_zero() {
                continue;
            }
            for (c, vc) in v.iter().enumerate() {
                if !vc.is_zero() {
                    residual[(r, c)] -= ur * vc;
                }
            }
        }
        pairs.push(FactorPair { u, v });
    }
    debug_assert!(residual.is_zero());
    RankFactorization::new(rows, cols, pairs).expect("lengths match by construction")
}
