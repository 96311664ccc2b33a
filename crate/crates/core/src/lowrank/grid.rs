use itertools::Itertools;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::Rational;

/// Cell of the additive grid: `zᵢ ∈ [lowerᵢ, upperᵢ]` with
/// `|zᵢ − centerᵢ| ≤ stepᵢ/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsGridCell {
    pub centers: Vec<Rational>,
    pub steps: Vec<Rational>,
    pub intervals: Vec<(Rational, Rational)>,
}

/// Cell of the geometric grid: `zᵢ ∈ z[i]`, `wᵢ ∈ w[i]`. Lower ends are `αᵢ`
/// and `βᵢ`; upper ends are `(1+ε)αᵢ` unless truncated at the range maximum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridCell {
    pub z: Vec<(Rational, Rational)>,
    pub w: Vec<(Rational, Rational)>,
}

impl GridCell {
    /// `Σ αᵢβᵢ`, a lower bound on `xᵀCy` inside the cell.
    pub fn alpha_beta_sum(&self) -> Rational {
        self.z
            .iter()
            .zip(&self.w)
            .fold(Rational::zero(), |acc, ((a, _), (b, _))| acc + a * b)
    }
}

/// Consecutive intervals of width `step` starting at `lo`, the last one
/// clipped at `hi`. A degenerate range yields the single interval `[lo, lo]`.
pub fn additive_intervals(lo: &Rational, hi: &Rational, step: &Rational) -> Result<Vec<(Rational, Rational)>> {
    if lo > hi {
        return Err(Error::invalid(format!("empty range [{lo}, {hi}]")));
    }
    if !(step > &Rational::zero()) {
        return Err(Error::invalid(format!("grid step must be positive, got {step}")));
    }
    if lo == hi {
        return Ok(vec![(lo.clone(), hi.clone())]);
    }
    let mut out = Vec::new();
    let mut a = lo.clone();
    while &a < hi {
        let b = (&a + step).min(hi.clone());
        out.push((a, b.clone()));
        a = b;
    }
    Ok(out)
}

/// Intervals `[α, (1+ε)α]` from `lo` up to `hi`, the last one clipped at `hi`.
/// A zero lower end is covered by `[0, η]`, `η = hi·ε/(1+ε)`, before the
/// progression starts at `η`.
pub fn geometric_intervals(lo: &Rational, hi: &Rational, eps: &Rational) -> Result<Vec<(Rational, Rational)>> {
    if lo > hi || lo < &Rational::zero() {
        return Err(Error::invalid(format!("geometric grid needs 0 <= lo <= hi, got [{lo}, {hi}]")));
    }
    if !(eps > &Rational::zero()) {
        return Err(Error::invalid(format!("ε must be positive, got {eps}")));
    }
    if lo == hi {
        return Ok(vec![(lo.clone(), hi.clone())]);
    }
    let ratio = Rational::one() + eps;
    let mut out = Vec::new();
    let mut a = lo.clone();
    if a.is_zero() {
        let eta = hi * eps / &ratio;
        out.push((Rational::zero(), eta.clone()));
        a = eta;
    }
    while &a < hi {
        let b = (&a * &ratio).min(hi.clone());
        out.push((a, b.clone()));
        a = b;
    }
    Ok(out)
}

/// Cartesian product of per-factor interval lists, lexicographic in the
/// per-factor indices.
pub(crate) fn product<T: Clone>(axes: &[Vec<T>]) -> Vec<Vec<T>> {
    if axes.is_empty() {
        return vec![Vec::new()];
    }
    axes.iter().map(|axis| axis.iter().cloned()).multi_cartesian_product().collect()
}

/// All additive cells for per-factor ranges and steps.
pub fn absolute_cells(ranges: &[(Rational, Rational)], steps: &[Rational]) -> Result<Vec<AbsGridCell>> {
    if ranges.len() != steps.len() {
        return Err(Error::dims("one step per range is required"));
    }
    let axes = ranges
        .iter()
        .zip(steps)
        .map(|((lo, hi), step)| additive_intervals(lo, hi, step))
        .collect::<Result<Vec<_>>>()?;
    let half = Rational::new(1.into(), 2.into());
    Ok(product(&axes)
        .into_iter()
        .map(|intervals| AbsGridCell {
            centers: intervals
                .iter()
                .zip(steps)
                .map(|((lo, hi), step)| if lo == hi { lo.clone() } else { lo + step * &half })
                .collect(),
            steps: steps.to_vec(),
            intervals,
        })
        .collect())
}

/// All geometric cells for per-factor `z` and `w` ranges.
pub fn relative_cells(
    z_ranges: &[(Rational, Rational)],
    w_ranges: &[(Rational, Rational)],
    eps: &Rational,
) -> Result<Vec<GridCell>> {
    if z_ranges.len() != w_ranges.len() {
        return Err(Error::dims("z and w need one range per factor"));
    }
    let k = z_ranges.len();
    let axes = z_ranges
        .iter()
        .chain(w_ranges)
        .map(|(lo, hi)| geometric_intervals(lo, hi, eps))
        .collect::<Result<Vec<_>>>()?;
    Ok(product(&axes)
        .into_iter()
        .map(|mut all| {
            let w = all.split_off(k);
            GridCell { z: all, w }
        })
        .collect())
}
