//! Closed-form counts for equilibria of square games: von Stengel's lower
//! bound `τ(d)`, Keiding's upper bound `Φ_{d,2d} − 1`, and the `C(d, k+1)²`
//! bound on equilibrium components when `rank A, rank B ≤ k`.

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `f(n) = Σ_{k=0}^{n} C(n+k, k)·C(n, k)`.
pub fn f_count(n: u64) -> BigInt {
    (0..=n).map(|k| binomial(n + k, k) * binomial(n, k)).sum()
}

/// `τ(d) = f(d/2) + f(d/2 − 1) − 1`, defined for even `d ≥ 2` only.
pub fn tau(d: u64) -> Result<BigInt> {
    if d < 2 || !d.is_multiple_of(2) {
        return Err(Error::invalid(format!("τ(d) needs an even d >= 2, got {d}")));
    }
    let half = d / 2;
    Ok(f_count(half) + f_count(half - 1) - 1)
}

/// `Φ_{d,k}`: `k/(k − d/2)·C(k − d/2, k − d)` for even `d`,
/// `2·C(k − (d+1)/2, k − d)` for odd `d`.
pub fn keiding_phi(d: u64, k: u64) -> Result<BigInt> {
    if d == 0 || k < d {
        return Err(Error::invalid(format!("Φ_(d,k) needs k >= d >= 1, got d = {d}, k = {k}")));
    }
    if d.is_multiple_of(2) {
        let shifted = k - d / 2;
        let value = BigRational::new(BigInt::from(k) * binomial(shifted, k - d), BigInt::from(shifted));
        if !value.is_integer() {
            return Err(Error::invalid(format!("Φ_({d},{k}) = {value} is not an integer")));
        }
        Ok(value.to_integer())
    } else {
        Ok(BigInt::from(2) * binomial(k - d.div_ceil(2), k - d))
    }
}

/// Keiding's bound `Φ_{d,2d} − 1` on equilibria of a non-degenerate `d×d` game.
pub fn keiding_bound(d: u64) -> Result<BigInt> {
    Ok(keiding_phi(d, 2 * d)? - 1)
}

/// `C(d, k+1)²`.
pub fn rank_component_bound(d: u64, k: u64) -> Result<BigInt> {
    if k + 1 > d {
        return Err(Error::invalid(format!("component bound needs k + 1 <= d, got d = {d}, k = {k}")));
    }
    let c = binomial(d, k + 1);
    Ok(&c * &c)
}

/// `(Σ_{s=1}^{k+1} C(d, s))²`: the number of support pairs with at most
/// `k + 1` strategies per player. Unlike [`rank_component_bound`] it also
/// counts equilibria whose supports are smaller than `k + 1`.
pub fn support_pair_bound(d: u64, k: u64) -> BigInt {
    let per_player: BigInt = (1..=(k + 1).min(d)).map(|s| binomial(d, s)).sum();
    &per_player * &per_player
}

/// `τ(k−1)·(2(d−k)+1)`: equilibria of a block game combining a `(k−1)×(k−1)`
/// game with `τ(k−1)` equilibria and a rank-one game of size `d−k+1`.
pub fn hierarchy_count(d: u64, k: u64) -> Result<BigInt> {
    if k < 1 || k > d {
        return Err(Error::invalid(format!("hierarchy count needs 1 <= k <= d, got d = {d}, k = {k}")));
    }
    Ok(tau(k - 1)? * BigInt::from(2 * (d - k) + 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub d: u64,
    pub k: Option<u64>,
    /// Absent for odd `d`.
    pub tau: Option<BigInt>,
    pub keiding: BigInt,
    pub rank_component_bound: Option<BigInt>,
}

pub fn bound_report(d: u64, k: Option<u64>) -> Result<BoundReport> {
    if d == 0 {
        return Err(Error::invalid("d must be at least 1"));
    }
    Ok(BoundReport {
        d,
        k,
        tau: tau(d).ok(),
        keiding: keiding_bound(d)?,
        rank_component_bound: k.map(|k| rank_component_bound(d, k)).transpose()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn f_values() {
        assert_eq!(f_count(0), big(1));
        assert_eq!(f_count(1), big(3));
        assert_eq!(f_count(2), big(13));
        assert_eq!(f_count(3), big(63));
    }

    #[test]
    fn tau_values() {
        assert_eq!(tau(2).unwrap(), big(3));
        assert_eq!(tau(4).unwrap(), big(15));
        assert_eq!(tau(6).unwrap(), big(75));
        assert!(tau(3).is_err());
        assert!(tau(0).is_err());
    }

    #[test]
    fn tau_tight_at_small_d() {
        for d in [2u64, 4] {
            assert_eq!(tau(d).unwrap(), big((1 << d) - 1));
        }
    }

    #[test]
    fn tau_asymptotics() {
        // 0.949 (1+√2)^d / √d is within a few percent by d = 6.
        let d = 6.0f64;
        let approx = 0.949 * (1.0 + 2f64.sqrt()).powf(d) / d.sqrt();
        assert!((approx - 75.0).abs() / 75.0 < 0.05);
    }

    #[test]
    fn keiding_values() {
        assert_eq!(keiding_phi(2, 4).unwrap(), big(4));
        assert_eq!(keiding_bound(2).unwrap(), big(3));
        assert_eq!(keiding_phi(4, 8).unwrap(), big(20));
        assert_eq!(keiding_bound(4).unwrap(), big(19));
        assert_eq!(keiding_phi(3, 6).unwrap(), big(8));
        assert_eq!(keiding_bound(3).unwrap(), big(7));
        assert!(keiding_phi(4, 3).is_err());
    }

    #[test]
    fn keiding_phi_is_integral_over_a_range() {
        for d in 1..=12u64 {
            for k in d..=3 * d {
                assert!(keiding_phi(d, k).is_ok(), "d = {d}, k = {k}");
            }
        }
    }

    #[test]
    fn component_bound_values() {
        assert_eq!(rank_component_bound(4, 1).unwrap(), big(36));
        assert_eq!(rank_component_bound(3, 2).unwrap(), big(1));
        assert_eq!(rank_component_bound(5, 1).unwrap(), big(100));
        assert!(rank_component_bound(3, 3).is_err());
    }

    #[test]
    fn support_pair_values() {
        assert_eq!(support_pair_bound(4, 1), big(100));
        assert_eq!(support_pair_bound(4, 3), big(225));
        assert_eq!(support_pair_bound(3, 5), big(49));
    }

    #[test]
    fn hierarchy_values() {
        assert_eq!(hierarchy_count(5, 3).unwrap(), big(15));
        assert!(hierarchy_count(5, 4).is_err());
    }

    #[test]
    fn reports() {
        let r = bound_report(4, Some(1)).unwrap();
        assert_eq!(r.tau, Some(big(15)));
        assert_eq!(r.keiding, big(19));
        assert_eq!(r.rank_component_bound, Some(big(36)));
        let r = bound_report(3, None).unwrap();
        assert_eq!(r.tau, None);
        assert_eq!(r.keiding, big(7));
        assert!(bound_report(0, None).is_err());
    }
}
