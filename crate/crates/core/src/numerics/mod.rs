//! Exact rational arithmetic substrate: dense matrices, rank, rank-one
//! factorizations and a Bland's-rule simplex solver.

mod factor;
mod lp;
mod matrix;

use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

pub use factor::{rank_factorize, FactorPair, RankFactorization};
pub use lp::{solve_lp, Constraint, LinearProgram, LpSolution, LpStatus, Sense, VarBounds};
pub use matrix::{matrix_rank, max_abs_entry, solve_unique, RationalMatrix};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `numer / denom`. Panics when `denom == 0`.
pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p"`, `"-p"` or `"p/q"`. Whitespace around the token is ignored.
pub fn parse_rational(token: &str) -> Result<Rational> {
    let token = token.trim();
    if token.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    let bad = || Error::Parse(format!("not an integer or fraction: {token:?}"));
    match token.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {token:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => BigInt::from_str(token)
            .map(Rational::from_integer)
            .map_err(|_| bad()),
    }
}

/// Parses a comma- or whitespace-separated list of rationals.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(parse_rational)
        .collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(zero(), |acc, (x, y)| acc + x * y)
}

pub fn max_of<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<Rational> {
    values.into_iter().max().cloned()
}

pub fn min_of<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<Rational> {
    values.into_iter().min().cloned()
}

pub fn abs(value: &Rational) -> Rational {
    value.abs()
}

/// Best rational approximation of `value` with denominator at most
/// `max_denom`, by continued-fraction convergents and semiconvergents.
pub fn rationalize(value: f64, max_denom: u64) -> Rational {
    assert!(value.is_finite(), "cannot rationalize {value}");
    assert!(max_denom >= 1);
    if value == value.trunc() && value.abs() < 9.0e15 {
        return int(value as i64);
    }
    let exact = Rational::from_float(value).expect("finite float");
    let negative = exact.is_negative();
    let target = exact.abs();
    let cap = BigInt::from(max_denom);

    // Two most recent convergents h/k, seeded with 0/1 and 1/0.
    let (mut h_m2, mut h_m1) = (BigInt::zero(), BigInt::one());
    let (mut k_m2, mut k_m1) = (BigInt::one(), BigInt::zero());

    let mut rest = target.clone();
    let best = loop {
        let a = rest.floor().to_integer();
        let h_new = &a * &h_m1 + &h_m2;
        let k_new = &a * &k_m1 + &k_m2;
        if k_new > cap {
            // Largest semiconvergent that still fits under the cap.
            let t = (&cap - &k_m2) / &k_m1;
            let semi = Rational::new(&t * &h_m1 + &h_m2, &t * &k_m1 + &k_m2);
            let conv = Rational::new(h_m1.clone(), k_m1.clone());
            let semi_err = (&semi - &target).abs();
            let conv_err = (&conv - &target).abs();
            break if t > BigInt::zero() && semi_err < conv_err {
                semi
            } else {
                conv
            };
        }
        h_m2 = std::mem::replace(&mut h_m1, h_new);
        k_m2 = std::mem::replace(&mut k_m1, k_new);
        let frac_part = &rest - Rational::from_integer(a);
        if frac_part.is_zero() {
            break Rational::new(h_m1.clone(), k_m1.clone());
        }
        rest = frac_part.recip();
    };
    if negative {
        -best
    } else {
        best
    }
}

pub fn to_f64(value: &Rational) -> f64 {
    use num::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}
