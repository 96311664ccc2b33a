use crate::numerics::{rationalize, to_f64, Rational, RationalMatrix};

/// Relative off-diagonal tolerance for Jacobi rotations.
pub const JACOBI_TOLERANCE: f64 = 1e-12;
/// Denominator cap used when rationalizing singular vectors.
pub const RATIONAL_DENOMINATOR_CAP: u64 = 1_000_000;
const MAX_SWEEPS: usize = 100;

/// Thin SVD `M = Σ σₜ uₜ vₜᵀ` in floating point, singular values descending.
#[derive(Clone, Debug)]
pub struct Svd {
    pub singular_values: Vec<f64>,
    /// Left singular vectors, one per singular value.
    pub left: Vec<Vec<f64>>,
    /// Right singular vectors, one per singular value.
    pub right: Vec<Vec<f64>>,
}

/// One-sided (Hestenes) Jacobi SVD of a row-major `rows × cols` matrix.
pub fn jacobi_svd(rows: usize, cols: usize, data: &[f64]) -> Svd {
    assert_eq!(data.len(), rows * cols);
    // Work on columns of W = M, accumulating rotations in V.
    let mut w: Vec<Vec<f64>> = (0..cols).map(|j| (0..rows).map(|i| data[i * cols + j]).collect()).collect();
    let mut v: Vec<Vec<f64>> = (0..cols)
        .map(|j| (0..cols).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha: f64 = w[p].iter().map(|x| x * x).sum();
                let beta: f64 = w[q].iter().map(|x| x * x).sum();
                let gamma: f64 = w[p].iter().zip(&w[q]).map(|(a, b)| a * b).sum();
                if gamma == 0.0 || gamma.abs() <= JACOBI_TOLERANCE * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for cols_of in [&mut w, &mut v] {
                    let (left, right) = cols_of.split_at_mut(q);
                    for (a, b) in left[p].iter_mut().zip(right[0].iter_mut()) {
                        let (x, y) = (*a, *b);
                        *a = c * x - s * y;
                        *b = s * x + c * y;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..cols).collect();
    let norms: Vec<f64> = w.iter().map(|col| col.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));

    let mut svd = Svd {
        singular_values: Vec::new(),
        left: Vec::new(),
        right: Vec::new(),
    };
    for j in order {
        let sigma = norms[j];
        let left = if sigma > 0.0 {
            w[j].iter().map(|x| x / sigma).collect()
        } else {
            vec![0.0; rows]
        };
        svd.singular_values.push(sigma);
        svd.left.push(left);
        svd.right.push(v[j].clone());
    }
    svd
}

/// Best rank-`k` approximation of `c`, returned as an exact rational matrix.
///
/// When `k ≥ rank(c)` the input is returned unchanged. Otherwise the `k`
/// leading terms `σₜuₜ` and `vₜ` are each rationalized (denominator cap
/// [`RATIONAL_DENOMINATOR_CAP`]) and multiplied out exactly, so the result
/// has rank at most `k`.
pub fn svd_truncate(c: &RationalMatrix, k: usize) -> RationalMatrix {
    if k >= c.rank() {
        return c.clone();
    }
    let (rows, cols) = c.shape();
    let data: Vec<f64> = c.entries().iter().map(to_f64).collect();
    let svd = jacobi_svd(rows, cols, &data);
    let mut out = RationalMatrix::zeros(rows, cols);
    for t in 0..k.min(svd.singular_values.len()) {
        let sigma = svd.singular_values[t];
        let u: Vec<Rational> = svd.left[t]
            .iter()
            .map(|x| rationalize(sigma * x, RATIONAL_DENOMINATOR_CAP))
            .collect();
        let v: Vec<Rational> = svd.right[t]
            .iter()
            .map(|x| rationalize(*x, RATIONAL_DENOMINATOR_CAP))
            .collect();
        out = out.add(&RationalMatrix::outer(&u, &v)).expect("same shape");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, matrix_rank, max_abs_entry};
    use proptest::prelude::*;

    fn reconstruct(svd: &Svd, rows: usize, cols: usize) -> Vec<f64> {
        let mut out = vec![0.0; rows * cols];
        for ((s, u), v) in svd.singular_values.iter().zip(&svd.left).zip(&svd.right) {
            for i in 0..rows {
                for j in 0..cols {
                    out[i * cols + j] += s * u[i] * v[j];
                }
            }
        }
        out
    }

    #[test]
    fn known_singular_values() {
        // [[3, 0], [4, 5]] has singular values sqrt(45) and sqrt(5).
        let svd = jacobi_svd(2, 2, &[3.0, 0.0, 4.0, 5.0]);
        assert!((svd.singular_values[0] - 45f64.sqrt()).abs() < 1e-12);
        assert!((svd.singular_values[1] - 5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn truncate_full_rank_is_identity_map() {
        let c = RationalMatrix::from_ints(&[[4, 8], [8, 16]]);
        assert_eq!(svd_truncate(&c, 1), c);
        let c = RationalMatrix::from_ints(&[[1, 2], [3, 4]]);
        assert_eq!(svd_truncate(&c, 2), c);
    }

    #[test]
    fn truncate_identity_to_rank_one() {
        let c = RationalMatrix::identity(2);
        let t = svd_truncate(&c, 1);
        assert_eq!(matrix_rank(&t), 1);
        assert_eq!(max_abs_entry(&c.sub(&t).unwrap()).unwrap(), int(1));
    }

    #[test]
    fn truncate_zero_rank() {
        let c = RationalMatrix::from_ints(&[[1, 2], [3, 4]]);
        assert_eq!(svd_truncate(&c, 0), RationalMatrix::zeros(2, 2));
    }

    proptest! {
        #[test]
        fn svd_reconstructs_and_is_orthonormal(
            (rows, cols, data) in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
                (Just(r), Just(c), proptest::collection::vec(-9.0f64..9.0, r * c))
            })
        ) {
            let svd = jacobi_svd(rows, cols, &data);
            let back = reconstruct(&svd, rows, cols);
            for (a, b) in back.iter().zip(&data) {
                prop_assert!((a - b).abs() < 1e-9);
            }
            for w in svd.singular_values.windows(2) {
                prop_assert!(w[0] >= w[1]);
            }
            for (a, va) in svd.right.iter().enumerate() {
                for (b, vb) in svd.right.iter().enumerate() {
                    let d: f64 = va.iter().zip(vb).map(|(x, y)| x * y).sum();
                    let expected = if a == b { 1.0 } else { 0.0 };
                    prop_assert!((d - expected).abs() < 1e-9);
                }
            }
        }

        #[test]
        fn truncation_rank_bounded(
            data in proptest::collection::vec(-9i64..=9, 12),
            k in 0usize..4,
        ) {
            let c = RationalMatrix::new(3, 4, data.into_iter().map(int).collect()).unwrap();
            let t = svd_truncate(&c, k);
            prop_assert!(matrix_rank(&t) <= k);
        }
    }
}
