use std::fmt;
use std::ops::{Index, IndexMut};

use num::{BigInt, Integer, One, Signed, Zero};

use super::{dot, int, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, size, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::dims("ragged rows"));
        }
        let n_rows = rows.len();
        Self::new(n_rows, cols, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor for integer literals. Panics on ragged input.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| int(v)).collect())
                .collect(),
        )
        .expect("rectangular integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::dims(format!(
                "{:?} vs {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        self.map(|v| v * factor)
    }

    pub fn neg(&self) -> Self {
        self.map(|v| -v)
    }

    /// `M v` for a column vector `v` of length `cols`.
    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::dims(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    /// `vᵀ M` for a row vector `v` of length `rows`.
    pub fn vec_mul(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.rows {
            return Err(Error::dims(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut out = vec![Rational::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                if !a.is_zero() {
                    *o += vi * a;
                }
            }
        }
        Ok(out)
    }

    /// `xᵀ M y`.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        let my = self.mul_vec(y)?;
        if x.len() != self.rows {
            return Err(Error::dims("left vector length"));
        }
        Ok(dot(x, &my))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::dims("inner dimensions differ"));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(Rational::zero(), |acc, t| {
                acc + &self[(i, t)] * &other[(t, j)]
            })
        }))
    }

    /// Outer product `u vᵀ`.
    pub fn outer(u: &[Rational], v: &[Rational]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| &u[i] * &v[j])
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        Self::from_fn(rows, cols, |i, j| {
            if i < self.rows && j < self.cols {
                self[(i, j)].clone()
            } else if i >= self.rows && j >= self.cols {
                other[(i - self.rows, j - self.cols)].clone()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn rank(&self) -> usize {
        matrix_rank(self)
    }

    pub fn max_abs_entry(&self) -> Result<Rational> {
        max_abs_entry(self)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|v| v.is_integer())
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Rank over the rationals.
///
/// Each row is first scaled to integers by the lcm of its denominators, then
/// reduced with Bareiss fraction-free elimination, so every intermediate value
/// stays an integer.
pub fn matrix_rank(m: &RationalMatrix) -> usize {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter()
                .map(|v| v.numer() * (&lcm / v.denom()))
                .collect()
        })
        .collect();

    let (n_rows, n_cols) = m.shape();
    let mut rank = 0;
    let mut prev_pivot = BigInt::one();
    for col in 0..n_cols {
        if rank == n_rows {
            break;
        }
        let Some(pivot_row) = (rank..n_rows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let pivot = rows[rank][col].clone();
        for r in rank + 1..n_rows {
            let factor = rows[r][col].clone();
            for c in col..n_cols {
                let value = (&pivot * &rows[r][c] - &factor * &rows[rank][c]) / &prev_pivot;
                rows[r][c] = value;
            }
        }
        prev_pivot = pivot;
        rank += 1;
    }
    rank
}

/// Unique solution of `M z = rhs`, or `None` when the system is inconsistent
/// or underdetermined. `M` may be rectangular.
pub fn solve_unique(m: &RationalMatrix, rhs: &[Rational]) -> Option<Vec<Rational>> {
    let (n_rows, n_cols) = m.shape();
    assert_eq!(rhs.len(), n_rows, "rhs length");
    let mut rows: Vec<Vec<Rational>> = (0..n_rows)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(rhs[i].clone());
            r
        })
        .collect();
    let mut rank = 0;
    for col in 0..n_cols {
        let pivot_row = (rank..n_rows).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(rank, pivot_row);
        let pivot = rows[rank][col].clone();
        for v in rows[rank][col..].iter_mut() {
            *v /= &pivot;
        }
        let pivot_vals = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (t, pv) in row[col..].iter_mut().zip(&pivot_vals[col..]) {
                if !pv.is_zero() {
                    *t -= &factor * pv;
                }
            }
        }
        rank += 1;
    }
    // Remaining rows are all-zero on the left; they must have zero rhs.
    if rows[rank..].iter().any(|r| !r[n_cols].is_zero()) {
        return None;
    }
    Some(rows[..n_cols].iter().map(|r| r[n_cols].clone()).collect())
}

/// Elementwise max-absolute-value norm `|M|`.
pub fn max_abs_entry(m: &RationalMatrix) -> Result<Rational> {
    m.entries()
        .iter()
        .map(Signed::abs)
        .max()
        .ok_or(Error::EmptyMatrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::frac;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(matrix_rank(&RationalMatrix::zeros(3, 3)), 0);
        assert_eq!(matrix_rank(&RationalMatrix::from_ints(&[[4, 8], [8, 16]])), 1);
        assert_eq!(matrix_rank(&RationalMatrix::identity(3)), 3);
        assert_eq!(matrix_rank(&RationalMatrix::zeros(0, 0)), 0);
    }

    #[test]
    fn rank_handles_fractions() {
        let m = RationalMatrix::from_rows(vec![
            vec![frac(1, 2), frac(1, 3)],
            vec![frac(3, 2), int(1)],
        ])
        .unwrap();
        assert_eq!(matrix_rank(&m), 1);
    }

    #[test]
    fn max_abs_examples() {
        let m = RationalMatrix::from_ints(&[[4, 8], [8, 16]]);
        assert_eq!(max_abs_entry(&m).unwrap(), int(16));
        assert_eq!(max_abs_entry(&RationalMatrix::zeros(2, 2)).unwrap(), int(0));
        let m = RationalMatrix::from_ints(&[[-3, 2], [1, -1]]);
        assert_eq!(max_abs_entry(&m).unwrap(), int(3));
        assert_eq!(max_abs_entry(&RationalMatrix::zeros(0, 3)), Err(Error::EmptyMatrix));
    }

    #[test]
    fn linear_systems() {
        let m = RationalMatrix::from_ints(&[[2, 1], [1, 3]]);
        assert_eq!(solve_unique(&m, &[int(3), int(5)]).unwrap(), vec![frac(4, 5), frac(7, 5)]);
        let singular = RationalMatrix::from_ints(&[[1, 1], [2, 2]]);
        assert!(solve_unique(&singular, &[int(1), int(2)]).is_none());
        let tall = RationalMatrix::from_ints(&[[1, 0], [0, 1], [1, 1]]);
        assert_eq!(solve_unique(&tall, &[int(1), int(2), int(3)]).unwrap(), vec![int(1), int(2)]);
        assert!(solve_unique(&tall, &[int(1), int(2), int(4)]).is_none());
        let wide = RationalMatrix::from_ints(&[[1, 1]]);
        assert!(solve_unique(&wide, &[int(1)]).is_none());
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(RationalMatrix::from_rows(vec![vec![int(1)], vec![]]).is_err());
        assert!(RationalMatrix::new(2, 2, vec![int(1)]).is_err());
    }

    #[test]
    fn products() {
        let m = RationalMatrix::from_ints(&[[2, 7], [1, 8]]);
        let half = vec![frac(1, 2), frac(1, 2)];
        assert_eq!(m.mul_vec(&half).unwrap(), vec![frac(9, 2), frac(9, 2)]);
        assert_eq!(m.vec_mul(&[int(1), int(0)]).unwrap(), vec![int(2), int(7)]);
        assert_eq!(m.bilinear(&[int(0), int(1)], &[int(0), int(1)]).unwrap(), int(8));
        assert!(m.mul_vec(&[int(1)]).is_err());
    }

    #[test]
    fn block_diag_layout() {
        let a = RationalMatrix::from_ints(&[[1]]);
        let b = RationalMatrix::from_ints(&[[2, 3], [4, 5]]);
        let d = a.block_diag(&b);
        assert_eq!(d, RationalMatrix::from_ints(&[[1, 0, 0], [0, 2, 3], [0, 4, 5]]));
    }

    fn small_matrix() -> impl Strategy<Value = RationalMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
                RationalMatrix::new(r, c, v.into_iter().map(int).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(m in small_matrix()) {
            prop_assert_eq!(matrix_rank(&m), matrix_rank(&m.transpose()));
        }

        #[test]
        fn rank_of_outer_sum_bounded(
            u in proptest::collection::vec(-4i64..=4, 4),
            v in proptest::collection::vec(-4i64..=4, 3),
            w in proptest::collection::vec(-4i64..=4, 4),
            z in proptest::collection::vec(-4i64..=4, 3),
        ) {
            let to = |xs: &[i64]| xs.iter().map(|&x| int(x)).collect::<Vec<_>>();
            let m = RationalMatrix::outer(&to(&u), &to(&v))
                .add(&RationalMatrix::outer(&to(&w), &to(&z)))
                .unwrap();
            prop_assert!(matrix_rank(&m) <= 2);
        }
    }
}
