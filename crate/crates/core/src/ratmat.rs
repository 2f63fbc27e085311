//! Dense matrices over the rationals.
//!
//! Every entry is a reduced [`Rational`], so equality is exact and rank
//! decisions never depend on a tolerance. Empty shapes (`0 x n`, `m x 0`) are
//! legal; multiplying through an empty inner dimension yields a zero matrix.

use std::fmt;
use std::ops::{Add, Mul, Neg, Range, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Builds the rational `numer / denom`.
///
/// # Panics
///
/// Panics if `denom` is zero.
pub fn q(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Conversion used by the [`matrix!`](crate::matrix) macro.
pub trait ToRational {
    fn to_rational(self) -> Rational;
}

macro_rules! int_to_rational {
    ($($t:ty),*) => {$(
        impl ToRational for $t {
            fn to_rational(self) -> Rational {
                Rational::from_integer(BigInt::from(self))
            }
        }
    )*};
}
int_to_rational!(i32, i64, u32, u64, usize);

impl ToRational for Rational {
    fn to_rational(self) -> Rational {
        self
    }
}

impl ToRational for &Rational {
    fn to_rational(self) -> Rational {
        self.clone()
    }
}

/// Parses `"p"` or `"p/q"`; panics on malformed literals.
impl ToRational for &str {
    fn to_rational(self) -> Rational {
        parse_rational(self).unwrap_or_else(|| panic!("not a rational literal: {self:?}"))
    }
}

/// Parses `p` or `p/q` with `q != 0`. The result is always reduced.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Canonical text form: `p` when the denominator is one, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Builds a [`Matrix`] from row literals.
///
/// ```
/// use pseudoschur::{matrix, q};
/// let m = matrix![[1, "1/2"], [q(-4, 5), 0]];
/// assert_eq!(m.shape(), (2, 2));
/// assert_eq!(m[(0, 1)], q(1, 2));
/// ```
#[macro_export]
macro_rules! matrix {
    ($([$($x:expr),* $(,)?]),+ $(,)?) => {
        $crate::Matrix::from_rows(vec![
            $(vec![$($crate::ratmat::ToRational::to_rational($x)),*]),+
        ])
        .expect("matrix! rows must have equal length")
    };
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// Row-major constructor; `data.len()` must equal `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dim("from_vec", (rows, cols), (data.len(), 1)));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from a list of equally long rows. An empty list gives
    /// the `0 x 0` matrix.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::dim("from_rows", (n_rows, n_cols), (1, row.len())));
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n_rows,
            cols: n_cols,
            data,
        })
    }

    pub fn from_i64_rows<const N: usize>(rows: &[[i64; N]]) -> Self {
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Rational::from_integer(x.into())))
            .collect();
        Matrix {
            rows: rows.len(),
            cols: N,
            data,
        }
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.data[i * self.cols + j] = value;
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.data[i * self.cols + j].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Matrix,
        op: &'static str,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<Matrix> {
        if self.shape() != other.shape() {
            return Err(Error::dim(op, self.shape(), other.shape()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::dim("mul", self.shape(), other.shape()));
        }
        let (m, k, n) = (self.rows, self.cols, other.cols);
        let mut data = vec![Rational::zero(); m * n];
        for i in 0..m {
            for l in 0..k {
                let a = &self.data[i * k + l];
                if a.is_zero() {
                    continue;
                }
                let out = &mut data[i * n..(i + 1) * n];
                for (o, b) in out.iter_mut().zip(other.row(l)) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        }
        Ok(Matrix { rows: m, cols: n, data })
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::dim("hstack", self.shape(), other.shape()));
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::dim("vstack", self.shape(), other.shape()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Matrix {
        assert!(rows.end <= self.rows && cols.end <= self.cols);
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for i in rows.clone() {
            data.extend_from_slice(&self.row(i)[cols.clone()]);
        }
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            let row = self.row(i);
            data.extend(cols.iter().map(|&j| row[j].clone()));
        }
        Matrix {
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    /// Reduced row echelon form by exact Gauss-Jordan elimination. The pivot
    /// in each column is the first nonzero entry at or below the current row.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.data[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    m.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = m.data[r * cols + c].recip();
            for j in c..cols {
                let x = &m.data[r * cols + j] * &inv;
                m.data[r * cols + j] = x;
            }
            let pivot_row: Vec<Rational> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.data[i * cols + c].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..cols {
                    if !pivot_row[j].is_zero() {
                        let x = &factor * &pivot_row[j];
                        m.data[i * cols + j] -= x;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// `self = left · right` with `left` the pivot columns of `self` and
    /// `right` the nonzero rows of its reduced echelon form.
    pub fn full_rank_factorize(&self) -> FullRankFactorization {
        let Rref { matrix, pivots } = self.rref();
        let rank = pivots.len();
        FullRankFactorization {
            left: self.select_columns(&pivots),
            right: matrix.submatrix(0..rank, 0..self.cols),
            rank,
        }
    }

    /// Exact inverse of a square nonsingular matrix.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n)).ok()?.rref();
        // A singular left half pushes a pivot into the identity half.
        if aug.pivots.len() < n || aug.pivots.last().is_some_and(|&p| p >= n) {
            return None;
        }
        Some(aug.matrix.submatrix(0..n, n..2 * n))
    }

    pub fn pow(&self, k: u32) -> Matrix {
        assert!(self.is_square(), "pow of non-square matrix");
        (0..k).fold(Matrix::identity(self.rows), |acc, _| &acc * self)
    }
}

/// Result of [`Matrix::rref`]: the echelon form and its strictly increasing
/// pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullRankFactorization {
    /// `m x r`, full column rank.
    pub left: Matrix,
    /// `r x n`, full row rank.
    pub right: Matrix,
    pub rank: usize,
}

/// Solves `a · x = b` exactly. Returns `Ok(None)` when the system is
/// inconsistent; free variables of a consistent system are set to zero.
pub fn solve_exact(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if a.rows != b.rows {
        return Err(Error::dim("solve", a.shape(), b.shape()));
    }
    let n = a.cols;
    let Rref { matrix, pivots } = a.hstack(b)?.rref();
    if pivots.last().is_some_and(|&p| p >= n) {
        return Ok(None);
    }
    let mut x = Matrix::zeros(n, b.cols);
    for (i, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(p, j, matrix.data[i * matrix.cols + n + j].clone());
        }
    }
    Ok(Some(x))
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Matrix> for &Matrix {
            type Output = Matrix;

            /// Panics on a shape mismatch; use the `checked_` form to get an error.
            fn $method(self, rhs: &Matrix) -> Matrix {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $tr<Matrix> for Matrix {
            type Output = Matrix;

            fn $method(self, rhs: Matrix) -> Matrix {
                (&self).$method(&rhs)
            }
        }

        impl $tr<&Matrix> for Matrix {
            type Output = Matrix;

            fn $method(self, rhs: &Matrix) -> Matrix {
                (&self).$method(rhs)
            }
        }

        impl $tr<Matrix> for &Matrix {
            type Output = Matrix;

            fn $method(self, rhs: Matrix) -> Matrix {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl Neg for Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        -&self
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

/// One row per line, entries in canonical rational form separated by spaces.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
