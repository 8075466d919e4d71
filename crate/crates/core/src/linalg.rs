//! Dense exact linear algebra over Q(s, i).

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldError, Scalar};

#[derive(Debug, Error, PartialEq)]
pub enum LinalgError {
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("singular system")]
    Singular,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Row-major dense matrix of scalars.
#[derive(Clone, PartialEq, Serialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            m.set(k, k, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_shape(rhs)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_shape(rhs)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    fn same_shape(&self, rhs: &Matrix) -> Result<(), LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinalgError::DimensionMismatch(
                self.rows * self.cols,
                rhs.rows * rhs.cols,
            ));
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch(self.cols, rhs.rows));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::DimensionMismatch(self.cols, v.len()));
        }
        Ok((0..self.rows)
            .map(|r| {
                (0..self.cols).fold(Scalar::zero(), |acc, c| {
                    let a = self.get(r, c);
                    if a.is_zero() || v[c].is_zero() {
                        acc
                    } else {
                        acc + a * &v[c]
                    }
                })
            })
            .collect())
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        Matrix::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |r, c| {
            let a = self.get(r / rhs.rows, c / rhs.cols);
            if a.is_zero() {
                Scalar::zero()
            } else {
                a * rhs.get(r % rhs.rows, c % rhs.cols)
            }
        })
    }

    /// Vertical concatenation.
    pub fn stack(blocks: &[Matrix]) -> Result<Matrix, LinalgError> {
        let cols = blocks.first().map_or(0, |m| m.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(LinalgError::DimensionMismatch(cols, b.cols));
            }
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        Ok(Matrix { rows, cols, data })
    }

    /// All 2×2 minors vanish.
    pub fn rank_at_most_one(&self) -> bool {
        for r1 in 0..self.rows {
            for r2 in r1 + 1..self.rows {
                for c1 in 0..self.cols {
                    for c2 in c1 + 1..self.cols {
                        let minor = self.get(r1, c1) * self.get(r2, c2)
                            - self.get(r1, c2) * self.get(r2, c1);
                        if !minor.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

fn find_pivot(m: &Matrix, col: usize, from: usize) -> Option<usize> {
    (from..m.rows).find(|&r| !m.get(r, col).is_zero())
}

fn swap_rows(m: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for c in 0..m.cols {
        m.data.swap(a * m.cols + c, b * m.cols + c);
    }
}

/// Fraction-free (Bareiss) determinant. Every division is exact.
pub fn determinant(m: &Matrix) -> Result<Scalar, LinalgError> {
    if m.rows != m.cols {
        return Err(LinalgError::NotSquare(m.rows, m.cols));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Scalar::one());
    }
    let mut a = m.clone();
    let mut sign_flip = false;
    let mut prev = Scalar::one();
    for k in 0..n - 1 {
        let Some(p) = find_pivot(&a, k, k) else {
            return Ok(Scalar::zero());
        };
        if p != k {
            swap_rows(&mut a, p, k);
            sign_flip = !sign_flip;
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            let aik = a.get(i, k).clone();
            for j in k + 1..n {
                let num = &pivot * a.get(i, j) - &aik * a.get(k, j);
                a.set(i, j, num.try_div(&prev)?);
            }
            a.set(i, k, Scalar::zero());
        }
        prev = pivot;
    }
    let det = a.get(n - 1, n - 1).clone();
    Ok(if sign_flip { -det } else { det })
}

/// Row-echelon rank by Gaussian elimination over the field.
pub fn rank(m: &Matrix) -> Result<usize, LinalgError> {
    let mut a = m.clone();
    let mut rank = 0;
    for col in 0..a.cols {
        if rank == a.rows {
            break;
        }
        let Some(p) = find_pivot(&a, col, rank) else {
            continue;
        };
        swap_rows(&mut a, p, rank);
        let inv = a.get(rank, col).inverse()?;
        for r in rank + 1..a.rows {
            let factor = a.get(r, col) * &inv;
            if factor.is_zero() {
                continue;
            }
            for c in col..a.cols {
                let v = a.get(r, c) - &(&factor * a.get(rank, c));
                a.set(r, c, v);
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// Solves the square system `m · x = rhs`.
pub fn solve(m: &Matrix, rhs: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
    if m.rows != m.cols {
        return Err(LinalgError::NotSquare(m.rows, m.cols));
    }
    if rhs.len() != m.rows {
        return Err(LinalgError::DimensionMismatch(m.rows, rhs.len()));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut b = rhs.to_vec();
    for col in 0..n {
        let p = find_pivot(&a, col, col).ok_or(LinalgError::Singular)?;
        swap_rows(&mut a, p, col);
        b.swap(p, col);
        let inv = a.get(col, col).inverse()?;
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = a.get(r, col) * &inv;
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let v = a.get(r, c) - &(&factor * a.get(col, c));
                a.set(r, c, v);
            }
            b[r] = &b[r] - &(&factor * &b[col]);
        }
    }
    Ok((0..n).map(|k| &b[k] / a.get(k, k)).collect())
}
