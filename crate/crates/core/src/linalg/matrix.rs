use std::ops::{Index, IndexMut};

use crate::linalg::Vector;
use crate::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref<S> {
    pub matrix: Matrix<S>,
    pub pivots: Vec<usize>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> S>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors; all rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<S>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    /// Builds a `rows x columns.len()` matrix whose columns are `columns`.
    pub fn from_columns(rows: usize, columns: &[Vector<S>]) -> Self {
        for c in columns {
            assert_eq!(c.dim(), rows, "column length mismatch");
        }
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vector<S> {
        Vector::new((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn columns(&self) -> Vec<Vector<S>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vector<S> {
        Vector::new(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &Vector<S>) -> Vector<S> {
        assert_eq!(self.cols, v.dim(), "dimension mismatch in mul_vec");
        Vector::new(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols).fold(S::zero(), |acc, k| {
                        let a = &self[(i, k)];
                        if a.is_zero() || v[k].is_zero() {
                            acc
                        } else {
                            acc + a.clone() * v[k].clone()
                        }
                    })
                })
                .collect(),
        )
    }

    pub fn add(&self, rhs: &Matrix<S>) -> Matrix<S> {
        self.zip_with(rhs, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, rhs: &Matrix<S>) -> Matrix<S> {
        self.zip_with(rhs, |a, b| a.clone() - b.clone())
    }

    fn zip_with<F: Fn(&S, &S) -> S>(&self, rhs: &Matrix<S>, f: F) -> Matrix<S> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &S) -> Matrix<S> {
        self.map(|x| x.clone() * factor.clone())
    }

    pub fn map<T, F: Fn(&S) -> T>(&self, f: F) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(|x| x.to_f64())
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.rows, rhs.rows, "row count mismatch");
        Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix<S> {
        Self::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix<S> {
        Self::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|x| x.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Largest absolute entrywise difference, in floating point.
    pub fn max_abs_diff(&self, rhs: &Matrix<S>) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a.clone() - b.clone()).to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Gauss-Jordan elimination. Exact scalars pivot on the first nonzero
    /// entry; floats use partial pivoting and treat entries below
    /// `FLOAT_RANK_TOL * max|a_ij|` as zero.
    pub fn rref(&self) -> Rref<S> {
        let mut m = self.clone();
        let scale = self.max_abs();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let candidate = if S::is_exact() {
                (r..m.rows).find(|&i| !m[(i, c)].is_zero())
            } else {
                (r..m.rows)
                    .filter(|&i| !m[(i, c)].is_negligible(scale))
                    .max_by(|&a, &b| {
                        m[(a, c)]
                            .abs()
                            .partial_cmp(&m[(b, c)].abs())
                            .unwrap_or(std::cmp::Ordering::Equal)
                    })
            };
            let Some(p) = candidate else {
                if !S::is_exact() {
                    for i in r..m.rows {
                        m[(i, c)] = S::zero();
                    }
                }
                continue;
            };
            m.swap_rows(r, p);
            let inv = S::one() / m[(r, c)].clone();
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    }
                }
                m[(i, c)] = S::zero();
            }
            pivots.push(c);
            r += 1;
        }
        if !S::is_exact() {
            for i in r..m.rows {
                for j in 0..m.cols {
                    m[(i, j)] = S::zero();
                }
            }
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vector<S>> {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = Vector::zeros(self.cols);
                v[f] = S::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `A x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &Vector<S>) -> Option<Vector<S>> {
        assert_eq!(self.rows, b.dim(), "right-hand side length mismatch");
        let aug = self.hstack(&Matrix::from_columns(self.rows, std::slice::from_ref(b)));
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = Vector::zeros(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix<S>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let Rref { matrix, pivots } = self.hstack(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(k, &p)| p != k) {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| matrix[(i, n + j)].clone()))
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows[0].len();
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
            cols,
        )
    }

    #[test]
    fn rank_and_nullspace_of_singular_matrix() {
        let a = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).is_zero());
    }

    #[test]
    fn inverse_round_trips() {
        let a = mat(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(mat(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = mat(&[&[1, 1], &[1, 1]]);
        assert!(a.solve(&Vector::new(vec![q(1), q(2)])).is_none());
        let x = a.solve(&Vector::new(vec![q(3), q(3)])).unwrap();
        assert_eq!(a.mul_vec(&x), Vector::new(vec![q(3), q(3)]));
    }

    #[test]
    fn float_rank_ignores_roundoff() {
        let a = Matrix::from_rows(vec![vec![1.0, 1.0 / 3.0], vec![3.0, 1.0 + 1e-15]], 2);
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn empty_shapes() {
        let a: Matrix<Rational> = Matrix::zeros(3, 0);
        assert_eq!(a.rank(), 0);
        assert!(a.nullspace().is_empty());
        let b: Matrix<Rational> = Matrix::zeros(0, 2);
        assert_eq!(b.nullspace().len(), 2);
    }
}
