use std::ops::{Add, Index, IndexMut, Neg, Sub};

use num_rational::BigRational;

use crate::scalar::Scalar;

/// A coordinate vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector<S>(Vec<S>);

impl<S: Scalar> Vector<S> {
    pub fn new(coords: Vec<S>) -> Self {
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![S::zero(); dim])
    }

    /// The `k`-th standard basis vector (0-based).
    pub fn unit(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[k] = S::one();
        v
    }

    pub fn from_rationals(coords: &[BigRational]) -> Self {
        Vector(coords.iter().map(S::from_rational).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[S] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<S> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.0.iter()
    }

    pub fn scale(&self, factor: &S) -> Self {
        Vector(self.0.iter().map(|x| x.clone() * factor.clone()).collect())
    }

    /// `self += a * x`
    pub fn axpy(&mut self, a: &S, x: &Self) {
        debug_assert_eq!(self.dim(), x.dim());
        if a.is_zero() {
            return;
        }
        for (s, xi) in self.0.iter_mut().zip(&x.0) {
            if !xi.is_zero() {
                *s = s.clone() + a.clone() * xi.clone();
            }
        }
    }

    pub fn dot(&self, other: &Self) -> S {
        self.0
            .iter()
            .zip(&other.0)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    /// Zero for exact scalars; entries below the float tolerance times `scale` otherwise.
    pub fn is_negligible(&self, scale: f64) -> bool {
        self.0.iter().all(|x| x.is_negligible(scale))
    }

    pub fn map<T, F: Fn(&S) -> T>(&self, f: F) -> Vector<T> {
        Vector(self.0.iter().map(f).collect())
    }

    pub fn to_f64(&self) -> Vector<f64> {
        self.map(|x| x.to_f64())
    }

    /// `sum_k coeffs[k] * vectors[k]`; `dim` is used when the family is empty.
    pub fn combination(dim: usize, coeffs: &[S], vectors: &[Vector<S>]) -> Self {
        let mut out = Self::zeros(dim);
        for (c, v) in coeffs.iter().zip(vectors) {
            out.axpy(c, v);
        }
        out
    }
}

impl<S> Index<usize> for Vector<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

impl<S> IndexMut<usize> for Vector<S> {
    fn index_mut(&mut self, i: usize) -> &mut S {
        &mut self.0[i]
    }
}

impl<S: Scalar> Add for &Vector<S> {
    type Output = Vector<S>;
    fn add(self, rhs: &Vector<S>) -> Vector<S> {
        debug_assert_eq!(self.dim(), rhs.dim());
        Vector(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }
}

impl<S: Scalar> Sub for &Vector<S> {
    type Output = Vector<S>;
    fn sub(self, rhs: &Vector<S>) -> Vector<S> {
        debug_assert_eq!(self.dim(), rhs.dim());
        Vector(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }
}

impl<S: Scalar> Neg for &Vector<S> {
    type Output = Vector<S>;
    fn neg(self) -> Vector<S> {
        Vector(self.0.iter().map(|a| -a.clone()).collect())
    }
}

impl<S: Scalar> Neg for Vector<S> {
    type Output = Vector<S>;
    fn neg(self) -> Vector<S> {
        -&self
    }
}

impl<S> From<Vec<S>> for Vector<S> {
    fn from(v: Vec<S>) -> Self {
        Vector(v)
    }
}
