use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

/// Two float subspaces are equal when the sine of their largest principal
/// angle is below this threshold.
pub const SUBSPACE_ANGLE_TOL: f64 = 1e-8;

/// A linear subspace of `S^n`, stored in reduced column-echelon form.
///
/// The canonical basis is unique per subspace on the exact backend, so
/// equality of subspaces is equality of canonical bases.
#[derive(Debug, Clone)]
pub struct Subspace<S> {
    ambient: usize,
    /// Canonical basis vectors as rows (an RREF with no zero rows).
    rows: Matrix<S>,
    pivots: Vec<usize>,
}

impl<S: Scalar> Subspace<S> {
    /// The span of an arbitrary family of vectors.
    pub fn span(ambient: usize, vectors: &[Vector<S>]) -> Result<Self> {
        for v in vectors {
            if v.dim() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: v.dim(),
                });
            }
        }
        let m = Matrix::from_rows(
            vectors.iter().map(|v| v.as_slice().to_vec()).collect(),
            ambient,
        );
        Ok(Self::from_row_space(&m))
    }

    /// Like [`Subspace::span`] but rejects linearly dependent families.
    pub fn from_basis(ambient: usize, vectors: &[Vector<S>]) -> Result<Self> {
        let s = Self::span(ambient, vectors)?;
        if s.dim() != vectors.len() {
            return Err(Error::SingularBasis);
        }
        Ok(s)
    }

    /// Column space of a matrix.
    pub fn column_space(m: &Matrix<S>) -> Self {
        Self::from_row_space(&m.transpose())
    }

    fn from_row_space(m: &Matrix<S>) -> Self {
        let rref = m.rref();
        let r = rref.pivots.len();
        let idx: Vec<usize> = (0..r).collect();
        Subspace {
            ambient: m.cols(),
            rows: rref.matrix.select_rows(&idx),
            pivots: rref.pivots,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// `span{e_k : k in indices}` for 0-based coordinate indices.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vs: Vec<Vector<S>> = indices
            .into_iter()
            .map(|k| Vector::unit(ambient, k))
            .collect();
        Self::span(ambient, &vs).expect("unit vectors have the ambient dimension")
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.dim()
    }

    /// Canonical basis as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> Matrix<S> {
        self.rows.transpose()
    }

    pub fn basis(&self) -> Vec<Vector<S>> {
        (0..self.dim()).map(|i| self.rows.row(i)).collect()
    }

    fn check_ambient(&self, n: usize) -> Result<()> {
        if n != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: n,
            });
        }
        Ok(())
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &Vector<S>) -> Result<Option<Vec<S>>> {
        self.check_ambient(v.dim())?;
        let coeffs: Vec<S> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.clone();
        for (i, c) in coeffs.iter().enumerate() {
            residual.axpy(&-c.clone(), &self.rows.row(i));
        }
        let scale = v.max_abs().max(1.0);
        Ok(residual.is_negligible(scale).then_some(coeffs))
    }

    pub fn contains(&self, v: &Vector<S>) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains_subspace(&self, other: &Subspace<S>) -> Result<bool> {
        self.check_ambient(other.ambient)?;
        for b in other.basis() {
            if !self.contains(&b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace<S>) -> Result<Subspace<S>> {
        self.check_ambient(other.ambient)?;
        let mut vs = self.basis();
        vs.extend(other.basis());
        Subspace::span(self.ambient, &vs)
    }

    /// Intersection computed from the kernel of `[A | -B]`.
    pub fn intersection(&self, other: &Subspace<S>) -> Result<Subspace<S>> {
        self.check_ambient(other.ambient)?;
        let a = self.basis_matrix();
        let b = other.basis_matrix().scale(&-S::one());
        let kernel = a.hstack(&b).nullspace();
        let da = self.dim();
        let vs: Vec<Vector<S>> = kernel
            .iter()
            .map(|k| {
                let coeffs: Vec<S> = k.as_slice()[..da].to_vec();
                a.mul_vec(&Vector::new(coeffs))
            })
            .collect();
        Subspace::span(self.ambient, &vs)
    }

    /// Orthogonal complement for the standard inner product.
    pub fn orthogonal_complement(&self) -> Subspace<S> {
        let ns = self.rows.nullspace();
        Subspace::span(self.ambient, &ns).expect("kernel vectors have the ambient dimension")
    }

    /// Image of the subspace under a square linear map.
    pub fn image(&self, map: &Matrix<S>) -> Result<Subspace<S>> {
        self.check_ambient(map.cols())?;
        let vs: Vec<Vector<S>> = self.basis().iter().map(|b| map.mul_vec(b)).collect();
        Subspace::span(map.rows(), &vs)
    }

    /// Sine of the largest principal angle, for subspaces of equal dimension.
    pub fn max_angle_sine(&self, other: &Subspace<S>) -> Option<f64> {
        if self.ambient != other.ambient || self.dim() != other.dim() {
            return None;
        }
        let pa = orthonormal_projector(&self.basis_matrix().to_f64());
        let pb = orthonormal_projector(&other.basis_matrix().to_f64());
        let diff = pa - pb;
        Some(diff.singular_values().iter().copied().fold(0.0, f64::max))
    }

    /// Same subspace: canonical-form equality (exact) or principal angles (float).
    pub fn same_as(&self, other: &Subspace<S>) -> bool {
        if self.ambient != other.ambient || self.dim() != other.dim() {
            return false;
        }
        if S::is_exact() {
            self.pivots == other.pivots && self.rows == other.rows
        } else {
            self.max_angle_sine(other)
                .is_some_and(|s| s <= SUBSPACE_ANGLE_TOL)
        }
    }

    pub fn to_f64(&self) -> Subspace<f64> {
        Subspace::span(
            self.ambient,
            &self.basis().iter().map(Vector::to_f64).collect::<Vec<_>>(),
        )
        .expect("same ambient dimension")
    }
}

impl<S: Scalar> PartialEq for Subspace<S> {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

fn orthonormal_projector(basis: &Matrix<f64>) -> DMatrix<f64> {
    let n = basis.rows();
    if basis.cols() == 0 {
        return DMatrix::zeros(n, n);
    }
    let b = DMatrix::from_fn(n, basis.cols(), |i, j| basis[(i, j)]);
    let q = b.qr().q();
    &q * q.transpose()
}
