//! Moore-Penrose inverse.

use nalgebra::DMatrix;

use crate::linalg::Matrix;
use crate::scalar::{Scalar, FLOAT_RANK_TOL};

/// `A†`: rank factorization on the exact backend, SVD on the float backend.
pub fn moore_penrose<S: Scalar>(a: &Matrix<S>) -> Matrix<S> {
    if S::is_exact() {
        moore_penrose_rank_factorization(a)
    } else {
        moore_penrose_svd(&a.to_f64()).map(|x| S::from_f64(*x))
    }
}

/// `A = C F` with `C` the pivot columns of `A` and `F` the nonzero rows of
/// its RREF; then `A† = Fᵀ (F Fᵀ)⁻¹ (Cᵀ C)⁻¹ Cᵀ`.
pub fn moore_penrose_rank_factorization<S: Scalar>(a: &Matrix<S>) -> Matrix<S> {
    let rref = a.rref();
    let r = rref.pivots.len();
    if r == 0 {
        return Matrix::zeros(a.cols(), a.rows());
    }
    let c = a.select_columns(&rref.pivots);
    let f = rref.matrix.select_rows(&(0..r).collect::<Vec<_>>());
    let ct = c.transpose();
    let ft = f.transpose();
    let ffi = f.mul(&ft).inverse().expect("F has full row rank");
    let cci = ct.mul(&c).inverse().expect("C has full column rank");
    ft.mul(&ffi).mul(&cci).mul(&ct)
}

/// SVD route; singular values below `FLOAT_RANK_TOL * σ_max` are dropped.
pub fn moore_penrose_svd(a: &Matrix<f64>) -> Matrix<f64> {
    let (m, n) = (a.rows(), a.cols());
    if m == 0 || n == 0 {
        return Matrix::zeros(n, m);
    }
    let dm = DMatrix::from_fn(m, n, |i, j| a[(i, j)]);
    let svd = dm.svd(true, true);
    let u = svd.u.as_ref().expect("requested U");
    let vt = svd.v_t.as_ref().expect("requested V^T");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cutoff = FLOAT_RANK_TOL * smax;
    let mut out = Matrix::zeros(n, m);
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s <= cutoff || s == 0.0 {
            continue;
        }
        for i in 0..n {
            let vik = vt[(k, i)] / s;
            for j in 0..m {
                out[(i, j)] += vik * u[(j, k)];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn penrose_holds(a: &Matrix<Rational>, b: &Matrix<Rational>) -> bool {
        let ab = a.mul(b);
        let ba = b.mul(a);
        ab.mul(a) == *a && ba.mul(b) == *b && ab.is_symmetric() && ba.is_symmetric()
    }

    #[test]
    fn identity_and_zero() {
        let i: Matrix<Rational> = Matrix::identity(3);
        assert_eq!(moore_penrose(&i), i);
        let z: Matrix<Rational> = Matrix::zeros(2, 3);
        assert_eq!(moore_penrose(&z), Matrix::zeros(3, 2));
    }

    #[test]
    fn all_ones_two_by_two() {
        let a = Matrix::from_rows(vec![vec![q(1, 1), q(1, 1)], vec![q(1, 1), q(1, 1)]], 2);
        let b = moore_penrose(&a);
        assert_eq!(b, Matrix::from_fn(2, 2, |_, _| q(1, 4)));
        assert!(penrose_holds(&a, &b));
    }

    #[test]
    fn rectangular_rank_deficient() {
        let a = Matrix::from_rows(
            vec![
                vec![q(1, 1), q(2, 1), q(3, 1)],
                vec![q(2, 1), q(4, 1), q(6, 1)],
            ],
            3,
        );
        let b = moore_penrose(&a);
        assert_eq!((b.rows(), b.cols()), (3, 2));
        assert!(penrose_holds(&a, &b));
    }

    #[test]
    fn svd_route_agrees_with_rank_factorization() {
        let a = Matrix::from_rows(
            vec![
                vec![1.0, 2.0, 0.5],
                vec![0.0, 1.0, -1.0],
                vec![1.0, 3.0, -0.5],
            ],
            3,
        );
        let svd = moore_penrose_svd(&a);
        let rf = moore_penrose_rank_factorization(&a);
        assert!(svd.max_abs_diff(&rf) < 1e-9);
    }
}
