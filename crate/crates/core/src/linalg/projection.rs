//! Orthogonal and oblique projections.

use crate::error::{Error, Result};
use crate::linalg::{moore_penrose, Matrix, Subspace, Vector};
use crate::scalar::Scalar;

/// `P = B (BᵀB)⁻¹ Bᵀ` for a basis matrix `B` of `w`.
pub fn orthogonal_projection<S: Scalar>(w: &Subspace<S>) -> Matrix<S> {
    let n = w.ambient_dim();
    if w.dim() == 0 {
        return Matrix::zeros(n, n);
    }
    let b = w.basis_matrix();
    let bt = b.transpose();
    let gram_inv = bt.mul(&b).inverse().expect("basis columns are independent");
    b.mul(&gram_inv).mul(&bt)
}

fn same_ambient<S: Scalar>(a: &Subspace<S>, b: &Subspace<S>) -> Result<()> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim(),
            found: b.ambient_dim(),
        });
    }
    Ok(())
}

/// `u0 ∔ w` is the whole ambient space.
pub fn is_transversal<S: Scalar>(u0: &Subspace<S>, w: &Subspace<S>) -> Result<bool> {
    same_ambient(u0, w)?;
    let n = u0.ambient_dim();
    if u0.dim() + w.dim() != n {
        return Ok(false);
    }
    Ok(u0.sum(w)?.dim() == n)
}

fn require_transversal<S: Scalar>(u0: &Subspace<S>, w: &Subspace<S>) -> Result<()> {
    if !is_transversal(u0, w)? {
        return Err(Error::NotTransversal {
            dim_a: u0.dim(),
            dim_b: w.dim(),
            ambient: u0.ambient_dim(),
        });
    }
    Ok(())
}

/// Oblique projection onto `u0` along `w` from orthogonal projections and a
/// Moore-Penrose inverse: `P_U0 ((1 - P_W) P_U0)† (1 - P_W)`.
pub fn oblique_projection_mp<S: Scalar>(u0: &Subspace<S>, w: &Subspace<S>) -> Result<Matrix<S>> {
    require_transversal(u0, w)?;
    let n = u0.ambient_dim();
    let p_u0 = orthogonal_projection(u0);
    let q_w = Matrix::identity(n).sub(&orthogonal_projection(w));
    let middle = moore_penrose(&q_w.mul(&p_u0));
    Ok(p_u0.mul(&middle).mul(&q_w))
}

/// [`oblique_projection_mp`] computed for the inner product
/// `<x, y> = (Lx)·(Ly)`, where `factor` is the invertible matrix `L`.
///
/// The oblique projection itself does not depend on the inner product, so
/// the result must match the standard one.
pub fn oblique_projection_mp_in_metric<S: Scalar>(
    u0: &Subspace<S>,
    w: &Subspace<S>,
    factor: &Matrix<S>,
) -> Result<Matrix<S>> {
    let n = u0.ambient_dim();
    if factor.rows() != n || factor.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: factor.rows(),
        });
    }
    let inv = factor.inverse().ok_or(Error::SingularBasis)?;
    let e = oblique_projection_mp(&u0.image(factor)?, &w.image(factor)?)?;
    Ok(inv.mul(&e).mul(factor))
}

/// Oblique projection onto `u0` along `w` by solving `v = u + w` for each
/// standard basis vector `v`.
pub fn oblique_projection_direct<S: Scalar>(
    u0: &Subspace<S>,
    w: &Subspace<S>,
) -> Result<Matrix<S>> {
    require_transversal(u0, w)?;
    let n = u0.ambient_dim();
    let bu = u0.basis_matrix();
    let both = bu.hstack(&w.basis_matrix());
    let inv = both.inverse().expect("transversal bases form a basis");
    let keep = bu.hstack(&Matrix::zeros(n, w.dim()));
    Ok(keep.mul(&inv))
}

/// Orthogonal projection onto the graph `{v + Tv : v ∈ U0^⊥}`.
///
/// `t` is a `dim U0 x dim U0^⊥` matrix taking coordinates in the canonical
/// basis of `U0^⊥` to coordinates in the canonical basis of `U0`. The
/// projection is assembled blockwise in the decomposition `U0^⊥ ⊕ U0`:
///
/// ```text
/// [ (1+T*T)⁻¹    T*(1+TT*)⁻¹  ]
/// [ T(1+T*T)⁻¹   TT*(1+TT*)⁻¹ ]
/// ```
///
/// with adjoints taken for the Gram matrices of the two bases.
pub fn graph_projection<S: Scalar>(t: &Matrix<S>, u0: &Subspace<S>) -> Result<Matrix<S>> {
    let perp = u0.orthogonal_complement();
    let (d0, d1) = (u0.dim(), perp.dim());
    if t.rows() != d0 {
        return Err(Error::DimensionMismatch {
            expected: d0,
            found: t.rows(),
        });
    }
    if t.cols() != d1 {
        return Err(Error::DimensionMismatch {
            expected: d1,
            found: t.cols(),
        });
    }
    let q0 = u0.basis_matrix();
    let q1 = perp.basis_matrix();
    let g0 = q0.transpose().mul(&q0);
    let g1 = q1.transpose().mul(&q1);
    let g1_inv = g1.inverse().expect("Gram matrix of a basis");
    let t_adj = g1_inv.mul(&t.transpose()).mul(&g0);

    let a = Matrix::identity(d1)
        .add(&t_adj.mul(t))
        .inverse()
        .expect("1 + T*T is positive definite");
    let d_inv = Matrix::identity(d0)
        .add(&t.mul(&t_adj))
        .inverse()
        .expect("1 + TT* is positive definite");
    let top_right = t_adj.mul(&d_inv);
    let bottom_left = t.mul(&a);
    let bottom_right = t.mul(&t_adj).mul(&d_inv);

    let n = d0 + d1;
    let blocks = Matrix::from_fn(n, n, |i, j| match (i < d1, j < d1) {
        (true, true) => a[(i, j)].clone(),
        (true, false) => top_right[(i, j - d1)].clone(),
        (false, true) => bottom_left[(i - d1, j)].clone(),
        (false, false) => bottom_right[(i - d1, j - d1)].clone(),
    });
    let frame = q1.hstack(&q0);
    let frame_inv = frame.inverse().expect("U0^⊥ and U0 bases form a basis");
    Ok(frame.mul(&blocks).mul(&frame_inv))
}

/// Kernel of a square matrix as a subspace.
pub fn kernel<S: Scalar>(a: &Matrix<S>) -> Subspace<S> {
    Subspace::span(a.cols(), &a.nullspace()).expect("kernel vectors have the column dimension")
}

/// Range (column space) of a matrix.
pub fn range<S: Scalar>(a: &Matrix<S>) -> Subspace<S> {
    Subspace::column_space(a)
}

/// Graph subspace `{v + Tv : v ∈ U0^⊥}` in the coordinates used by [`graph_projection`].
pub fn graph_subspace<S: Scalar>(t: &Matrix<S>, u0: &Subspace<S>) -> Result<Subspace<S>> {
    let perp = u0.orthogonal_complement();
    if t.rows() != u0.dim() || t.cols() != perp.dim() {
        return Err(Error::DimensionMismatch {
            expected: u0.dim(),
            found: t.rows(),
        });
    }
    let q0 = u0.basis_matrix();
    let vs: Vec<Vector<S>> = perp
        .basis()
        .iter()
        .enumerate()
        .map(|(k, v)| v + &q0.mul_vec(&t.column(k)))
        .collect();
    Subspace::span(u0.ambient_dim(), &vs)
}
