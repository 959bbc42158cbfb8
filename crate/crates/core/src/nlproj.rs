//! Triangular BCH factorization and the nonlinear oblique projection.

use crate::error::{Error, Result};
use crate::grassmann::{beta_basis, jump_indices, AdaptedBasis, CellDomain, Flag, JumpSet};
use crate::lie::{bch_inverse, bch_unchecked, LieAlgebra};
use crate::linalg::{oblique_projection_direct, Matrix, Subspace, Vector};
use crate::probe::{study_samples, DifferenceStudy, Grid};
use crate::scalar::Scalar;

/// Default float tolerance for the identities checked after factorizing.
pub const FLOAT_CHECK_TOL: f64 = 1e-9;

/// Coordinates of `x` in `basis`.
pub fn coordinates_in_basis<S: Scalar>(x: &Vector<S>, basis: &[Vector<S>]) -> Result<Vec<S>> {
    if basis.len() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: basis.len(),
        });
    }
    if let Some(b) = basis.iter().find(|b| b.dim() != x.dim()) {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: b.dim(),
        });
    }
    let m = Matrix::from_columns(x.dim(), basis);
    m.solve(x)
        .map(Vector::into_inner)
        .ok_or(Error::SingularBasis)
}

/// Result of writing `Y = (Σ_{A_1} t_j Y_j) · ... · (Σ_{A_k} t_j Y_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization<S> {
    pub t: Vec<S>,
    pub factors: Vec<Vector<S>>,
}

/// Two-block factorization `Y = e_part · h_part`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationResult<S> {
    pub t: Vec<S>,
    pub e_part: Vector<S>,
    pub h_part: Vector<S>,
}

/// Ordered partition of `{1, ..., m}` into blocks of 1-based indices.
fn check_partition(m: usize, blocks: &[Vec<usize>]) -> Result<()> {
    let mut seen = vec![false; m];
    for &j in blocks.iter().flatten() {
        if j == 0 || j > m {
            return Err(Error::BadIndex { index: j, dim: m });
        }
        if std::mem::replace(&mut seen[j - 1], true) {
            return Err(Error::BadParameter(format!("index {j} in two blocks")));
        }
    }
    if let Some(k) = seen.iter().position(|s| !s) {
        return Err(Error::BadParameter(format!("index {} in no block", k + 1)));
    }
    Ok(())
}

/// Backend-aware closeness of two vectors.
fn close<S: Scalar>(a: &Vector<S>, b: &Vector<S>, tol: f64) -> bool {
    if S::is_exact() {
        a == b
    } else {
        (a - b).max_abs() <= tol * a.max_abs().max(b.max_abs()).max(1.0)
    }
}

/// Distance-like residual of `v` from `h`: zero or infinity on the exact
/// backend, largest normalized component along `h^⊥` otherwise.
pub fn membership_residual<S: Scalar>(h: &Subspace<S>, v: &Vector<S>) -> Result<f64> {
    if S::is_exact() {
        return Ok(if h.contains(v)? { 0.0 } else { f64::INFINITY });
    }
    let v = v.to_f64();
    let scale = v.max_abs().max(1.0);
    let worst = h
        .to_f64()
        .orthogonal_complement()
        .basis()
        .iter()
        .map(|n| n.dot(&v).abs() / n.dot(n).sqrt())
        .fold(0.0, f64::max);
    Ok(worst / scale)
}

/// Precomputed data for factorizing many vectors against one basis.
#[derive(Debug, Clone)]
struct Factorizer<S> {
    basis: Vec<Vector<S>>,
    inverse: Matrix<S>,
    blocks: Vec<Vec<usize>>,
    tol: f64,
}

impl<S: Scalar> Factorizer<S> {
    fn new(
        alg: &LieAlgebra<S>,
        basis: &[Vector<S>],
        blocks: &[Vec<usize>],
        tol: f64,
    ) -> Result<Self> {
        let m = alg.dim();
        if basis.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: basis.len(),
            });
        }
        for b in basis {
            alg.check_vector(b)?;
        }
        check_partition(m, blocks)?;
        let inverse = Matrix::from_columns(m, basis)
            .inverse()
            .ok_or(Error::SingularBasis)?;
        if !alg.is_jordan_holder_basis(basis)? {
            return Err(Error::NotJordanHolder);
        }
        Ok(Factorizer {
            basis: basis.to_vec(),
            inverse,
            blocks: blocks.to_vec(),
            tol,
        })
    }

    fn factors(&self, t: &[S]) -> Vec<Vector<S>> {
        self.blocks
            .iter()
            .map(|block| {
                let mut v = Vector::zeros(self.basis.len());
                for &j in block {
                    if !t[j - 1].is_zero() {
                        v.axpy(&t[j - 1], &self.basis[j - 1]);
                    }
                }
                v
            })
            .collect()
    }

    fn product(&self, alg: &LieAlgebra<S>, factors: &[Vector<S>]) -> Vector<S> {
        let mut acc = alg.zero();
        for f in factors {
            acc = bch_unchecked(alg, &acc, f);
        }
        acc
    }

    fn factorize(&self, alg: &LieAlgebra<S>, y: &Vector<S>) -> Result<Factorization<S>> {
        alg.check_vector(y)?;
        let m = self.basis.len();
        let coords = self.inverse.mul_vec(y);
        let mut t = vec![S::zero(); m];
        for j in (1..=m).rev() {
            // With t_1..t_j zero, coordinate j of Φ(t) is P_j(t_{j+1}, ..., t_m).
            let phi = self.product(alg, &self.factors(&t));
            let p_j = self.inverse.row(j - 1).dot(&phi);
            t[j - 1] = coords[j - 1].clone() - p_j;
        }
        let factors = self.factors(&t);
        let product = self.product(alg, &factors);
        if !close(&product, y, self.tol) {
            return Err(Error::FactorizationCheck(format!(
                "block product misses the input by {}",
                (&product - y).max_abs()
            )));
        }
        Ok(Factorization { t, factors })
    }
}

/// `Φ(t) = (Σ_{j∈A_1} t_j Y_j) · ... · (Σ_{j∈A_k} t_j Y_j)`.
pub fn block_product<S: Scalar>(
    alg: &LieAlgebra<S>,
    basis: &[Vector<S>],
    blocks: &[Vec<usize>],
    t: &[S],
) -> Result<Vector<S>> {
    check_partition(alg.dim(), blocks)?;
    if t.len() != alg.dim() || basis.len() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: t.len().min(basis.len()),
        });
    }
    for b in basis {
        alg.check_vector(b)?;
    }
    let factors: Vec<Vector<S>> = blocks
        .iter()
        .map(|block| {
            let coeffs: Vec<S> = block.iter().map(|&j| t[j - 1].clone()).collect();
            let vs: Vec<Vector<S>> = block.iter().map(|&j| basis[j - 1].clone()).collect();
            Vector::combination(alg.dim(), &coeffs, &vs)
        })
        .collect();
    crate::lie::bch_product(alg, &factors)
}

/// Inverts `Φ` by back-substitution from `j = m` down to `1`.
pub fn factorize<S: Scalar>(
    alg: &LieAlgebra<S>,
    basis: &[Vector<S>],
    blocks: &[Vec<usize>],
    y: &Vector<S>,
) -> Result<Factorization<S>> {
    Factorizer::new(alg, basis, blocks, FLOAT_CHECK_TOL)?.factorize(alg, y)
}

/// Factorization for the partition `{1, ..., m} = e ⊔ ∁e`.
pub fn bipartite_factorize<S: Scalar>(
    alg: &LieAlgebra<S>,
    basis: &[Vector<S>],
    e: &JumpSet,
    y: &Vector<S>,
) -> Result<FactorizationResult<S>> {
    let blocks = [e.indices().to_vec(), e.complement().indices().to_vec()];
    let f = factorize(alg, basis, &blocks, y)?;
    Ok(into_bipartite(f))
}

fn into_bipartite<S>(f: Factorization<S>) -> FactorizationResult<S> {
    let mut factors = f.factors.into_iter();
    let e_part = factors.next().expect("two blocks");
    let h_part = factors.next().expect("two blocks");
    FactorizationResult {
        t: f.t,
        e_part,
        h_part,
    }
}

/// `Π(X, 𝔥)` together with its certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct NonlinearProjection<S> {
    pub projection: Vector<S>,
    pub h_part: Vector<S>,
    pub t: Vec<S>,
    /// Residual of `(-Π)·X` from `𝔥` (see [`membership_residual`]).
    pub residual: f64,
}

/// Everything `Π(·, 𝔥)` needs, validated once.
#[derive(Debug, Clone)]
pub struct NonlinearProjector<S> {
    algebra: LieAlgebra<S>,
    subalgebra: Subspace<S>,
    target: Subspace<S>,
    beta: AdaptedBasis<S>,
    factorizer: Factorizer<S>,
}

impl<S: Scalar> NonlinearProjector<S> {
    pub fn new(alg: &LieAlgebra<S>, flag: &Flag<S>, h: &Subspace<S>) -> Result<Self> {
        Self::with_tolerance(alg, flag, h, FLOAT_CHECK_TOL)
    }

    pub fn with_tolerance(
        alg: &LieAlgebra<S>,
        flag: &Flag<S>,
        h: &Subspace<S>,
        tol: f64,
    ) -> Result<Self> {
        alg.check_subspace(h)?;
        if flag.dim() != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                found: flag.dim(),
            });
        }
        if !alg.is_subalgebra(h)? {
            return Err(Error::NotASubalgebra);
        }
        if !alg.is_jordan_holder_basis(flag.vectors())? {
            return Err(Error::NotJordanHolderFlag);
        }
        let e = jump_indices(flag, h)?;
        let beta = beta_basis(flag, &e, h, CellDomain::Strict)?;
        let blocks = [e.indices().to_vec(), e.complement().indices().to_vec()];
        let factorizer = Factorizer::new(alg, &beta.vectors, &blocks, tol)?;
        Ok(NonlinearProjector {
            algebra: alg.clone(),
            subalgebra: h.clone(),
            target: flag.coordinate_subspace(&e),
            beta,
            factorizer,
        })
    }

    pub fn jump_set(&self) -> &JumpSet {
        &self.beta.jump_set
    }

    pub fn beta(&self) -> &AdaptedBasis<S> {
        &self.beta
    }

    /// `𝔤_e = span{X_j : j ∈ e}`, the range of `Π`.
    pub fn target(&self) -> &Subspace<S> {
        &self.target
    }

    pub fn factorize(&self, x: &Vector<S>) -> Result<FactorizationResult<S>> {
        Ok(into_bipartite(self.factorizer.factorize(&self.algebra, x)?))
    }

    pub fn project(&self, x: &Vector<S>) -> Result<NonlinearProjection<S>> {
        let f = self.factorize(x)?;
        let rest = bch_unchecked(&self.algebra, &bch_inverse(&f.e_part), x);
        let residual = membership_residual(&self.subalgebra, &rest)?;
        if residual > self.factorizer.tol {
            return Err(Error::FactorizationCheck(format!(
                "(-Π)·X misses the subalgebra by {residual}"
            )));
        }
        Ok(NonlinearProjection {
            projection: f.e_part,
            h_part: f.h_part,
            t: f.t,
            residual,
        })
    }
}

/// `Π(X, 𝔥)`, the unique point of `𝔤_e` with `X ∈ Π(X, 𝔥)·𝔥`.
pub fn nonlinear_projection<S: Scalar>(
    alg: &LieAlgebra<S>,
    flag: &Flag<S>,
    h: &Subspace<S>,
    x: &Vector<S>,
) -> Result<Vector<S>> {
    Ok(NonlinearProjector::new(alg, flag, h)?
        .project(x)?
        .projection)
}

/// Whether `Π(Π(X, 𝔥), 𝔥) = Π(X, 𝔥)`.
pub fn projection_idempotence_check<S: Scalar>(
    alg: &LieAlgebra<S>,
    flag: &Flag<S>,
    h: &Subspace<S>,
    x: &Vector<S>,
) -> Result<bool> {
    let p = NonlinearProjector::new(alg, flag, h)?;
    let once = p.project(x)?.projection;
    let twice = p.project(&once)?.projection;
    Ok(close(&once, &twice, p.factorizer.tol))
}

/// The linear counterpart: projection onto `𝔤_e` along `W`, with `e` the
/// jump set of `W`.
pub fn linear_projection<S: Scalar>(
    flag: &Flag<S>,
    w: &Subspace<S>,
    x: &Vector<S>,
) -> Result<Vector<S>> {
    let e = jump_indices(flag, w)?;
    let p = oblique_projection_direct(&flag.coordinate_subspace(&e), w)?;
    if x.dim() != p.cols() {
        return Err(Error::DimensionMismatch {
            expected: p.cols(),
            found: x.dim(),
        });
    }
    Ok(p.mul_vec(x))
}

/// Outcome of [`smoothness_probe`].
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothnessReport {
    pub jump_set: JumpSet,
    pub study: DifferenceStudy,
}

/// Second divided differences of `θ ↦ Π(X, 𝔥_θ)` on `grid` and its
/// refinements, after checking that every `𝔥_θ` shares one jump set.
pub fn smoothness_probe<F>(
    alg: &LieAlgebra<f64>,
    flag: &Flag<f64>,
    mut family: F,
    x: &Vector<f64>,
    grid: &Grid,
) -> Result<SmoothnessReport>
where
    F: FnMut(f64) -> Result<Subspace<f64>>,
{
    let points = grid.points(2);
    let members = points
        .iter()
        .map(|&theta| family(theta))
        .collect::<Result<Vec<_>>>()?;
    let reference = jump_indices(flag, &members[0])?;
    for (&theta, h) in points.iter().zip(&members).skip(1) {
        let found = jump_indices(flag, h)?;
        if found != reference {
            return Err(Error::CellBoundaryCrossed {
                theta,
                expected: reference.indices().to_vec(),
                found: found.indices().to_vec(),
            });
        }
    }
    let samples = members
        .iter()
        .map(|h| {
            let p = NonlinearProjector::new(alg, flag, h)?.project(x)?;
            Ok(p.projection.into_inner())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SmoothnessReport {
        jump_set: reference,
        study: study_samples(grid, &samples)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{abelian, heisenberg, threadlike, CirclePoint};
    use crate::scalar::Rational;

    type Q = Rational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn x(m: usize, k: usize) -> Vector<Q> {
        Vector::unit(m, k - 1)
    }

    #[test]
    fn coordinates_examples() {
        let basis: Vec<_> = (1..=3).map(|k| x(3, k)).collect();
        assert_eq!(
            coordinates_in_basis(&x(3, 2), &basis).unwrap(),
            x(3, 2).into_inner()
        );
        let sum = &x(3, 2) + &x(3, 3);
        assert_eq!(
            coordinates_in_basis(&sum, &basis).unwrap(),
            vec![q(0, 1), q(1, 1), q(1, 1)]
        );
        let singular = vec![x(3, 1), x(3, 1), x(3, 3)];
        assert_eq!(
            coordinates_in_basis(&sum, &singular),
            Err(Error::SingularBasis)
        );
    }

    #[test]
    fn heisenberg_hand_factorization() {
        let h = heisenberg::<Q>();
        let e = JumpSet::new(3, vec![3]).unwrap();
        let y = &x(3, 2) + &x(3, 3);
        let f = bipartite_factorize(&h.algebra, h.flag.vectors(), &e, &y).unwrap();
        assert_eq!(f.t, vec![q(-1, 2), q(1, 1), q(1, 1)]);
        assert_eq!(f.e_part, x(3, 3));
    }

    #[test]
    fn heisenberg_projection() {
        let h = heisenberg::<Q>();
        let sub = h.flag.subspace(2);
        let xv = &x(3, 2) + &x(3, 3);
        let p = NonlinearProjector::new(&h.algebra, &h.flag, &sub).unwrap();
        let out = p.project(&xv).unwrap();
        assert_eq!(out.projection, x(3, 3));
        assert_eq!(out.residual, 0.0);
        let rest = bch_unchecked(&h.algebra, &-x(3, 3), &xv);
        assert_eq!(rest, &x(3, 2) - &x(3, 1).scale(&q(1, 2)));
        assert_eq!(p.project(&x(3, 3)).unwrap().projection, x(3, 3));
        assert!(p.project(&x(3, 1)).unwrap().projection.is_zero());
    }

    #[test]
    fn abelian_matches_linear() {
        let alg = abelian::<Q>(3).unwrap();
        let flag = Flag::standard(3);
        let w = Subspace::span(3, &[Vector::new(vec![q(1, 1), q(2, 1), q(0, 1)])]).unwrap();
        let v = Vector::new(vec![q(3, 1), q(-1, 2), q(5, 1)]);
        assert_eq!(
            nonlinear_projection(&alg, &flag, &w, &v).unwrap(),
            linear_projection(&flag, &w, &v).unwrap()
        );
    }

    #[test]
    fn rejects_non_subalgebra_and_bad_flag() {
        let h = heisenberg::<Q>();
        let w = Subspace::span(3, &[x(3, 2), x(3, 3)]).unwrap();
        assert!(matches!(
            NonlinearProjector::new(&h.algebra, &h.flag, &w),
            Err(Error::NotASubalgebra)
        ));
        let reversed = Flag::new(vec![x(3, 3), x(3, 2), x(3, 1)]).unwrap();
        assert!(matches!(
            NonlinearProjector::new(&h.algebra, &reversed, &h.flag.subspace(2)),
            Err(Error::NotJordanHolderFlag)
        ));
    }

    #[test]
    fn partition_validation() {
        let h = heisenberg::<Q>();
        let y = x(3, 1);
        let f = |blocks: &[Vec<usize>]| factorize(&h.algebra, h.flag.vectors(), blocks, &y);
        assert!(f(&[vec![1, 2], vec![2, 3]]).is_err());
        assert!(f(&[vec![1, 2]]).is_err());
        assert!(f(&[vec![1, 4], vec![2, 3]]).is_err());
        assert!(f(&[vec![3], vec![1], vec![2]]).is_ok());
    }

    #[test]
    fn constant_family_probe() {
        let t = threadlike::<f64>(4).unwrap();
        let h = t.hz_subalgebra(&CirclePoint::from_angle(0.7)).unwrap();
        let grid = Grid::new(0.0, 1.0, 4).unwrap();
        let xv = Vector::new(vec![0.3, -1.0, 2.0, 1.0]);
        let r = smoothness_probe(&t.algebra, &t.flag, |_| Ok(h.clone()), &xv, &grid).unwrap();
        assert!(r.study.max_second_difference.iter().all(|&d| d == 0.0));
        assert!(r.study.smooth);
    }

    #[test]
    fn probe_detects_cell_change() {
        let t = threadlike::<f64>(4).unwrap();
        let grid = Grid::new(-0.5, 0.5, 4).unwrap();
        let xv = Vector::unit(4, 3);
        let r = smoothness_probe(
            &t.algebra,
            &t.flag,
            |theta| t.hz_subalgebra(&CirclePoint::from_angle(theta)),
            &xv,
            &grid,
        );
        assert!(matches!(r, Err(Error::CellBoundaryCrossed { .. })));
    }
}
