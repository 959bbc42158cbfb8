//! Complete flags, jump indices, Schubert cells and the adapted basis β.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{
    is_transversal, oblique_projection_direct, oblique_projection_mp_in_metric, Matrix, Subspace,
    Vector,
};
use crate::scalar::Scalar;

/// A complete flag `F_k = span{X_1, ..., X_k}` given by an ordered basis.
#[derive(Debug, Clone)]
pub struct Flag<S> {
    vectors: Vec<Vector<S>>,
}

impl<S: Scalar> Flag<S> {
    pub fn new(vectors: Vec<Vector<S>>) -> Result<Self> {
        let m = vectors.len();
        Subspace::from_basis(m, &vectors)?;
        Ok(Flag { vectors })
    }

    /// Flag of the coordinate basis.
    pub fn standard(m: usize) -> Self {
        Flag {
            vectors: (0..m).map(|k| Vector::unit(m, k)).collect(),
        }
    }

    /// Flag whose `k`-th vector is the `k`-th column of `m`.
    pub fn from_matrix(m: &Matrix<S>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.rows(),
                found: m.cols(),
            });
        }
        Self::new(m.columns())
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vector<S>] {
        &self.vectors
    }

    /// `X_j` for `j` in `1..=dim`.
    pub fn vector(&self, j: usize) -> &Vector<S> {
        &self.vectors[j - 1]
    }

    /// `F_k`, for `k` in `0..=dim`.
    pub fn subspace(&self, k: usize) -> Subspace<S> {
        Subspace::span(self.dim(), &self.vectors[..k]).expect("flag vectors share the dimension")
    }

    /// `U_e = span{X_j : j ∈ e}`.
    pub fn coordinate_subspace(&self, e: &JumpSet) -> Subspace<S> {
        let vs: Vec<Vector<S>> = e.iter().map(|j| self.vector(j).clone()).collect();
        Subspace::span(self.dim(), &vs).expect("flag vectors share the dimension")
    }

    pub fn to_f64(&self) -> Flag<f64> {
        Flag {
            vectors: self.vectors.iter().map(Vector::to_f64).collect(),
        }
    }

    fn check(&self, w: &Subspace<S>) -> Result<()> {
        if w.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: w.ambient_dim(),
            });
        }
        Ok(())
    }
}

/// A subset of `{1, ..., m}`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JumpSet {
    ambient: usize,
    indices: Vec<usize>,
}

impl JumpSet {
    pub fn new(ambient: usize, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        for w in indices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::BadParameter(format!("repeated index {}", w[0])));
            }
        }
        if let Some(&bad) = indices.iter().find(|&&j| j == 0 || j > ambient) {
            return Err(Error::BadIndex {
                index: bad,
                dim: ambient,
            });
        }
        Ok(JumpSet { ambient, indices })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.indices.binary_search(&j).is_ok()
    }

    /// `∁e = {1, ..., m} \ e`.
    pub fn complement(&self) -> JumpSet {
        JumpSet {
            ambient: self.ambient,
            indices: (1..=self.ambient).filter(|j| !self.contains(*j)).collect(),
        }
    }
}

impl fmt::Display for JumpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Incrementally grown span in row-echelon form.
struct EchelonSpan<S> {
    rows: Vec<(usize, Vector<S>)>,
}

impl<S: Scalar> EchelonSpan<S> {
    fn new() -> Self {
        EchelonSpan { rows: Vec::new() }
    }

    /// Adds `v`; returns false when `v` already lies in the span.
    fn insert(&mut self, v: &Vector<S>) -> bool {
        let scale = v.max_abs();
        let mut r = v.clone();
        for (p, row) in &self.rows {
            let c = r[*p].clone();
            if !c.is_zero() {
                r.axpy(&-c, row);
            }
        }
        let pivot = if S::is_exact() {
            (0..r.dim()).find(|&k| !r[k].is_zero())
        } else {
            let best = (0..r.dim()).max_by(|&a, &b| {
                r[a].abs()
                    .partial_cmp(&r[b].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
            best.filter(|&k| !r[k].is_negligible(scale))
        };
        let Some(p) = pivot else {
            return false;
        };
        let inv = S::one() / r[p].clone();
        let r = r.scale(&inv);
        self.rows.push((p, r));
        true
    }
}

/// Jump indices `{j : X_j ∉ W + F_{j-1}}`, one incremental rank test per index.
pub fn jump_indices<S: Scalar>(flag: &Flag<S>, w: &Subspace<S>) -> Result<JumpSet> {
    flag.check(w)?;
    let mut span = EchelonSpan::new();
    for b in w.basis() {
        span.insert(&b);
    }
    let e = (1..=flag.dim())
        .filter(|&j| span.insert(flag.vector(j)))
        .collect();
    JumpSet::new(flag.dim(), e)
}

/// Jump indices as the `j` where `dim(W + F_j) > dim(W + F_{j-1})`.
pub fn jump_indices_by_sums<S: Scalar>(flag: &Flag<S>, w: &Subspace<S>) -> Result<JumpSet> {
    flag.check(w)?;
    let mut e = Vec::new();
    let mut prev = w.dim();
    for j in 1..=flag.dim() {
        let d = w.sum(&flag.subspace(j))?.dim();
        if d > prev {
            e.push(j);
        }
        prev = d;
    }
    JumpSet::new(flag.dim(), e)
}

/// Jump indices through the complement `{i : dim(W ∩ F_i) > dim(W ∩ F_{i-1})}`.
pub fn jump_indices_dual<S: Scalar>(flag: &Flag<S>, w: &Subspace<S>) -> Result<JumpSet> {
    flag.check(w)?;
    let mut complement = Vec::new();
    let mut prev = 0;
    for i in 1..=flag.dim() {
        let d = w.intersection(&flag.subspace(i))?.dim();
        if d > prev {
            complement.push(i);
        }
        prev = d;
    }
    Ok(JumpSet::new(flag.dim(), complement)?.complement())
}

/// Membership of `w` in the Schubert cell labelled by `e`.
pub fn schubert_cell_contains<S: Scalar>(
    flag: &Flag<S>,
    e: &JumpSet,
    w: &Subspace<S>,
) -> Result<bool> {
    flag.check(w)?;
    if e.ambient() != flag.dim() {
        return Err(Error::DimensionMismatch {
            expected: flag.dim(),
            found: e.ambient(),
        });
    }
    if e.len() != w.codim() {
        return Ok(false);
    }
    Ok(jump_indices(flag, w)? == *e)
}

/// Which subspaces `beta_basis` accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CellDomain {
    /// Only members of the Schubert cell labelled by `e`.
    #[default]
    Strict,
    /// Any `W` with `U_e ∔ W` equal to the whole space.
    Extended,
}

/// The family `β(W) = (Y_1, ..., Y_m)` attached to a subspace and a jump set.
#[derive(Debug, Clone)]
pub struct AdaptedBasis<S> {
    pub vectors: Vec<Vector<S>>,
    pub jump_set: JumpSet,
    pub subspace: Subspace<S>,
}

impl<S: Scalar> AdaptedBasis<S> {
    /// `(Y_i)_{i ∈ ∁e}` in increasing order of `i`.
    pub fn complement_family(&self) -> Vec<Vector<S>> {
        self.jump_set
            .complement()
            .iter()
            .map(|i| self.vectors[i - 1].clone())
            .collect()
    }

    /// `(Y_j)_{j ∈ e}` in increasing order of `j`.
    pub fn jump_family(&self) -> Vec<Vector<S>> {
        self.jump_set
            .iter()
            .map(|j| self.vectors[j - 1].clone())
            .collect()
    }
}

fn beta_domain_check<S: Scalar>(
    flag: &Flag<S>,
    e: &JumpSet,
    w: &Subspace<S>,
    domain: CellDomain,
) -> Result<Subspace<S>> {
    flag.check(w)?;
    if e.ambient() != flag.dim() {
        return Err(Error::DimensionMismatch {
            expected: flag.dim(),
            found: e.ambient(),
        });
    }
    let u_e = flag.coordinate_subspace(e);
    if !is_transversal(&u_e, w)? {
        return Err(Error::NotTransversal {
            dim_a: u_e.dim(),
            dim_b: w.dim(),
            ambient: flag.dim(),
        });
    }
    if domain == CellDomain::Strict {
        let found = jump_indices(flag, w)?;
        if found != *e {
            return Err(Error::WrongJumpSet {
                expected: e.indices().to_vec(),
                found: found.indices().to_vec(),
            });
        }
    }
    Ok(u_e)
}

fn assemble_beta<S: Scalar>(
    flag: &Flag<S>,
    e: &JumpSet,
    w: &Subspace<S>,
    projection: &Matrix<S>,
) -> AdaptedBasis<S> {
    let vectors = (1..=flag.dim())
        .map(|i| {
            let x = flag.vector(i);
            if e.contains(i) {
                x.clone()
            } else {
                x - &projection.mul_vec(x)
            }
        })
        .collect();
    AdaptedBasis {
        vectors,
        jump_set: e.clone(),
        subspace: w.clone(),
    }
}

/// `Y_j = X_j` for `j ∈ e` and `Y_i = X_i - E(W) X_i` otherwise, where
/// `E(W)` projects onto `U_e` along `W` (exact direct solve).
pub fn beta_basis<S: Scalar>(
    flag: &Flag<S>,
    e: &JumpSet,
    w: &Subspace<S>,
    domain: CellDomain,
) -> Result<AdaptedBasis<S>> {
    let u_e = beta_domain_check(flag, e, w, domain)?;
    let projection = oblique_projection_direct(&u_e, w)?;
    Ok(assemble_beta(flag, e, w, &projection))
}

/// [`beta_basis`] with `E(W)` computed through the Moore-Penrose formula for
/// the inner product `<x, y> = (Lx)·(Ly)`.
pub fn beta_basis_in_metric<S: Scalar>(
    flag: &Flag<S>,
    e: &JumpSet,
    w: &Subspace<S>,
    domain: CellDomain,
    factor: &Matrix<S>,
) -> Result<AdaptedBasis<S>> {
    let u_e = beta_domain_check(flag, e, w, domain)?;
    let projection = oblique_projection_mp_in_metric(&u_e, w, factor)?;
    Ok(assemble_beta(flag, e, w, &projection))
}

/// Graph chart `χ(W) = P_U0 ∘ (P_{U0^⊥}|_W)⁻¹`, as a matrix from canonical
/// coordinates on `U0^⊥` to canonical coordinates on `U0`.
pub fn chi<S: Scalar>(u0: &Subspace<S>, w: &Subspace<S>) -> Result<Matrix<S>> {
    // For q ∈ U0^⊥ write q = u + w' with u ∈ U0, w' ∈ W; then w' = q - u is
    // the preimage of q and P_U0 w' = -u.
    let e = oblique_projection_direct(u0, w)?;
    let perp = u0.orthogonal_complement();
    let cols = perp
        .basis()
        .iter()
        .map(|q| {
            let u = e.mul_vec(q);
            let c = u0
                .coordinates(&-u)?
                .expect("oblique projection lands in U0");
            Ok(Vector::new(c))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(u0.dim(), &cols))
}

/// `χ⁻¹(T) = {v + Tv : v ∈ U0^⊥}`.
pub fn chi_inverse<S: Scalar>(u0: &Subspace<S>, t: &Matrix<S>) -> Result<Subspace<S>> {
    crate::linalg::graph_subspace(t, u0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn v(xs: &[i64]) -> Vector<Rational> {
        Vector::new(xs.iter().map(|&x| Rational::from_i64(x)).collect())
    }

    fn span(n: usize, vs: &[Vector<Rational>]) -> Subspace<Rational> {
        Subspace::span(n, vs).unwrap()
    }

    fn set(m: usize, xs: &[usize]) -> JumpSet {
        JumpSet::new(m, xs.to_vec()).unwrap()
    }

    fn all_jumps(flag: &Flag<Rational>, w: &Subspace<Rational>) -> JumpSet {
        let a = jump_indices(flag, w).unwrap();
        assert_eq!(a, jump_indices_by_sums(flag, w).unwrap());
        assert_eq!(a, jump_indices_dual(flag, w).unwrap());
        a
    }

    #[test]
    fn coordinate_subspace_jumps_at_complement() {
        let flag = Flag::<Rational>::standard(5);
        let e = set(5, &[1, 3, 4]);
        let u_e = flag.coordinate_subspace(&e);
        assert_eq!(all_jumps(&flag, &u_e), e.complement());
    }

    #[test]
    fn line_misses_its_first_flag_level() {
        // X = X_1 - 2 X_3 first appears in F_3.
        let flag = Flag::<Rational>::standard(4);
        let w = span(4, &[v(&[1, 0, -2, 0])]);
        assert_eq!(all_jumps(&flag, &w), set(4, &[1, 2, 4]));
    }

    #[test]
    fn hyperplane_jumps_once() {
        // F_2 ⊆ W, F_3 ⊄ W: jump set {3}.
        let flag = Flag::<Rational>::standard(4);
        let w = span(4, &[v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0]), v(&[0, 0, 1, 1])]);
        assert_eq!(all_jumps(&flag, &w), set(4, &[3]));
    }

    #[test]
    fn cell_membership_short_circuits_on_cardinality() {
        let flag = Flag::<Rational>::standard(3);
        let w = span(3, &[v(&[1, 0, 0])]);
        assert!(!schubert_cell_contains(&flag, &set(3, &[3]), &w).unwrap());
        assert!(schubert_cell_contains(&flag, &set(3, &[2, 3]), &w).unwrap());
    }

    #[test]
    fn jump_set_validation() {
        assert!(JumpSet::new(3, vec![0]).is_err());
        assert!(JumpSet::new(3, vec![4]).is_err());
        assert!(JumpSet::new(3, vec![2, 2]).is_err());
        let e = JumpSet::new(4, vec![3, 1]).unwrap();
        assert_eq!(e.indices(), &[1, 3]);
        assert_eq!(e.complement().indices(), &[2, 4]);
        assert_eq!(e.to_string(), "{1, 3}");
    }

    #[test]
    fn beta_in_the_plane() {
        let flag = Flag::<Rational>::standard(2);
        let e = set(2, &[1]);
        let w = span(2, &[v(&[1, 1])]);
        let beta = beta_basis(&flag, &e, &w, CellDomain::Strict).unwrap();
        assert_eq!(beta.vectors, vec![v(&[1, 0]), v(&[1, 1])]);
    }

    #[test]
    fn beta_of_coordinate_complement_is_the_flag() {
        let flag = Flag::<Rational>::standard(4);
        let e = set(4, &[2, 4]);
        let w = flag.coordinate_subspace(&e.complement());
        let beta = beta_basis(&flag, &e, &w, CellDomain::Strict).unwrap();
        assert_eq!(beta.vectors, flag.vectors());
    }

    #[test]
    fn beta_domain_errors() {
        let flag = Flag::<Rational>::standard(2);
        let w = span(2, &[v(&[1, 0])]);
        // U_{1} = W: not transversal.
        assert!(matches!(
            beta_basis(&flag, &set(2, &[1]), &w, CellDomain::Strict),
            Err(Error::NotTransversal { .. })
        ));
        // W = span{e1 + e2} is transversal to U_{2} but lies in cell {1}.
        let diag = span(2, &[v(&[1, 1])]);
        assert!(matches!(
            beta_basis(&flag, &set(2, &[2]), &diag, CellDomain::Strict),
            Err(Error::WrongJumpSet { .. })
        ));
        let ext = beta_basis(&flag, &set(2, &[2]), &diag, CellDomain::Extended).unwrap();
        assert_eq!(ext.vectors, vec![v(&[1, 1]), v(&[0, 1])]);
    }

    #[test]
    fn chi_examples() {
        let u0 = span(2, &[v(&[1, 0])]);
        let diag = span(2, &[v(&[1, 1])]);
        assert_eq!(
            chi(&u0, &diag).unwrap(),
            Matrix::from_rows(vec![vec![Rational::from_i64(1)]], 1)
        );
        assert!(chi(&u0, &u0.orthogonal_complement()).unwrap().is_zero());
        assert_eq!(chi_inverse(&u0, &chi(&u0, &diag).unwrap()).unwrap(), diag);
    }
}
