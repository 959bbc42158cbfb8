use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::scalar::Scalar;

/// Default cap on the algebra dimension; BCH enumeration grows roughly like
/// `3.4^class`.
pub const DEFAULT_MAX_DIM: usize = 16;

/// One structure-constant entry `[X_i, X_j] = value`, 1-based with `i > j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketEntry<S> {
    pub i: usize,
    pub j: usize,
    pub value: Vector<S>,
}

impl<S: Scalar> BracketEntry<S> {
    pub fn new(i: usize, j: usize, value: Vector<S>) -> Self {
        BracketEntry { i, j, value }
    }
}

/// A nilpotent Lie algebra given by structure constants in a fixed basis
/// `X_1, ..., X_m`.
#[derive(Debug, Clone)]
pub struct LieAlgebra<S> {
    dim: usize,
    name: Option<String>,
    /// `(i, j) -> [X_i, X_j]` for `i > j`, 0-based, nonzero entries only.
    table: BTreeMap<(usize, usize), Vector<S>>,
    class: usize,
}

impl<S: Scalar> LieAlgebra<S> {
    /// Validates a bracket table and builds the algebra.
    ///
    /// Only entries with `i > j` are accepted; the rest of the table follows
    /// by antisymmetry. Jacobi is checked on every basis triple and
    /// nilpotency through the adjoint powers and the lower central series.
    pub fn new(dim: usize, entries: &[BracketEntry<S>]) -> Result<Self> {
        Self::with_cap(dim, entries, DEFAULT_MAX_DIM)
    }

    pub fn with_cap(dim: usize, entries: &[BracketEntry<S>], max_dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadParameter("dimension must be at least 1".into()));
        }
        if dim > max_dim {
            return Err(Error::DimensionTooLarge { dim, cap: max_dim });
        }
        let mut table = BTreeMap::new();
        for e in entries {
            for idx in [e.i, e.j] {
                if idx == 0 || idx > dim {
                    return Err(Error::BadIndex { index: idx, dim });
                }
            }
            if e.i <= e.j {
                return Err(Error::InvalidEntry { i: e.i, j: e.j });
            }
            if e.value.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: e.value.dim(),
                });
            }
            let key = (e.i - 1, e.j - 1);
            if table.contains_key(&key) {
                return Err(Error::DuplicateEntry { i: e.i, j: e.j });
            }
            table.insert(key, e.value.clone());
        }
        // Duplicates are detected before zero entries are dropped.
        table.retain(|_, v: &mut Vector<S>| !v.is_zero());

        let mut alg = LieAlgebra {
            dim,
            name: None,
            table,
            class: 0,
        };
        alg.check_jacobi()?;
        alg.check_ad_nilpotent()?;
        alg.class = alg.lower_central_series()?.len();
        Ok(alg)
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nilpotency class: the least `c` with `g^{c+1} = 0`; 0 only for the zero algebra.
    pub fn nilpotency_class(&self) -> usize {
        self.class
    }

    pub fn is_abelian(&self) -> bool {
        self.table.is_empty()
    }

    /// Nonzero structure constants `[X_i, X_j]`, 1-based with `i > j`.
    pub fn entries(&self) -> Vec<BracketEntry<S>> {
        self.table
            .iter()
            .map(|(&(i, j), v)| BracketEntry::new(i + 1, j + 1, v.clone()))
            .collect()
    }

    pub fn basis_vector(&self, k: usize) -> Vector<S> {
        Vector::unit(self.dim, k)
    }

    pub fn basis(&self) -> Vec<Vector<S>> {
        (0..self.dim).map(|k| self.basis_vector(k)).collect()
    }

    pub fn zero(&self) -> Vector<S> {
        Vector::zeros(self.dim)
    }

    pub fn check_vector(&self, v: &Vector<S>) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        Ok(())
    }

    pub fn check_subspace(&self, w: &Subspace<S>) -> Result<()> {
        if w.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: w.ambient_dim(),
            });
        }
        Ok(())
    }

    /// `[x, y]`, extended bilinearly from the structure constants.
    pub fn bracket(&self, x: &Vector<S>, y: &Vector<S>) -> Result<Vector<S>> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &Vector<S>, y: &Vector<S>) -> Vector<S> {
        let mut out = Vector::zeros(self.dim);
        for (&(i, j), c) in &self.table {
            let coef = x[i].clone() * y[j].clone() - x[j].clone() * y[i].clone();
            out.axpy(&coef, c);
        }
        out
    }

    /// Matrix of `ad x = [x, ·]`; column `j` is `[x, X_j]`.
    pub fn ad_matrix(&self, x: &Vector<S>) -> Result<Matrix<S>> {
        self.check_vector(x)?;
        Ok(self.ad_unchecked(x))
    }

    pub(crate) fn ad_unchecked(&self, x: &Vector<S>) -> Matrix<S> {
        let cols: Vec<Vector<S>> = (0..self.dim)
            .map(|j| self.bracket_unchecked(x, &self.basis_vector(j)))
            .collect();
        Matrix::from_columns(self.dim, &cols)
    }

    fn table_scale(&self) -> f64 {
        self.table.values().map(Vector::max_abs).fold(1.0, f64::max)
    }

    fn check_jacobi(&self) -> Result<()> {
        let scale = self.table_scale();
        let b = self.basis();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let bij = self.bracket_unchecked(&b[i], &b[j]);
                for k in j + 1..self.dim {
                    let bjk = self.bracket_unchecked(&b[j], &b[k]);
                    let bki = self.bracket_unchecked(&b[k], &b[i]);
                    let total = &(&self.bracket_unchecked(&bij, &b[k])
                        + &self.bracket_unchecked(&bjk, &b[i]))
                        + &self.bracket_unchecked(&bki, &b[j]);
                    if !total.is_negligible(scale * scale) {
                        return Err(Error::JacobiViolation {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_ad_nilpotent(&self) -> Result<()> {
        let scale = self.table_scale().powi(self.dim as i32);
        for k in 0..self.dim {
            let ad = self.ad_unchecked(&self.basis_vector(k));
            let mut power = ad.clone();
            for _ in 1..self.dim {
                power = power.mul(&ad);
            }
            if power.columns().iter().any(|c| !c.is_negligible(scale)) {
                return Err(Error::NotNilpotent {
                    basis_index: k + 1,
                    power: self.dim,
                });
            }
        }
        Ok(())
    }

    /// The nonzero terms `g^2 = [g, g], g^3 = [g, g^2], ...` of the lower
    /// central series, in order.
    pub fn lower_central_series(&self) -> Result<Vec<Subspace<S>>> {
        let mut series = Vec::new();
        let mut current = Subspace::full(self.dim);
        loop {
            if current.dim() == 0 {
                return Ok(series);
            }
            let next = self.bracket_span(&Subspace::full(self.dim), &current)?;
            if next.dim() == current.dim() {
                return Err(Error::LowerCentralSeriesStalls { dim: next.dim() });
            }
            series.push(current);
            current = next;
        }
    }

    /// `span{[a, b] : a ∈ A, b ∈ B}`.
    pub fn bracket_span(&self, a: &Subspace<S>, b: &Subspace<S>) -> Result<Subspace<S>> {
        self.check_subspace(a)?;
        self.check_subspace(b)?;
        let mut vs = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                vs.push(self.bracket_unchecked(&x, &y));
            }
        }
        Subspace::span(self.dim, &vs)
    }

    /// `[g, g]`.
    pub fn derived_algebra(&self) -> Subspace<S> {
        let full = Subspace::full(self.dim);
        self.bracket_span(&full, &full)
            .expect("full space has the algebra dimension")
    }

    /// `[h, h]` for a subspace `h`.
    pub fn derived_subalgebra(&self, h: &Subspace<S>) -> Result<Subspace<S>> {
        self.bracket_span(h, h)
    }

    /// `{z : [z, X_j] = 0 for all j}`.
    pub fn center(&self) -> Subspace<S> {
        // Rows of the stacked ad(X_j) act on z through [X_j, z] = -[z, X_j].
        let mut rows = Vec::new();
        for j in 0..self.dim {
            let ad = self.ad_unchecked(&self.basis_vector(j));
            for r in 0..self.dim {
                rows.push(ad.row(r).into_inner());
            }
        }
        let stacked = Matrix::from_rows(rows, self.dim);
        Subspace::span(self.dim, &stacked.nullspace()).expect("kernel lives in the algebra")
    }

    /// `[w_a, w_b] ∈ W` for all basis pairs of `W`.
    pub fn is_subalgebra(&self, w: &Subspace<S>) -> Result<bool> {
        self.check_subspace(w)?;
        let basis = w.basis();
        for (a, x) in basis.iter().enumerate() {
            for y in &basis[a + 1..] {
                if !w.contains(&self.bracket_unchecked(x, y))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Smallest subalgebra containing the given vectors.
    pub fn subalgebra_generated_by(&self, vectors: &[Vector<S>]) -> Result<Subspace<S>> {
        let mut h = Subspace::span(self.dim, vectors)?;
        loop {
            let next = h.sum(&self.bracket_span(&h, &h)?)?;
            if next.dim() == h.dim() {
                return Ok(h);
            }
            h = next;
        }
    }

    /// Whether `family` is a Jordan-Hölder basis of the subalgebra it spans:
    /// with `h_k = span(family[..k])`, one needs `[h, h_k] ⊆ h_{k-1}`.
    pub fn is_jordan_holder_family(&self, family: &[Vector<S>]) -> Result<bool> {
        for v in family {
            self.check_vector(v)?;
        }
        let h = Subspace::span(self.dim, family)?;
        if h.dim() != family.len() {
            return Err(Error::SingularBasis);
        }
        for k in 0..family.len() {
            let lower = Subspace::span(self.dim, &family[..k])?;
            for y in family {
                if !lower.contains(&self.bracket_unchecked(y, &family[k]))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Jordan-Hölder basis of the whole algebra: `[g, g_k] ⊆ g_{k-1}` for all `k`.
    pub fn is_jordan_holder_basis(&self, basis: &[Vector<S>]) -> Result<bool> {
        if basis.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: basis.len(),
            });
        }
        self.is_jordan_holder_family(basis)
    }

    /// Same algebra over the float backend.
    pub fn to_f64(&self) -> LieAlgebra<f64> {
        LieAlgebra {
            dim: self.dim,
            name: self.name.clone(),
            table: self.table.iter().map(|(k, v)| (*k, v.to_f64())).collect(),
            class: self.class,
        }
    }
}
