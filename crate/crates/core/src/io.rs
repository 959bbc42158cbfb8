//! JSON file formats for algebras, subspaces and flags.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::Flag;
use crate::lie::{BracketEntry, LieAlgebra, DEFAULT_MAX_DIM};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::scalar::{parse_rational, Scalar};

/// Parses `"p/q"`, `"p"` or a decimal into the backend scalar.
pub fn parse_scalar<S: Scalar>(text: &str) -> Result<S> {
    Ok(S::from_rational(&parse_rational(text)?))
}

/// `"p/q"` on the exact backend, shortest round-tripping decimal on the float one.
pub fn format_scalar<S: Scalar>(x: &S) -> String {
    x.to_string()
}

/// Comma-separated coordinates, e.g. `"1,-1/2,0"`.
pub fn parse_vector<S: Scalar>(text: &str) -> Result<Vector<S>> {
    let coords = text
        .split(',')
        .map(parse_scalar)
        .collect::<Result<Vec<S>>>()?;
    Ok(Vector::new(coords))
}

pub fn format_vector<S: Scalar>(v: &Vector<S>) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    /// Output coordinates keyed by 1-based basis index.
    pub out: BTreeMap<String, String>,
}

/// `{"dim": m, "basis": [...], "brackets": [{"i": 5, "j": 4, "out": {"3": "1"}}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketJson>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_algebra<S: Scalar>(alg: &LieAlgebra<S>) -> Self {
        let brackets = alg
            .entries()
            .into_iter()
            .map(|e| BracketJson {
                i: e.i,
                j: e.j,
                out: e
                    .value
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| ((k + 1).to_string(), format_scalar(c)))
                    .collect(),
            })
            .collect();
        AlgebraFile {
            dim: alg.dim(),
            name: alg.name().map(str::to_string),
            basis: None,
            brackets,
        }
    }

    pub fn to_algebra<S: Scalar>(&self) -> Result<LieAlgebra<S>> {
        self.to_algebra_with_cap(DEFAULT_MAX_DIM)
    }

    pub fn to_algebra_with_cap<S: Scalar>(&self, cap: usize) -> Result<LieAlgebra<S>> {
        if let Some(names) = &self.basis {
            if names.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: names.len(),
                });
            }
        }
        if self.dim > cap {
            return Err(Error::DimensionTooLarge { dim: self.dim, cap });
        }
        let entries = self
            .brackets
            .iter()
            .map(|b| {
                let mut value = Vector::zeros(self.dim);
                for (k, c) in &b.out {
                    let k: usize = k
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad basis index {k:?}")))?;
                    if k == 0 || k > self.dim {
                        return Err(Error::BadIndex {
                            index: k,
                            dim: self.dim,
                        });
                    }
                    value[k - 1] = parse_scalar(c)?;
                }
                Ok(BracketEntry::new(b.i, b.j, value))
            })
            .collect::<Result<Vec<_>>>()?;
        let alg = LieAlgebra::with_cap(self.dim, &entries, cap)?;
        Ok(match &self.name {
            Some(n) => alg.named(n.clone()),
            None => alg,
        })
    }
}

/// `{"ambient_dim": m, "columns": [["1", "0", "-1/2"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceFile {
    pub ambient_dim: usize,
    pub columns: Vec<Vec<String>>,
}

impl SubspaceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    fn vectors<S: Scalar>(&self) -> Result<Vec<Vector<S>>> {
        self.columns
            .iter()
            .map(|col| {
                if col.len() != self.ambient_dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.ambient_dim,
                        found: col.len(),
                    });
                }
                Ok(Vector::new(
                    col.iter().map(|c| parse_scalar(c)).collect::<Result<_>>()?,
                ))
            })
            .collect()
    }

    /// The span of the columns, which must be independent.
    pub fn to_subspace<S: Scalar>(&self) -> Result<Subspace<S>> {
        Subspace::from_basis(self.ambient_dim, &self.vectors()?)
    }

    /// The columns read as an ordered flag basis.
    pub fn to_flag<S: Scalar>(&self) -> Result<Flag<S>> {
        let vs = self.vectors()?;
        if vs.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: vs.len(),
            });
        }
        Flag::new(vs)
    }

    pub fn from_vectors<S: Scalar>(ambient_dim: usize, vectors: &[Vector<S>]) -> Self {
        SubspaceFile {
            ambient_dim,
            columns: vectors.iter().map(format_vector).collect(),
        }
    }

    pub fn from_subspace<S: Scalar>(w: &Subspace<S>) -> Self {
        Self::from_vectors(w.ambient_dim(), &w.basis())
    }

    pub fn from_matrix<S: Scalar>(m: &Matrix<S>) -> Self {
        Self::from_vectors(m.rows(), &m.columns())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{five_dim_example, heisenberg};
    use crate::scalar::Rational;

    #[test]
    fn heisenberg_file() {
        let text = r#"{"dim": 3, "basis": ["X1","X2","X3"], "brackets": [{"i": 3, "j": 2, "out": {"1": "1"}}]}"#;
        let alg: LieAlgebra<Rational> = AlgebraFile::from_json(text).unwrap().to_algebra().unwrap();
        assert_eq!(alg.entries(), heisenberg::<Rational>().algebra.entries());
    }

    #[test]
    fn round_trip() {
        let alg = five_dim_example::<Rational>().algebra;
        let text = AlgebraFile::from_algebra(&alg).to_json();
        let back: LieAlgebra<Rational> =
            AlgebraFile::from_json(&text).unwrap().to_algebra().unwrap();
        assert_eq!(back.entries(), alg.entries());
        assert_eq!(back.name(), Some("five-dim"));
    }

    #[test]
    fn rejects_lower_triangle_and_bad_indices() {
        let f = |t: &str| AlgebraFile::from_json(t).and_then(|f| f.to_algebra::<Rational>());
        assert!(f(r#"{"dim": 3, "brackets": [{"i": 2, "j": 3, "out": {"1": "1"}}]}"#).is_err());
        assert!(matches!(
            f(r#"{"dim": 3, "brackets": [{"i": 3, "j": 2, "out": {"4": "1"}}]}"#),
            Err(Error::BadIndex { .. })
        ));
        assert!(matches!(
            f(r#"{"dim": 3, "bogus": 1}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(f("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn subspace_file() {
        let text = r#"{"ambient_dim": 3, "columns": [["1","0","-1/2"], ["0","1","0"]]}"#;
        let w: Subspace<Rational> = SubspaceFile::from_json(text)
            .unwrap()
            .to_subspace()
            .unwrap();
        assert_eq!(w.dim(), 2);
        let back: Subspace<Rational> =
            SubspaceFile::from_json(&SubspaceFile::from_subspace(&w).to_json())
                .unwrap()
                .to_subspace()
                .unwrap();
        assert_eq!(back, w);
        let dependent = r#"{"ambient_dim": 2, "columns": [["1","1"], ["2","2"]]}"#;
        assert_eq!(
            SubspaceFile::from_json(dependent)
                .unwrap()
                .to_subspace::<Rational>(),
            Err(Error::SingularBasis)
        );
    }

    #[test]
    fn vectors_and_scalars() {
        let v: Vector<Rational> = parse_vector("1,-1/2,0.25").unwrap();
        assert_eq!(format_vector(&v), vec!["1", "-1/2", "1/4"]);
        let f: Vector<f64> = parse_vector("1,-1/2").unwrap();
        assert_eq!(format_vector(&f), vec!["1", "-0.5"]);
        assert!(parse_vector::<Rational>("1,,2").is_err());
    }
}
