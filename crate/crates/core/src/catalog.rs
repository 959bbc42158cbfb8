//! Built-in example algebras and the `𝔥_z` subalgebra family.

use crate::error::{Error, Result};
use crate::grassmann::{jump_indices, Flag, JumpSet};
use crate::lie::{BracketEntry, LieAlgebra};
use crate::linalg::{Subspace, Vector};
use crate::scalar::{Rational, Scalar};

/// Point `cos θ + i sin θ` on the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct CirclePoint<S> {
    pub cos: S,
    pub sin: S,
}

impl<S: Scalar> CirclePoint<S> {
    pub fn one() -> Self {
        CirclePoint {
            cos: S::one(),
            sin: S::zero(),
        }
    }

    /// `((1 - u²)/(1 + u²), 2u/(1 + u²))`, exact on the rational backend.
    pub fn from_tan_half(u: &Rational) -> Self {
        let one = Rational::from_i64(1);
        let d = &one + u * u;
        let c = (&one - u * u) / &d;
        let s = (u + u) / &d;
        CirclePoint {
            cos: S::from_rational(&c),
            sin: S::from_rational(&s),
        }
    }

    pub fn is_one(&self) -> bool {
        (self.cos.clone() - S::one()).is_negligible(1.0) && self.sin.is_negligible(1.0)
    }

    pub fn to_f64(&self) -> CirclePoint<f64> {
        CirclePoint {
            cos: self.cos.to_f64(),
            sin: self.sin.to_f64(),
        }
    }
}

impl CirclePoint<f64> {
    pub fn from_angle(theta: f64) -> Self {
        CirclePoint {
            cos: theta.cos(),
            sin: theta.sin(),
        }
    }
}

/// Eight exact circle points, `z = 1` first, none equal to `-1`.
pub fn sample_circle_points<S: Scalar>() -> Vec<CirclePoint<S>> {
    [
        (0, 1),
        (1, 3),
        (1, 1),
        (2, 1),
        (-1, 2),
        (-3, 1),
        (5, 7),
        (-7, 4),
    ]
    .iter()
    .map(|&(p, q)| CirclePoint::from_tan_half(&Rational::new(p.into(), q.into())))
    .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Abelian,
    Threadlike,
    FiveDim,
    Custom,
}

/// An algebra together with its default flag.
#[derive(Debug, Clone)]
pub struct CatalogEntry<S> {
    pub algebra: LieAlgebra<S>,
    pub flag: Flag<S>,
    pub family: Family,
}

/// Outcome of evaluating one recorded fact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactOutcome {
    pub description: String,
    pub holds: bool,
}

fn unit<S: Scalar>(m: usize, k: usize) -> Vector<S> {
    Vector::unit(m, k - 1)
}

fn entry<S: Scalar>(m: usize, i: usize, j: usize, k: usize) -> BracketEntry<S> {
    BracketEntry::new(i, j, unit(m, k))
}

pub fn abelian<S: Scalar>(n: usize) -> Result<LieAlgebra<S>> {
    Ok(LieAlgebra::new(n, &[])?.named(format!("abelian-{n}")))
}

/// `[X_m, X_j] = X_{j-1}` for `2 ≤ j ≤ m - 1`, all other brackets zero.
pub fn threadlike<S: Scalar>(m: usize) -> Result<CatalogEntry<S>> {
    if m < 3 {
        return Err(Error::BadParameter(format!(
            "threadlike algebra needs m >= 3, got {m}"
        )));
    }
    let entries: Vec<_> = (2..m).map(|j| entry(m, m, j, j - 1)).collect();
    let name = if m == 3 {
        "heisenberg".to_string()
    } else {
        format!("threadlike-{m}")
    };
    let algebra = LieAlgebra::new(m, &entries)?.named(name);
    Ok(CatalogEntry::with_family(algebra, Family::Threadlike))
}

pub fn heisenberg<S: Scalar>() -> CatalogEntry<S> {
    threadlike(3).expect("m = 3 is valid")
}

/// `[X_5, X_4] = X_3`, `[X_5, X_3] = X_2`, `[X_4, X_3] = X_1`.
pub fn five_dim_example<S: Scalar>() -> CatalogEntry<S> {
    let entries = [entry(5, 5, 4, 3), entry(5, 5, 3, 2), entry(5, 4, 3, 1)];
    let algebra = LieAlgebra::new(5, &entries)
        .expect("valid structure constants")
        .named("five-dim");
    CatalogEntry::with_family(algebra, Family::FiveDim)
}

/// Names accepted by [`by_name`].
pub fn names() -> Vec<&'static str> {
    vec!["abelian-N", "heisenberg", "threadlike-M", "five-dim"]
}

pub fn by_name<S: Scalar>(name: &str) -> Result<CatalogEntry<S>> {
    let numeric = |rest: &str| {
        rest.parse::<usize>()
            .map_err(|_| Error::BadParameter(format!("bad catalog name {name:?}")))
    };
    if name == "heisenberg" {
        Ok(heisenberg())
    } else if name == "five-dim" {
        Ok(five_dim_example())
    } else if let Some(rest) = name.strip_prefix("abelian-") {
        let n = numeric(rest)?;
        Ok(CatalogEntry::with_family(abelian(n)?, Family::Abelian))
    } else if let Some(rest) = name.strip_prefix("threadlike-") {
        threadlike(numeric(rest)?)
    } else {
        Err(Error::BadParameter(format!(
            "unknown catalog entry {name:?}"
        )))
    }
}

impl<S: Scalar> CatalogEntry<S> {
    /// Entry with the coordinate flag.
    pub fn from_algebra(algebra: LieAlgebra<S>) -> Self {
        Self::with_family(algebra, Family::Custom)
    }

    fn with_family(algebra: LieAlgebra<S>, family: Family) -> Self {
        let flag = Flag::standard(algebra.dim());
        CatalogEntry {
            algebra,
            flag,
            family,
        }
    }

    pub fn name(&self) -> &str {
        self.algebra.name().unwrap_or("custom")
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `𝔥_z = span(F_{m-2} ∪ {cos θ X_{m-1} + sin θ X_m})`.
    pub fn hz_subalgebra(&self, z: &CirclePoint<S>) -> Result<Subspace<S>> {
        let m = self.dim();
        if m < 2 || self.algebra.derived_algebra() != self.flag.subspace(m - 2) {
            return Err(Error::BadParameter(format!(
                "{} does not have [g,g] = F_(m-2) of codimension 2",
                self.name()
            )));
        }
        let mut vs: Vec<Vector<S>> = self.flag.vectors()[..m - 2].to_vec();
        let mut top = self.flag.vector(m - 1).scale(&z.cos);
        top.axpy(&z.sin, self.flag.vector(m));
        vs.push(top);
        let h = Subspace::span(m, &vs)?;
        if !self.algebra.is_subalgebra(&h)? {
            return Err(Error::NotASubalgebra);
        }
        Ok(h)
    }

    /// Center, derived algebra and `𝔥_z` facts recorded for this entry,
    /// evaluated at the given circle points.
    pub fn check_facts(&self, points: &[CirclePoint<S>]) -> Result<Vec<FactOutcome>> {
        let m = self.dim();
        let alg = &self.algebra;
        let f = |k: usize| self.flag.subspace(k);
        let mut out = Vec::new();
        let mut push =
            |description: String, holds: bool| out.push(FactOutcome { description, holds });
        match self.family {
            Family::Abelian => {
                push("center = g".into(), alg.center() == f(m));
                push("[g,g] = 0".into(), alg.derived_algebra() == f(0));
            }
            Family::Threadlike => {
                push("center = F_1".into(), alg.center() == f(1));
                push("[g,g] = F_(m-2)".into(), alg.derived_algebra() == f(m - 2));
            }
            Family::FiveDim => {
                push("center = F_2".into(), alg.center() == f(2));
                push("[g,g] = F_3".into(), alg.derived_algebra() == f(3));
            }
            Family::Custom => {}
        }
        if matches!(self.family, Family::Threadlike | Family::FiveDim) {
            let mut derived_dims = Vec::new();
            for z in points {
                let at = format!("z = ({}, {})", z.cos, z.sin);
                let h = self.hz_subalgebra(z)?;
                let expected_jump = if z.is_one() { m } else { m - 1 };
                let jump = jump_indices(&self.flag, &h)?;
                push(
                    format!("jump(h_z) = {{{expected_jump}}} at {at}"),
                    jump == JumpSet::new(m, vec![expected_jump])?,
                );
                let derived = alg.derived_subalgebra(&h)?;
                derived_dims.push(derived.dim());
                let expected = match self.family {
                    Family::Threadlike if z.is_one() => f(0),
                    Family::Threadlike => f(m - 3),
                    _ => {
                        let mut x = unit::<S>(m, 1).scale(&z.cos);
                        x.axpy(&z.sin, &unit(m, 2));
                        Subspace::span(m, &[x])?
                    }
                };
                push(format!("[h_z, h_z] at {at}"), derived == expected);
            }
            if self.family == Family::FiveDim {
                push(
                    "dim [h_z, h_z] independent of z".into(),
                    derived_dims.windows(2).all(|w| w[0] == w[1]),
                );
            }
        }
        Ok(out)
    }

    pub fn to_f64(&self) -> CatalogEntry<f64> {
        CatalogEntry {
            algebra: self.algebra.to_f64(),
            flag: self.flag.to_f64(),
            family: self.family,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Rational;

    #[test]
    fn threadlike_relations() {
        let t = threadlike::<Q>(4).unwrap();
        let x = |k| unit::<Q>(4, k);
        let alg = &t.algebra;
        assert_eq!(alg.bracket(&x(4), &x(3)).unwrap(), x(2));
        assert_eq!(alg.bracket(&x(4), &x(2)).unwrap(), x(1));
        assert!(alg.bracket(&x(3), &x(2)).unwrap().is_zero());
        assert_eq!(alg.nilpotency_class(), 3);
        assert!(matches!(threadlike::<Q>(2), Err(Error::BadParameter(_))));
    }

    #[test]
    fn heisenberg_is_threadlike_three() {
        let h = heisenberg::<Q>();
        let x = |k| unit::<Q>(3, k);
        assert_eq!(h.algebra.bracket(&x(3), &x(2)).unwrap(), x(1));
        assert_eq!(h.name(), "heisenberg");
    }

    #[test]
    fn circle_points_are_exact() {
        for z in sample_circle_points::<Q>() {
            let norm = &z.cos * &z.cos + &z.sin * &z.sin;
            assert_eq!(norm, Q::from_i64(1));
            assert!(z.cos != Q::from_i64(-1));
        }
        assert!(sample_circle_points::<Q>()[0].is_one());
    }

    #[test]
    fn hz_at_one_is_the_hyperplane() {
        let t = threadlike::<Q>(5).unwrap();
        assert_eq!(
            t.hz_subalgebra(&CirclePoint::one()).unwrap(),
            t.flag.subspace(4)
        );
    }

    #[test]
    fn hz_requires_codimension_two_derived_algebra() {
        let a = CatalogEntry::from_algebra(abelian::<Q>(3).unwrap());
        assert!(matches!(
            a.hz_subalgebra(&CirclePoint::one()),
            Err(Error::BadParameter(_))
        ));
    }

    #[test]
    fn lookup() {
        assert_eq!(by_name::<Q>("threadlike-6").unwrap().dim(), 6);
        assert_eq!(by_name::<Q>("abelian-2").unwrap().dim(), 2);
        assert_eq!(by_name::<Q>("five-dim").unwrap().dim(), 5);
        assert!(by_name::<Q>("threadlike-x").is_err());
        assert!(by_name::<Q>("sl2").is_err());
    }
}
