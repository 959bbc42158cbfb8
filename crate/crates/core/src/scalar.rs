//! Scalar backends: exact rationals and IEEE doubles.
//!
//! Every computation is generic over [`Scalar`]; choosing the type parameter
//! chooses the backend, so one computation can never mix the two.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Relative threshold below which a float pivot or singular value counts as zero.
pub const FLOAT_RANK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Float,
}

pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Signed + Send + Sync + 'static
{
    const BACKEND: Backend;

    fn from_rational(r: &Rational) -> Self;
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;

    fn from_i64(n: i64) -> Self;

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// Whether `self` is zero, up to the float tolerance scaled by `scale`.
    /// Exact scalars ignore `scale`.
    fn is_negligible(&self, scale: f64) -> bool;

    fn is_exact() -> bool {
        Self::BACKEND == Backend::Exact
    }
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Exact;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).unwrap_or_else(Rational::zero)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float;

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn is_negligible(&self, scale: f64) -> bool {
        self.abs() <= FLOAT_RANK_TOL * scale
    }
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"-1.25"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Ok(Rational::from_integer(n));
    }
    // Decimal literal, read exactly: "d.ddd" with optional sign.
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = digits.split_once('.').ok_or_else(bad)?;
    if frac_part.is_empty() && int_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let all: BigInt = digits.parse().map_err(|_| bad())?;
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    Ok(Rational::new(all * BigInt::from(sign), den))
}

/// Formats an exact rational as `"p"` or `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub(crate) fn rational_from_u128(num: i128, den: u128) -> Rational {
    Rational::new(
        BigInt::from_i128(num).expect("i128 fits"),
        BigInt::from_u128(den).expect("u128 fits"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational(" -7 ").unwrap(), q(-7, 1));
        assert_eq!(parse_rational("-1.25").unwrap(), q(-5, 4));
        assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_rational("2.").unwrap(), q(2, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn rationals_are_reduced_with_positive_denominator() {
        let r = q(4, -6);
        assert_eq!(r.denom(), &BigInt::from(3));
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(format_rational(&r), "-2/3");
        assert_eq!(format_rational(&q(5, 1)), "5");
    }

    #[test]
    fn float_negligibility_is_relative() {
        assert!(1e-12_f64.is_negligible(1.0));
        assert!(!1e-12_f64.is_negligible(1e-6));
        assert!(!Rational::ratio(1, 1_000_000_000).is_negligible(1e12));
    }
}
