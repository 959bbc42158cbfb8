//! Baker-Campbell-Hausdorff group law on a nilpotent Lie algebra.
//!
//! `X·Y = Σ_n C_n(X, Y)` where `C_n` sums, over all tuples
//! `(p_1, q_1, ..., p_k, q_k)` with `p_i + q_i > 0` and total `n`,
//! the coefficient `(-1)^(k-1) / (k · n · Π p_i! q_i!)` times the
//! right-nested bracket word `ad_X^p1 ad_Y^q1 ... ` ending in `X` or `Y`.
//!
//! Each tuple determines a word in the two letters `X`, `Y`. The coefficient
//! of each word is computed once per length by enumerating the tuples and
//! cached; evaluation walks words from the right so that shared suffixes are
//! bracketed once, and stops as soon as a suffix vanishes.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::Vector;
use crate::scalar::{factorial, rational_from_u128, Rational, Scalar};

/// Longest word whose coefficient table can be built (bit masks are `u32`
/// and the common denominator must fit in `i128`).
const MAX_WORD_LEN: usize = 20;

type WordTable = Arc<Vec<Rational>>;

fn tables() -> &'static Mutex<HashMap<usize, WordTable>> {
    static TABLES: OnceLock<Mutex<HashMap<usize, WordTable>>> = OnceLock::new();
    TABLES.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficient of every word of length `n`, indexed by a bit mask in which
/// bit `r` is set when the letter `r` places from the right end is `Y`.
pub fn word_coefficients(n: usize) -> WordTable {
    assert!((1..=MAX_WORD_LEN).contains(&n), "word length out of range");
    let mut guard = tables().lock().expect("word table cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(enumerate_word_coefficients(n)))
        .clone()
}

fn enumerate_word_coefficients(n: usize) -> Vec<Rational> {
    // Every term denominator k·n·Π p_i!q_i! divides n·lcm(1..n)·n!.
    let lcm = (1..=n as u128).fold(1u128, |a, b| a.lcm(&b));
    let common = n as u128 * lcm * factorial(n);
    let mut acc = vec![0i128; 1 << n];
    let mut walk = TupleWalk {
        n,
        common,
        acc: &mut acc,
    };
    walk.extend(0, 0, 0, 1);
    acc.into_iter()
        .map(|num| rational_from_u128(num, common))
        .collect()
}

struct TupleWalk<'a> {
    n: usize,
    common: u128,
    acc: &'a mut [i128],
}

impl TupleWalk<'_> {
    /// Appends one more block `X^p Y^q` after `pos` letters and `k` blocks.
    fn extend(&mut self, pos: usize, mask: u32, k: usize, fact: u128) {
        let rest = self.n - pos;
        for p in 0..=rest {
            for q in 0..=rest - p {
                if p + q == 0 {
                    continue;
                }
                let mut m = mask;
                for t in pos + p..pos + p + q {
                    m |= 1 << (self.n - 1 - t);
                }
                let f = fact * factorial(p) * factorial(q);
                let end = pos + p + q;
                if end == self.n {
                    let blocks = k + 1;
                    let term = (self.common / (blocks as u128 * self.n as u128 * f)) as i128;
                    if blocks % 2 == 1 {
                        self.acc[m as usize] += term;
                    } else {
                        self.acc[m as usize] -= term;
                    }
                } else {
                    self.extend(end, m, k + 1, f);
                }
            }
        }
    }
}

/// Number of series terms needed: `C_n` vanishes once `n` exceeds the
/// nilpotency class, and for `n >= max(dim, 2)`.
pub fn truncation_order<S: Scalar>(alg: &LieAlgebra<S>) -> usize {
    alg.nilpotency_class().min(alg.dim() - 1).max(1)
}

/// `C_min ..= C_max`, returned as a vector indexed by `n - 1` (lower entries zero).
fn series<S: Scalar>(
    alg: &LieAlgebra<S>,
    x: &Vector<S>,
    y: &Vector<S>,
    min_len: usize,
    max_len: usize,
) -> Vec<Vector<S>> {
    let mut out = vec![alg.zero(); max_len];
    if max_len == 0 {
        return out;
    }
    let tables: Vec<Option<WordTable>> = (1..=max_len)
        .map(|n| (n >= min_len).then(|| word_coefficients(n)))
        .collect();
    let ad = [alg.ad_unchecked(x), alg.ad_unchecked(y)];
    let mut stack: Vec<(usize, u32, Vector<S>)> = Vec::new();
    for (letter, v) in [x, y].into_iter().enumerate() {
        if !v.is_zero() {
            stack.push((1, letter as u32, v.clone()));
        }
    }
    while let Some((len, mask, value)) = stack.pop() {
        if let Some(table) = &tables[len - 1] {
            let c = &table[mask as usize];
            if !num_traits::Zero::is_zero(c) {
                out[len - 1].axpy(&S::from_rational(c), &value);
            }
        }
        if len < max_len {
            for (letter, ad_letter) in ad.iter().enumerate() {
                let next = ad_letter.mul_vec(&value);
                if !next.is_zero() {
                    stack.push((len + 1, mask | (letter as u32) << len, next));
                }
            }
        }
    }
    out
}

/// `C_n(x, y)`; zero without evaluation once `n >= max(dim, 2)` or `n`
/// exceeds the nilpotency class.
pub fn bch_term<S: Scalar>(
    alg: &LieAlgebra<S>,
    n: usize,
    x: &Vector<S>,
    y: &Vector<S>,
) -> Result<Vector<S>> {
    alg.check_vector(x)?;
    alg.check_vector(y)?;
    if n == 0 {
        return Err(Error::BadParameter("BCH term index starts at 1".into()));
    }
    if n >= 2 && (n >= alg.dim() || n > alg.nilpotency_class()) {
        return Ok(alg.zero());
    }
    Ok(series(alg, x, y, n, n).pop().expect("n >= 1"))
}

/// `C_n(x, y)` evaluated from the full word expansion, with no truncation shortcut.
pub fn bch_term_untruncated<S: Scalar>(
    alg: &LieAlgebra<S>,
    n: usize,
    x: &Vector<S>,
    y: &Vector<S>,
) -> Result<Vector<S>> {
    alg.check_vector(x)?;
    alg.check_vector(y)?;
    if n == 0 || n > MAX_WORD_LEN {
        return Err(Error::BadParameter(format!(
            "BCH term index must lie in 1..={MAX_WORD_LEN}"
        )));
    }
    Ok(series(alg, x, y, n, n).pop().expect("n >= 1"))
}

/// The group law `x·y`.
pub fn bch_multiply<S: Scalar>(
    alg: &LieAlgebra<S>,
    x: &Vector<S>,
    y: &Vector<S>,
) -> Result<Vector<S>> {
    alg.check_vector(x)?;
    alg.check_vector(y)?;
    Ok(bch_unchecked(alg, x, y))
}

pub(crate) fn bch_unchecked<S: Scalar>(
    alg: &LieAlgebra<S>,
    x: &Vector<S>,
    y: &Vector<S>,
) -> Vector<S> {
    let terms = series(alg, x, y, 1, truncation_order(alg));
    let mut sum = alg.zero();
    for t in &terms {
        sum.axpy(&S::one(), t);
    }
    sum
}

/// Left-to-right product `f_1 · f_2 · ... · f_k`; the empty product is `0`.
pub fn bch_product<S: Scalar>(alg: &LieAlgebra<S>, factors: &[Vector<S>]) -> Result<Vector<S>> {
    let mut acc = alg.zero();
    for f in factors {
        acc = bch_multiply(alg, &acc, f)?;
    }
    Ok(acc)
}

/// Group inverse: `x·(-x) = 0` because `(tX)·(sX) = (t+s)X`.
pub fn bch_inverse<S: Scalar>(x: &Vector<S>) -> Vector<S> {
    -x
}

/// Central-difference estimate of `∂²/∂t∂s (tX)·(sY)·(-tX)` at `t = s = 0`,
/// which recovers `[X, Y]` with `O(h²)` error.
pub fn derived_bracket_probe(
    alg: &LieAlgebra<f64>,
    x: &Vector<f64>,
    y: &Vector<f64>,
    h: f64,
) -> Result<Vector<f64>> {
    alg.check_vector(x)?;
    alg.check_vector(y)?;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::BadParameter(format!(
            "step must be positive, got {h}"
        )));
    }
    let conj = |t: f64, s: f64| {
        let tx = x.scale(&t);
        let inner = bch_unchecked(alg, &tx, &y.scale(&s));
        bch_unchecked(alg, &inner, &tx.scale(&-1.0))
    };
    let pp = conj(h, h);
    let pm = conj(h, -h);
    let mp = conj(-h, h);
    let mm = conj(-h, -h);
    let mixed = &(&pp - &pm) - &(&mp - &mm);
    Ok(mixed.scale(&(1.0 / (4.0 * h * h))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn length_one_and_two_coefficients() {
        let t1 = word_coefficients(1);
        assert_eq!(t1[0], q(1, 1)); // X
        assert_eq!(t1[1], q(1, 1)); // Y
        let t2 = word_coefficients(2);
        // masks: XX = 0b00, XY = 0b01, YX = 0b10, YY = 0b11
        assert_eq!(t2[0b00], q(0, 1));
        assert_eq!(t2[0b01], q(1, 4));
        assert_eq!(t2[0b10], q(-1, 4));
        assert_eq!(t2[0b11], q(0, 1));
    }

    #[test]
    fn coefficient_tables_are_cached() {
        let a = word_coefficients(4);
        let b = word_coefficients(4);
        assert!(Arc::ptr_eq(&a, &b));
    }
}
