//! Nilpotent Lie algebras and their BCH group law.

mod algebra;
mod bch;

pub use algebra::{BracketEntry, LieAlgebra, DEFAULT_MAX_DIM};
pub(crate) use bch::bch_unchecked;
pub use bch::{
    bch_inverse, bch_multiply, bch_product, bch_term, bch_term_untruncated, derived_bracket_probe,
    truncation_order, word_coefficients,
};
