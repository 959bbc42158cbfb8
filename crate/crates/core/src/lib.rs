pub mod catalog;
pub mod error;
pub mod grassmann;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod nlproj;
pub mod probe;
pub mod scalar;

pub use error::{Error, Result};
pub use lie::{BracketEntry, LieAlgebra};
pub use linalg::{Matrix, Subspace, Vector};
pub use scalar::{Backend, Rational, Scalar};
