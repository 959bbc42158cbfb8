use thiserror::Error;

/// Errors raised by the library.
///
/// Basis and table indices carried by variants are 1-based, matching the
/// user-facing file formats.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range 1..={dim}")]
    BadIndex { index: usize, dim: usize },

    #[error("bracket entry [{i},{j}] must satisfy i > j")]
    InvalidEntry { i: usize, j: usize },

    #[error("duplicate bracket entry [{i},{j}]")]
    DuplicateEntry { i: usize, j: usize },

    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },

    #[error("Jacobi identity fails on basis triple (X{i}, X{j}, X{k})")]
    JacobiViolation { i: usize, j: usize, k: usize },

    #[error("not nilpotent: (ad X{basis_index})^{power} is nonzero")]
    NotNilpotent { basis_index: usize, power: usize },

    #[error("not nilpotent: lower central series stabilizes at dimension {dim}")]
    LowerCentralSeriesStalls { dim: usize },

    #[error("vectors do not form a basis")]
    SingularBasis,

    #[error("subspaces are not transversal (dims {dim_a} + {dim_b}, ambient {ambient})")]
    NotTransversal {
        dim_a: usize,
        dim_b: usize,
        ambient: usize,
    },

    #[error("subspace lies in the cell {found:?}, not {expected:?}")]
    WrongJumpSet {
        expected: Vec<usize>,
        found: Vec<usize>,
    },

    #[error("basis is not a Jordan-Hölder basis")]
    NotJordanHolder,

    #[error("flag is not a Jordan-Hölder sequence of the algebra")]
    NotJordanHolderFlag,

    #[error("subspace is not a subalgebra")]
    NotASubalgebra,

    #[error("factorization check failed: {0}")]
    FactorizationCheck(String),

    #[error("jump set changes along the family at theta = {theta}: {expected:?} -> {found:?}")]
    CellBoundaryCrossed {
        theta: f64,
        expected: Vec<usize>,
        found: Vec<usize>,
    },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for malformed input, false for a violated mathematical condition.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. }
                | Error::BadIndex { .. }
                | Error::InvalidEntry { .. }
                | Error::DuplicateEntry { .. }
                | Error::DimensionTooLarge { .. }
                | Error::BadParameter(_)
                | Error::Parse(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
