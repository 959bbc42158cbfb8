use std::io::Write;
use std::process::ExitCode;

use nilproj::io::format_scalar;
use nilproj::{Backend, Error, Scalar, Vector};
use serde_json::{json, Value};

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

/// Rational strings on the exact backend, JSON numbers on the float one.
pub fn scalar<S: Scalar>(x: &S) -> Value {
    match S::BACKEND {
        Backend::Exact => json!(format_scalar(x)),
        Backend::Float => json!(x.to_f64()),
    }
}

pub fn scalars<S: Scalar>(xs: &[S]) -> Value {
    Value::Array(xs.iter().map(scalar).collect())
}

pub fn vector<S: Scalar>(v: &Vector<S>) -> Value {
    scalars(v.as_slice())
}

pub fn vectors<S: Scalar>(vs: &[Vector<S>]) -> Value {
    Value::Array(vs.iter().map(vector).collect())
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::BadIndex { .. } => "bad_index",
        Error::InvalidEntry { .. } => "invalid_entry",
        Error::DuplicateEntry { .. } => "duplicate_entry",
        Error::DimensionTooLarge { .. } => "dimension_too_large",
        Error::JacobiViolation { .. } => "jacobi_violation",
        Error::NotNilpotent { .. } => "not_nilpotent",
        Error::LowerCentralSeriesStalls { .. } => "lower_central_series_stalls",
        Error::SingularBasis => "singular_basis",
        Error::NotTransversal { .. } => "not_transversal",
        Error::WrongJumpSet { .. } => "wrong_jump_set",
        Error::NotJordanHolder => "not_jordan_holder",
        Error::NotJordanHolderFlag => "not_jordan_holder_flag",
        Error::NotASubalgebra => "not_a_subalgebra",
        Error::FactorizationCheck(_) => "factorization_check",
        Error::CellBoundaryCrossed { .. } => "cell_boundary_crossed",
        Error::BadParameter(_) => "bad_parameter",
        Error::Parse(_) => "parse",
    }
}

/// Prints the error as JSON on stdout and a diagnostic on stderr.
pub fn fail(e: CliError) -> ExitCode {
    let (kind, message, code) = match &e {
        CliError::Lib(err) => (
            kind(err),
            err.to_string(),
            if err.is_input_error() { 2 } else { 1 },
        ),
        CliError::Io(msg) => ("io", msg.clone(), 2),
    };
    eprintln!("nilproj: {message}");
    let valid = code == 1 && matches!(kind, "jacobi_violation" | "not_nilpotent");
    let mut out = json!({ "error": kind, "message": message });
    if valid {
        out["valid"] = json!(false);
    }
    emit(&out);
    ExitCode::from(code)
}

/// Writes `v` to stdout; a closed pipe is not an error worth reporting.
pub fn emit(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("json values serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}
