//! Error type shared across the crate.
//!
//! Exit-code mapping for the CLI lives in `main.rs`: parse/validation
//! failures exit 1, hypothesis failures exit 2, and internal invariant
//! violations (a cross-check that a theorem guarantees coming out false,
//! i.e. a bug) exit 3.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("cochain complex does not compose to zero: {0}")]
    ComplexNotExact(String),

    #[error("missing path-system data: {0}")]
    PathMissing(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("cochains are not cohomologous: {0}")]
    NotCohomologous(String),

    #[error("lift invariant violated (internal): {0}")]
    LiftInvariantViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
