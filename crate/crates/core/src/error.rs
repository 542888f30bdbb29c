use thiserror::Error;

/// Errors produced by the exact linear algebra and the sl_n layers above it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{op}: expected a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("{op}: dimension mismatch, expected {expected} but found {found}")]
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },

    /// Inversion of a matrix whose determinant is 0.
    #[error("{op}: matrix is singular (determinant 0)")]
    Singular { op: &'static str },

    #[error("matrix has nonzero trace {trace}; not an element of sl_n")]
    NonzeroTrace { trace: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
