use thiserror::Error;

use crate::trace::OptimizationTrace;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("invalid bounds: {0}")]
    Bounds(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("toroidal wrap on zero-width range in dimension {dim}")]
    DegenerateRange { dim: usize },

    #[error("non-finite objective value in gradient stencil for component {index}")]
    Gradient { index: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: orbital index {index} outside 0..={norb}")]
    Index { line: usize, index: i64, norb: usize },

    #[error("FCIDUMP header: {0}")]
    Header(String),

    #[error("invalid mode index: {0}")]
    Mode(String),

    #[error("Pauli algebra left an imaginary coefficient of {0:e}")]
    Algebra(f64),

    #[error("expectation value has an imaginary part of {0:e}")]
    Hermiticity(f64),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("objective failed: {message}")]
    Objective {
        message: String,
        trace: Box<OptimizationTrace>,
    },

    #[error("macro-iteration loop aborted after {failures} consecutive failures: {last}")]
    MacroAborted {
        failures: usize,
        last: String,
        trace: Box<OptimizationTrace>,
    },
}
