//! Error type shared by all modules.

use thiserror::Error;

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by the structure layer, the evaluators and the parsers.
#[derive(Debug, Error)]
pub enum Error {
    /// Unknown group name or unsupported catalog request.
    #[error("unknown catalog entry: {0}")]
    UnknownCatalog(String),

    /// Invalid argument (wrong sign, wrong dimension, contract violation).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A structural invariant failed beyond its tolerance.
    #[error("invariant violation: {0}")]
    Invariant(String),

    /// Matrix logarithm on an unsuitable spectrum.
    #[error("matrix log failed: {0}")]
    MatrixLog(String),

    /// Minimiser did not converge within the iteration budget.
    #[error("displacement minimiser did not converge: {0}")]
    NonConvergence(String),

    /// Analytic square-root tracking hit a zero of the tracked function.
    #[error("branch tracking failed: {0}")]
    BranchFailure(String),

    /// Kernel decay assumption violated at the quadrature boundary.
    #[error("kernel decay violation: {0}")]
    KernelDecay(String),

    /// Numeric contract violated (too many branch failures, non-positive
    /// Hessian eigenvalue, degenerate orbit where nondegeneracy is required).
    #[error("numeric contract violation: {0}")]
    NumericContract(String),

    /// Parse error in a config / element / ledger file.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// I/O while reading configs or writing outputs.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
