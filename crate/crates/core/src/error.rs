//! Error type shared by the whole toolkit.

use thiserror::Error;

/// Everything that can go wrong, with enough structure for the CLI to map
/// failures onto its documented exit codes (invalid input vs. size/budget).
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("modulus mismatch: l={0} vs l={1}")]
    ModulusMismatch(u64, u64),
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("1 - g is not a unit: g = 1")]
    OneMinusIdentity,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("simplicial complex is not face-closed: missing face {missing} of {simplex}")]
    NotFaceClosed { missing: String, simplex: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("complex is not connected")]
    Disconnected,
    #[error("boundary condition failed: d_{0} . d_{1} != 0")]
    BoundaryCondition(usize, usize),
    #[error("coset budget of {budget} exceeded: group possibly infinite or too large")]
    BudgetExceeded { budget: usize },
    #[error("{what} exceeds configured cap {cap}")]
    CapExceeded { what: String, cap: usize },
    #[error("presentation mismatch: {0}")]
    PresentationMismatch(String),
    #[error("character is trivial; vanishing witness needs a nontrivial character")]
    TrivialCharacter,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("not decidable by this artifact: {0}")]
    NotDecidable(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// `true` for budget/size failures (CLI exit code 2), `false` for
    /// malformed-input failures (CLI exit code 1).
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::CapExceeded { .. } | Error::NotDecidable(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
