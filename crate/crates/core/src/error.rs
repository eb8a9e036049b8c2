use thiserror::Error;

/// Errors raised by the algebraic and topological constructions.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ill-defined homomorphism: {0}")]
    IllDefined(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("complex mismatch: {0}")]
    ComplexMismatch(String),

    #[error("perturbation series did not vanish after {bound} iterations on {witness}")]
    NonNilpotent { bound: usize, witness: String },

    #[error("local finiteness violated: {0}")]
    LocalFiniteness(String),

    #[error("audit failed: {law}: {witness}")]
    Audit { law: String, witness: String },

    #[error("ill-formed simplex: {0}")]
    IllFormed(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn audit(law: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Audit { law: law.into(), witness: witness.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
