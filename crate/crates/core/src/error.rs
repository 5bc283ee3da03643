use thiserror::Error;

/// Errors raised by the algebra engine and the verification pipelines.
#[derive(Debug, Error)]
pub enum Error {
    /// Operands live in different ambient algebras (different `N` or generator order).
    #[error("structural mismatch: {0}")]
    Structural(String),
    #[error("invalid input: {0}")]
    Validation(String),
    /// An internal identity that must always hold was violated.
    #[error("internal consistency violated: {0}")]
    Consistency(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("reduction budget exceeded after {0} rewrite steps")]
    ReductionBudget(u64),
    /// A vector expected to be Whittaker is not; carries the offending m-generator.
    #[error("not a Whittaker vector: {generator} leaves residue {residue}")]
    NotWhittaker { generator: String, residue: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
