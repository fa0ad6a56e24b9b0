use thiserror::Error;

/// Errors raised by table construction, validation preconditions and search
/// budgets. Axiom violations are *not* errors: they are reported through
/// [`crate::algebra::ValidationReport`] so that a caller can inspect every
/// failing axiom with its witness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("unsupported builtin: {0}")]
    UnsupportedBuiltin(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("semiring mismatch: {0}")]
    SemiringMismatch(String),
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("empty set: {0}")]
    EmptySet(String),
    #[error("order bound exceeded: {0}")]
    OrderBound(String),
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
