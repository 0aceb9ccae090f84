use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("order cap exceeded: {what} (limit {limit})")]
    CapExceeded { what: String, limit: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("action is not a homomorphism into Aut(N): {0}")]
    NotAnAction(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("search budget exhausted: {0}")]
    BudgetExceeded(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("matrix assignment is not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("matrix is not invertible over F_{0}")]
    NotInvertible(u32),
    #[error("module is not irreducible")]
    NotIrreducible,
    #[error("module is not faithful")]
    NotFaithful,
    #[error("shape mismatch at step {step}: {detail}")]
    ShapeMismatch { step: String, detail: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("group invariant violated: {0}")]
    InvariantViolated(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for GroupError {
    fn from(e: std::io::Error) -> Self {
        GroupError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, GroupError>;

pub(crate) fn cap_exceeded(what: impl Into<String>, limit: usize) -> GroupError {
    GroupError::CapExceeded {
        what: what.into(),
        limit,
    }
}
