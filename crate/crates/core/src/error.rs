use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("`{0}` is not a product symbol")]
    NotAProductSymbol(String),
    #[error("invalid token `{0}`")]
    InvalidToken(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("state `{0}` is not reactive")]
    NotReactive(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("fixpoint did not stabilise within {0} rounds")]
    FixpointDiverged(usize),

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("type error ({rule}): {message}")]
    Type { rule: &'static str, message: String },
    #[error("stuck configuration: {0}")]
    StuckConfiguration(String),
    #[error("state budget of {0} exceeded")]
    StateBudgetExceeded(usize),
    #[error("integer variable `{0}` has no declared finite range")]
    NonFiniteIntRange(String),
    #[error("value {value} out of range for `{var}`")]
    OutOfRange { var: String, value: i64 },
    #[error("program {0}")]
    NonProductive(String),
}

impl Error {
    /// Resource exhaustion, as opposed to malformed input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::StateBudgetExceeded(_))
    }

    /// Errors that can only arise from a bug in this crate.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::StuckConfiguration(_) | Error::FixpointDiverged(_))
    }
}
