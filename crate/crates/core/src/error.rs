use alloc::string::String;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShiftError {
    #[error("unknown generator symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("operands belong to different groups or alphabets")]
    Mismatch,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = ShiftError> = core::result::Result<T, E>;
