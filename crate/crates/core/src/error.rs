use alloc::string::String;
use core::fmt;

pub type CoreResult<T> = Result<T, CoreError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreError {
    /// A parameter or word violates the operation's input contract.
    InvalidInput(String),
    /// A position or window falls outside the word.
    OutOfRange { start: usize, len: usize, word_len: usize },
    /// A documented precondition of an audit or lemma check does not hold.
    Precondition(String),
    /// An internal structure failed its own consistency check.
    InvariantViolation(String),
    /// Two inputs disagree (e.g. a trace replayed against the wrong word).
    Mismatch(String),
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            CoreError::OutOfRange { start, len, word_len } => write!(
                f,
                "window [{start}, {}) exceeds word of length {word_len}",
                start + len
            ),
            CoreError::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            CoreError::InvariantViolation(msg) => write!(f, "invariant violation: {msg}"),
            CoreError::Mismatch(msg) => write!(f, "mismatch: {msg}"),
        }
    }
}

impl core::error::Error for CoreError {}

pub(crate) fn invalid(msg: impl Into<String>) -> CoreError {
    CoreError::InvalidInput(msg.into())
}
