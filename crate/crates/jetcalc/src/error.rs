use thiserror::Error;

/// Errors surfaced by the engine. Everything here is a domain error in the
/// sense that the inputs were structurally valid but outside an operation's
/// precondition; the engine never panics on user input.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),

    #[error("degree mismatch: class has degree {got:?}, operation needs {want}")]
    DegreeMismatch { got: Option<u32>, want: u32 },

    #[error("derivative order {order} exceeds truncation cap {cap}")]
    TruncationOverflow { order: u32, cap: u32 },

    #[error("{0}")]
    Domain(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
