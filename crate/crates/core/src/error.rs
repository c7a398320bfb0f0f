use thiserror::Error;

/// Errors raised by the library. The CLI maps each variant onto an exit code.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("matrix is singular")]
    Singular,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("decode error: {0}")]
    Decode(String),

    /// A size limit (enumeration cap, frontier cap, word budget) was exceeded.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// The girth search hit its element cap; every length up to `checked` is relation-free.
    #[error("capacity exceeded after {reached} elements; no relation of length <= {checked}")]
    GirthCapacity { reached: usize, checked: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// Canary for conditions that should be unreachable (e.g. an exhausted rejection loop).
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    /// Short machine-readable code used in the `error` column of result rows.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Singular => "singular",
            Error::Parse { .. } => "parse",
            Error::Decode(_) => "decode",
            Error::Capacity(_) | Error::GirthCapacity { .. } => "capacity",
            Error::Io(_) => "io",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
