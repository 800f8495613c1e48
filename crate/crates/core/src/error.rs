use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("word length {0} exceeds the supported maximum of 64")]
    TooLong(usize),

    #[error("rank deficient matrix: expected rank {expected}, found {found}")]
    RankDeficient { expected: usize, found: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A size limit was hit; the caller may override it explicitly.
    #[error("scale guard: {0}")]
    ScaleGuard(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("malformed representation file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Coarse error classes, used by the CLI to choose an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Data,
    Invariant,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidParameter(_) | Error::ScaleGuard(_) => ErrorKind::Usage,
            Error::Invariant(_) => ErrorKind::Invariant,
            _ => ErrorKind::Data,
        }
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
