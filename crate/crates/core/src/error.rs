use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an operation's arguments was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Instance or trace text could not be parsed; `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
