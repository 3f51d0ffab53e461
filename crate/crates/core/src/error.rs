use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A vector argument has the wrong length.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    /// A NaN was supplied where a real number was required.
    #[error("NaN input in {0}")]
    NotANumber(&'static str),

    /// Two configurations produced a coincident point when merged.
    #[error("tie at {0} while superimposing configurations")]
    Tie(f64),

    /// The two configurations live on different supports (line vs circle).
    #[error("kind mismatch: {0}")]
    KindMismatch(String),

    /// A name lookup in one of the registries failed.
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Dimension { expected, got })
    }
}
