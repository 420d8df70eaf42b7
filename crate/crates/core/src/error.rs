use thiserror::Error;

/// Failure modes shared by every analysis in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Caller supplied inconsistent arguments (wrong variables, bad flags).
    #[error("usage error: {0}")]
    Usage(String),
    /// Operation undefined on its input (zero polynomial, degree too low).
    #[error("domain error: {0}")]
    Domain(String),
    /// A parametric leading coefficient vanished, or two polynomials share a factor.
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// A zero-discriminant-sequence normal condition failed.
    #[error("singular case: {0}")]
    Singular(String),
    /// A root sits exactly on an interval endpoint.
    #[error("root on interval endpoint {0}; perturb the endpoint and retry")]
    RootOnEndpoint(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
