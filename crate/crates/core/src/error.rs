use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong inside the library.
///
/// Variants are grouped by how a command-line caller should react; see
/// [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph order {0} exceeds the limit of {limit}", limit = crate::graph::MAX_ORDER)]
    TooManyVertices(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("size limit exceeded: {0}")]
    Limit(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("search volume estimate {estimate:.3e} exceeds the guard {limit:.3e}; use a smaller n or p")]
    SearchVolume { estimate: f64, limit: f64 },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::TooManyVertices(_) | Error::InvalidInput(_) => 2,
            Error::Limit(_) | Error::Infeasible(_) | Error::SearchVolume { .. } => 4,
            Error::Internal(_) => 1,
        }
    }
}
