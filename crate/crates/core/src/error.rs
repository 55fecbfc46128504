use thiserror::Error;

/// Errors raised by constructors and operations in this crate.
///
/// Scientific outcomes (a map failing a check, a decomposition that does not
/// exist) are values, not errors; see [`crate::analysis`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (max |A - A*| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (max |U*U - I| = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (residual {residual:e})")]
    SolverFailure { sweeps: usize, residual: f64 },

    #[error("zero vector has no Schmidt decomposition")]
    ZeroVector,

    #[error("format error in field `{field}`: {message}")]
    Format { field: String, message: String },
}

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn format(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Format {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
