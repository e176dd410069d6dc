use thiserror::Error;

/// Errors produced by the numerical kernels and mask I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("argument {value} outside domain {domain}")]
    Domain { value: f64, domain: &'static str },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian: max asymmetry {asymmetry:.3e} exceeds {limit:.3e}")]
    NotHermitian { asymmetry: f64, limit: f64 },

    #[error("eigensolver did not converge: {0}")]
    NoConvergence(String),

    #[error("window does not generate a frame: eigenvalue range [{min:.3e}, {max:.3e}]")]
    NotAFrame { min: f64, max: f64 },

    #[error("malformed netpbm data: {0}")]
    MalformedImage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for input-validation failures (bad parameters, domains,
    /// dimensions, malformed files) as opposed to numerical failures.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_)
                | Error::Domain { .. }
                | Error::DimensionMismatch(_)
                | Error::MalformedImage(_)
                | Error::Io(_)
        )
    }
}
