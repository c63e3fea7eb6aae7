use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |M - M†| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("value out of domain: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index out of range: {0}")]
    InvalidIndex(String),

    #[error("eigenvalue {0:e} is below the clamping threshold")]
    NegativeEigenvalue(f64),

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("channel is degenerate: every outcome is uncorrectable")]
    DegenerateChannel,

    #[error("syndrome basis is not orthonormal (max Gram deviation {deviation:e})")]
    OrthonormalityViolation { deviation: f64 },

    #[error("every state of the ensemble was discarded")]
    DegenerateEnsemble,

    #[error("consistency check `{check}` failed (deviation {deviation:e})")]
    ConsistencyViolation { check: &'static str, deviation: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
