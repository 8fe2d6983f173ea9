use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,

    #[error("requires positive decay data")]
    NonPositiveData,

    #[error("at least {needed} points required, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("schur failed: QR iteration did not converge within {0} iterations")]
    SchurFailed(usize),

    #[error("svd failed: Jacobi sweeps did not converge within {0} sweeps")]
    SvdFailed(usize),

    #[error("resolvent blow-up: sigma_min {sigma_min:e} <= threshold {threshold:e}")]
    ResolventBlowUp { sigma_min: f64, threshold: f64 },

    #[error("inversion out of range")]
    InversionOutOfRange,

    #[error("numeric overflow in {0}")]
    Overflow(&'static str),

    #[error("no convergence in {0}")]
    Convergence(&'static str),

    #[error("unknown suite `{name}`; valid suites: {valid}")]
    UnknownSuite { name: String, valid: String },

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
