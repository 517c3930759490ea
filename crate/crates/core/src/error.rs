use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid model parameter: {0}")]
    ModelParameter(String),

    #[error(
        "diagonalizer check failed for {model} at k = {k:?}: entry ({row}, {col}) is {found}, expected {expected}"
    )]
    Diagonalizer {
        model: String,
        k: Vec<f64>,
        row: usize,
        col: usize,
        expected: String,
        found: String,
    },

    #[error("invalid filter parameter: {0}")]
    FilterParameter(String),

    #[error("infeasible buffer parameters: {inequality} cannot be satisfied ({detail})")]
    Infeasible { inequality: &'static str, detail: String },

    #[error("norm grew from {before:e} to {after:e} at t = {t}")]
    NormGrowth { t: f64, before: f64, after: f64 },

    #[error("reference box too small: {0}")]
    ReferenceTooSmall(String),

    #[error("time grid mismatch: {0}")]
    TimeMismatch(String),

    #[error("snapshot format: {0}")]
    Snapshot(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
