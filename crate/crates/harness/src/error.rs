use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] psf_core::Error),

    #[error("norm increased at t = {t}: {before:e} -> {after:e}")]
    NormIncrease { t: f64, before: f64, after: f64 },

    #[error("output error: {0}")]
    Output(String),
}

impl HarnessError {
    /// Process exit status: 1 configuration (and I/O), 2 invariant
    /// violation, 3 infeasible parameters.
    pub fn exit_code(&self) -> i32 {
        use psf_core::Error as E;
        match self {
            HarnessError::NormIncrease { .. } | HarnessError::Core(E::NormGrowth { .. }) => 2,
            HarnessError::Core(E::Infeasible { .. }) => 3,
            _ => 1,
        }
    }
}

impl From<std::io::Error> for HarnessError {
    fn from(e: std::io::Error) -> Self {
        HarnessError::Output(e.to_string())
    }
}

impl From<csv::Error> for HarnessError {
    fn from(e: csv::Error) -> Self {
        HarnessError::Output(e.to_string())
    }
}
