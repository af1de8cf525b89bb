use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, config keys or values.
    #[error("invalid arguments: {0}")]
    Usage(String),

    #[error(transparent)]
    Compute(#[from] pdm_core::Error),

    /// A result was produced but missed its requested tolerance.
    #[error("tolerance not met: {0}")]
    Tolerance(String),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_)
            | CliError::Compute(pdm_core::Error::NotBound { .. })
            | CliError::Compute(pdm_core::Error::ClosedFormUnavailable(_)) => 2,
            _ => 1,
        }
    }
}
