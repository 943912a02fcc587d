use jetrank_core::Error as CoreError;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    /// A measurement disagreed with its prediction, or a check failed.
    Disagreement = 1,
    Usage = 2,
    /// An enumeration or subset cap was hit.
    Cap = 3,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_status(&self) -> ExitStatus {
        match self {
            CliError::Core(CoreError::CapExceeded { .. } | CoreError::SubsetCapExceeded { .. }) => ExitStatus::Cap,
            _ => ExitStatus::Usage,
        }
    }
}
