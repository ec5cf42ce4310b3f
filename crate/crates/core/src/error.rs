use thiserror::Error;

/// Crate-wide error type.
///
/// `InvalidInput` and `Config` indicate bad user input (the CLI maps them to
/// exit code 2); everything else is a runtime failure (exit code 1).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("model restriction violated: {0}")]
    ModelRestriction(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("randomization error: {0}")]
    Randomization(String),

    #[error("estimation error: {0}")]
    Estimation(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// True for errors caused by bad user input rather than runtime failure.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_)
                | Error::ModelRestriction(_)
                | Error::Config(_)
                | Error::Parse { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
