use thiserror::Error;

/// Errors raised by graph construction, ingestion, and the algorithms
/// operating on graphs.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("input file contains no edges")]
    EmptyInput,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("exhaustive routine refused: {0}")]
    BudgetExceeded(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl GraphError {
    pub fn invalid<S: Into<String>>(msg: S) -> Self {
        GraphError::InvalidArgument(msg.into())
    }
}
