use std::fmt;

/// Errors surfaced by the command-line layer, with their exit codes.
#[derive(Debug)]
pub enum AppError {
    /// Bad flags or malformed input.
    Usage(String),
    Core(civita_core::Error),
    /// A computed value failed its check.
    Verification(String),
    Io(std::io::Error),
    Json(serde_json::Error),
    Csv(csv::Error),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        use civita_core::Error as E;
        match self {
            AppError::Usage(_) | AppError::Json(_) => 2,
            AppError::Core(
                E::Parse { .. }
                | E::InvalidArgument(_)
                | E::InvalidInterval(_)
                | E::InvalidDelta(_)
                | E::InsufficientSmoothness { .. }
                | E::Overlap
                | E::DimensionMismatch
                | E::TailNotInfinitesimal(_),
            ) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Usage(m) => write!(f, "usage error: {}", m),
            AppError::Core(e) => write!(f, "{}", e),
            AppError::Verification(m) => write!(f, "verification failed: {}", m),
            AppError::Io(e) => write!(f, "io error: {}", e),
            AppError::Json(e) => write!(f, "invalid JSON: {}", e),
            AppError::Csv(e) => write!(f, "csv error: {}", e),
        }
    }
}

impl std::error::Error for AppError {}

impl From<civita_core::Error> for AppError {
    fn from(e: civita_core::Error) -> Self {
        AppError::Core(e)
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e)
    }
}

impl From<serde_json::Error> for AppError {
    fn from(e: serde_json::Error) -> Self {
        AppError::Json(e)
    }
}

impl From<csv::Error> for AppError {
    fn from(e: csv::Error) -> Self {
        AppError::Csv(e)
    }
}
