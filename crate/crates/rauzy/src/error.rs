use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or environment; exit code 2.
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] rauzy_core::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}
