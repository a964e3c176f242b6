use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Core(#[from] dupin_core::Error),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    /// Process exit code: every error here happens before any check verdict.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
