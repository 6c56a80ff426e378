use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("input: {0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] loggf::Error),
}

impl CliError {
    /// Every error maps to exit status 2.
    pub fn exit_code(&self) -> u8 {
        2
    }
}
