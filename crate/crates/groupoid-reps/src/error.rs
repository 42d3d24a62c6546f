use groupoid_reps_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config file {path}: {message}")]
    Config { path: String, message: String },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("thread pool: {0}")]
    Pool(String),
}

impl CliError {
    /// 1 for internal consistency failures, 2 for usage errors, 3 for caps.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::ResourceCap { .. }) => 3,
            CliError::Core(CoreError::Internal(_)) => 1,
            _ => 2,
        }
    }
}
