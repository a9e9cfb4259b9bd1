use blockcomp_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
    #[error(transparent)]
    Model(CoreError),
    #[error("qasm line {line}: {msg}")]
    Qasm { line: usize, msg: String },
    #[error("distance {distance:e} exceeds tolerance {tol:e}")]
    Tolerance { distance: f64, tol: f64 },
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Model(e)
    }
}

impl CliError {
    /// 1 for validation and IO problems, 2 for a tolerance failure, 3 for a resource cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Tolerance { .. } => 2,
            CliError::Model(CoreError::CapExceeded { .. }) => 3,
            _ => 1,
        }
    }
}
