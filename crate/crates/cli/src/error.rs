use powsum_core::baker::BakerError;
use powsum_core::exact::ExactError;
use powsum_core::sieve::SieveError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

impl From<SieveError> for CliError {
    fn from(e: SieveError) -> Self {
        match e {
            SieveError::Precondition(_) | SieveError::Checkpoint { .. } => {
                CliError::Usage(e.to_string())
            }
            SieveError::ModulusCapExceeded { .. } => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::Precondition { .. } => CliError::Usage(e.to_string()),
            ExactError::EvaluationMismatch { .. } => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<BakerError> for CliError {
    fn from(e: BakerError) -> Self {
        CliError::Invariant(e.to_string())
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
