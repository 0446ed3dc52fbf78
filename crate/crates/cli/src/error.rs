use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<qmarket_core::Error> for CliError {
    fn from(e: qmarket_core::Error) -> Self {
        use qmarket_core::Error as E;
        match e {
            E::NormDrift { .. } | E::NumericConsistency(_) | E::NoConvergence(_) => CliError::Numeric(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}
