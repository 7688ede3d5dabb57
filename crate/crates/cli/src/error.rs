use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("numerical failure: {0}")]
    Numerical(phasecov::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Io(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl From<phasecov::Error> for CliError {
    fn from(e: phasecov::Error) -> Self {
        match e {
            phasecov::Error::Domain(msg) => CliError::Validation(msg),
            other => CliError::Numerical(other),
        }
    }
}
