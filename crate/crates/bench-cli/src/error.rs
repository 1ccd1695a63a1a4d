use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration: {0}")]
    Config(String),

    #[error("cannot access '{path}': {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed CSV at {path}:{line}: {message}")]
    CsvParse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Estimator(#[from] estimators::Error),

    #[error(transparent)]
    Measurement(#[from] pauli_measurements::Error),

    #[error(transparent)]
    Core(#[from] quantum_core::Error),

    #[error(transparent)]
    Theory(#[from] theory_checks::Error),
}

impl Error {
    /// Process exit code: 1 for validation problems the user can fix in
    /// the invocation, 2 for runtime failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Estimator(_) => 1,
            _ => 2,
        }
    }
}
