//! Batch runner: scenario configs in, CSV tables and a JSON sidecar out.

pub mod oracle;
pub mod output;
pub mod presets;
pub mod run;
pub mod scenario;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

impl From<gauss_entropy::Error> for CliError {
    fn from(e: gauss_entropy::Error) -> Self {
        use gauss_entropy::Error as E;
        match e {
            E::InvalidParameter(_) | E::DimensionMismatch { .. } | E::TooLarge(_) => CliError::Config(e.to_string()),
            E::Unphysical(_) | E::Numerical(_) => CliError::Numerical(e.to_string()),
        }
    }
}
