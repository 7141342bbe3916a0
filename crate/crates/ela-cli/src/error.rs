//! Error taxonomy mapped onto process exit codes.

use std::fmt;
use std::process::ExitCode;

use ela_core::CoreError;

/// Every failure a command can report, keyed by exit code: usage and
/// configuration problems exit 2, missing or malformed data exits 3, and a
/// selection run that found no passing subset exits 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    GateNotMet(String),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::GateNotMet(_) => ExitCode::from(1),
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Data(_) => ExitCode::from(3),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Data(m) => write!(f, "data error: {m}"),
            CliError::GateNotMet(m) => write!(f, "gate not met: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

// Library failures during command execution concern the data being
// processed, not the invocation.
impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Data(e.to_string())
    }
}

/// Annotates an I/O failure with the path it concerns.
pub fn io_err(path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError::Data(format!("{}: {e}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_documented_contract() {
        assert_eq!(
            CliError::GateNotMet("x".into()).exit_code(),
            ExitCode::from(1)
        );
        assert_eq!(CliError::Usage("x".into()).exit_code(), ExitCode::from(2));
        assert_eq!(CliError::Data("x".into()).exit_code(), ExitCode::from(3));
    }
}
