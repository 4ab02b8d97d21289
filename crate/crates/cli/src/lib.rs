//! Configuration parsing, command dispatch, and canonical reporting for the
//! flagheight binary. One JSON job in, one JSON report out; an optional
//! human-readable table goes to standard error.

pub mod config;
pub mod run;
pub mod selftest;

use flagheight_core::Error;

/// A reportable failure carrying its process exit code: 2 for invalid
/// configuration, 3 for a size cap, 4 for an internal inconsistency (a bug,
/// never a user error).
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(err: Error) -> CliError {
        let code = match &err {
            Error::GroupTooLarge { .. } => 3,
            Error::InternalInconsistency(_) | Error::OracleMismatch(_) => 4,
            _ => 2,
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }
}

pub fn invalid(message: impl Into<String>) -> CliError {
    CliError {
        code: 2,
        message: message.into(),
    }
}
