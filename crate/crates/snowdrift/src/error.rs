//! Exit codes.

use std::fmt;

use snowdrift_core::Error as CoreError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_UNRESOLVED: u8 = 3;
pub const EXIT_INTERNAL: u8 = 4;

/// Bad input: payoffs, config values or seeds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invalid(pub String);

impl fmt::Display for Invalid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Invalid {}

/// How a command finished when it did not fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    /// Some run did not reach a catalog entry; the outputs were still written.
    Unresolved,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Ok => EXIT_OK,
            Outcome::Unresolved => EXIT_UNRESOLVED,
        }
    }
}

/// Exit code for a failed command.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Invalid>().is_some() {
        return EXIT_INVALID;
    }
    match err.downcast_ref::<CoreError>() {
        Some(CoreError::IntegrationFailed(_)) | None => EXIT_INTERNAL,
        Some(_) => EXIT_INVALID,
    }
}
