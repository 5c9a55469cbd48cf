use serde::Serialize;
use su3exp::Su3Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

/// A failure reported to the user as a one-line JSON object.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CliError {
    pub error: String,
    pub message: String,
    #[serde(skip)]
    pub exit_code: i32,
}

impl CliError {
    pub fn input(kind: &str, message: impl Into<String>) -> Self {
        Self {
            error: kind.to_string(),
            message: message.into(),
            exit_code: EXIT_USAGE,
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::input("UsageError", message)
    }
}

impl From<Su3Error> for CliError {
    fn from(e: Su3Error) -> Self {
        Self::input(e.kind(), e.to_string())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.error, self.message)
    }
}

impl std::error::Error for CliError {}
