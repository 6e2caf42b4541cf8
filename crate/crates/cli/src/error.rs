use serde::{Deserialize, Serialize};

use paradoxlab_core::Error as CoreError;

/// Machine-readable failure categories. Each maps to its own exit status
/// and HTTP status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    UnknownParadox,
    InvalidParameter,
    Precondition,
    UnwritablePath,
    OracleFailure,
    ServeFailed,
    NotFound,
}

impl ErrorCode {
    pub fn exit_status(self) -> i32 {
        match self {
            ErrorCode::UnknownParadox => 10,
            ErrorCode::InvalidParameter => 11,
            ErrorCode::Precondition => 12,
            ErrorCode::UnwritablePath => 13,
            ErrorCode::OracleFailure => 14,
            ErrorCode::ServeFailed => 15,
            ErrorCode::NotFound => 16,
        }
    }

    pub fn http_status(self) -> u16 {
        match self {
            ErrorCode::UnknownParadox | ErrorCode::InvalidParameter => 400,
            ErrorCode::Precondition => 422,
            ErrorCode::NotFound => 404,
            ErrorCode::UnwritablePath | ErrorCode::OracleFailure | ErrorCode::ServeFailed => 500,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error, Serialize, Deserialize)]
#[error("{message}")]
pub struct CliError {
    pub code: ErrorCode,
    pub message: String,
    /// The violated condition, e.g. `"lambda: lambda > 0"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precondition: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<String>,
}

impl CliError {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
            precondition: None,
            parameter: None,
        }
    }

    pub fn unknown_paradox(name: &str) -> Self {
        CliError::new(
            ErrorCode::UnknownParadox,
            format!("unknown paradox {name:?}; expected one of koch, horn, staircase, dissection, wheel"),
        )
    }

    pub fn invalid_parameter(name: &str, message: impl Into<String>) -> Self {
        CliError {
            parameter: Some(name.to_string()),
            ..CliError::new(ErrorCode::InvalidParameter, message)
        }
    }

    pub fn precondition(name: &str, condition: &str, value: impl std::fmt::Display) -> Self {
        CliError {
            parameter: Some(name.to_string()),
            precondition: Some(format!("{name}: {condition}")),
            ..CliError::new(
                ErrorCode::Precondition,
                format!("{name} must satisfy {condition} (got {value})"),
            )
        }
    }

    /// `{"error": {...}}`
    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self }).to_string()
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let parameter = match &e {
            CoreError::Parameter { name, .. } => Some(name.to_string()),
            _ => None,
        };
        CliError {
            code: ErrorCode::Precondition,
            message: e.to_string(),
            precondition: Some(e.precondition()),
            parameter,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
