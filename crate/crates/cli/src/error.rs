use std::fmt;

use serde_json::json;

/// Process exit codes.
pub mod exit {
    pub const USAGE: i32 = 2;
    pub const UNKNOWN_PRESET: i32 = 3;
    pub const MODEL_FILE: i32 = 4;
    pub const GRID: i32 = 5;
    pub const NUMERIC: i32 = 6;
    pub const IO: i32 = 7;
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: exit::USAGE,
            kind: "usage",
            message: message.into(),
        }
    }

    pub fn grid(message: impl Into<String>) -> Self {
        Self {
            code: exit::GRID,
            kind: "invalid_grid",
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            code: exit::IO,
            kind: "io",
            message: message.into(),
        }
    }

    /// One-line JSON object for stderr.
    pub fn to_json(&self) -> String {
        json!({ "error": { "kind": self.kind, "code": self.code, "message": self.message } }).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl std::error::Error for CliError {}

impl From<thirdq::Error> for CliError {
    fn from(e: thirdq::Error) -> Self {
        use thirdq::Error as E;
        let (code, kind) = match &e {
            E::UnknownPreset(_) => (exit::UNKNOWN_PRESET, "unknown_preset"),
            E::ModelFile(_) => (exit::MODEL_FILE, "model_file"),
            E::InvalidGrid(_) => (exit::GRID, "invalid_grid"),
            E::InvalidParameter(_) => (exit::USAGE, "invalid_parameter"),
            E::NoUniqueStationaryCovariance { .. } | E::NoUniqueSolution { .. } => {
                (exit::NUMERIC, "no_unique_stationary_covariance")
            }
            E::InvalidModel(_) => (exit::NUMERIC, "invalid_model"),
            E::InvalidState(_) => (exit::NUMERIC, "invalid_state"),
            _ => (exit::NUMERIC, "numeric"),
        };
        Self {
            code,
            kind,
            message: e.to_string(),
        }
    }
}
