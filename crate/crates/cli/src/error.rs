use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}{}: {message}", field_part(.field))]
    Parse { line: usize, field: String, message: String },
    #[error("field `{field}`: {message}")]
    Validation { field: String, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("no scenario file or bundled scenario named `{0}`")]
    UnknownScenario(String),
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
}

/// Syntax errors have no field path; serde_path_to_error reports `?` for them.
fn field_part(field: &str) -> String {
    if field.is_empty() || field == "?" {
        String::new()
    } else {
        format!(", field `{field}`")
    }
}

impl CliError {
    pub fn invalid(field: impl Into<String>, message: impl ToString) -> Self {
        CliError::Validation { field: field.into(), message: message.to_string() }
    }

    /// Exit code: 2 for unreadable or invalid input, 3 for bad usage.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::UnknownCheck(_) => 3,
            _ => 2,
        }
    }
}
