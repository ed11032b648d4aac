use std::fmt::Display;
use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed TOML or a key the schema does not know.
    #[error("{0}")]
    Parse(String),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {message}", path.display())]
    Data { path: PathBuf, message: String },
    #[error(transparent)]
    Core(#[from] spatial_rc_core::Error),
}

impl CliError {
    pub fn field(field: impl Into<String>, message: impl Display) -> Self {
        CliError::Field {
            field: field.into(),
            message: message.to_string(),
        }
    }

    /// A core validation error attributed to a config section.
    pub fn core_field(section: impl Into<String>, err: spatial_rc_core::Error) -> Self {
        let section = section.into();
        match err {
            spatial_rc_core::Error::InvalidParameter { name, reason } => {
                CliError::field(format!("{section}.{name}"), reason)
            }
            other => CliError::field(section, other),
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn in_file(self, path: &Path) -> Self {
        match self {
            CliError::Parse(m) => CliError::Parse(format!("{}: {m}", path.display())),
            CliError::Field { field, message } => CliError::Field {
                field: format!("{}: {field}", path.display()),
                message,
            },
            other => other,
        }
    }

    /// Process exit status: 2 for configuration problems, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Field { .. } => 2,
            _ => 1,
        }
    }
}
