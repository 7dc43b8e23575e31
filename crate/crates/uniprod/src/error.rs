use thiserror::Error;

/// Failures that end a run with exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    /// `path` points at the offending field, e.g. `functionals.psi.moments["x q"]`.
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("{0}")]
    Core(#[from] uniprod_core::Error),
    #[error("{context}: {source}")]
    Io { context: String, source: std::io::Error },
}

impl CliError {
    pub fn input(path: &str, message: String) -> Self {
        CliError::Input { path: path.into(), message }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError::Input { path: "(arguments)".into(), message: message.into() }
    }
}
