use thiserror::Error;

/// Errors surfaced by the experiment runner.
#[derive(Debug, Error)]
pub enum Error {
    /// Config text could not be read as `key = value` lines.
    #[error("config line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A config field parsed but failed validation.
    #[error("invalid {field}: {message}")]
    Validation { field: String, message: String },

    /// A sweep row failed; the offending grid point is attached.
    #[error("sweep row t={t}, u={u}: {source}")]
    Row {
        t: f64,
        u: f64,
        source: bqt_core::Error,
    },

    /// Emission was asked to write an empty table.
    #[error("result table is empty")]
    EmptyTable,

    /// A column name does not exist in the table.
    #[error("unknown column `{0}`")]
    UnknownColumn(String),

    #[error(transparent)]
    Core(#[from] bqt_core::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code: 2 for I/O trouble, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 2,
            _ => 1,
        }
    }
}
