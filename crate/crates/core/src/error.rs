use thiserror::Error;

/// Errors raised by every stage of the laboratory.
///
/// Variants split into two families: input validation (the caller asked for
/// something ill-formed) and numerical failure (the inputs were fine but a
/// decomposition or a consistency check did not hold).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("site index {index} out of range for {len} sites")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("unsupported geometry: {0}")]
    UnsupportedGeometry(String),

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("capacity exceeded: {what} (requested {requested}, limit {limit}); {estimate}")]
    Capacity {
        what: &'static str,
        requested: usize,
        limit: usize,
        estimate: String,
    },

    #[error("singular state: {0}; use a finite inverse temperature")]
    SingularState(String),

    #[error("degenerate transform: {reason} (condition estimate {condition:.3e})")]
    DegenerateTransform { reason: String, condition: f64 },

    #[error("branch cut: log argument {re:.6e}{im:+.6e}i is not a positive real")]
    BranchCut { re: f64, im: f64 },

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code used by the command-line runner.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SingularState(_)
            | Error::DegenerateTransform { .. }
            | Error::BranchCut { .. }
            | Error::Numerical(_) => 3,
            Error::Io { .. } => 1,
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
