use std::path::PathBuf;

/// Errors produced by the cubic-order engine.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("generators span a lattice of rank {rank} < 3")]
    RankDeficient { rank: usize },

    #[error("lattice is not contained in the outer lattice")]
    NotContained,

    #[error("unsupported signature: {0}")]
    UnsupportedSignature(String),

    #[error("prime {prime} is decomposed in the field")]
    Decomposed { prime: u64 },

    #[error("capacity ceiling exceeded: needed {needed}, ceiling {ceiling} ({what})")]
    Capacity {
        what: &'static str,
        needed: u64,
        ceiling: u64,
    },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("stale or incomplete cache: {0}")]
    Stale(String),

    #[error("i/o error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed record: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Stale(_) => 3,
            Error::Capacity { .. } => 4,
            Error::Io { .. } | Error::Inconsistent(_) => 1,
            _ => 2,
        }
    }
}
