use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("stencil of width {width} does not fit {count} nodes along dimension {dim}")]
    StencilTooWide {
        dim: usize,
        width: usize,
        count: usize,
    },

    #[error("shift offset {offset} exceeds ghost width {width}")]
    ShiftOutOfRange { offset: isize, width: usize },

    #[error("integration aborted at t = {time}: {reason}")]
    IntegrationAbort { time: f64, reason: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("malformed snapshot: {0}")]
    Snapshot(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
