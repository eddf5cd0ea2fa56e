use std::path::PathBuf;

use crate::geom::Point;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("singular Jacobian at ({}, {})", .0.x, .0.y)]
    SingularJacobian(Point),

    #[error("backward orbit truncated after {recorded} points, before burn-in {burn_in}")]
    EmptyOrbit { recorded: usize, burn_in: usize },

    #[error("iterate became empty at step {step}")]
    EmptySet { step: usize },

    #[error("{op}: {message}")]
    Runtime { op: &'static str, message: String },

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
