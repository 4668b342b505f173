use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} needs {sites} sites, above the dense limit of {limit}")]
    SizeLimit {
        what: &'static str,
        sites: usize,
        limit: usize,
    },

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("degenerate cut: system must be a nonempty proper subset of {num_sites} sites")]
    DegenerateCut { num_sites: usize },

    #[error("initial state has no support below the threshold (Z = {z:e})")]
    OrthogonalInitialState { z: f64 },

    #[error("comparison is undefined: {0}")]
    Incomparable(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
