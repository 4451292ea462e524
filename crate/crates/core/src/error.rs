use std::io;

use thiserror::Error;

/// Errors produced by the allocation toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The implied queue has load at or above its capacity.
    #[error("unstable model: load {load} is not below capacity {capacity}")]
    Unstable { load: f64, capacity: f64 },

    #[error("no sign change found for {0} on (0, 1)")]
    NoBracket(&'static str),

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    /// Two or more roots of the characteristic equation coincide.
    #[error("characteristic equation has a repeated root near {re:.6}{im:+.6}i")]
    RootMultiplicity { re: f64, im: f64 },

    #[error("expected {expected} roots in the closed unit disk, found {found}")]
    RootCount { expected: usize, found: usize },

    #[error("linear system is near-singular (condition estimate {condition:e})")]
    NearSingular { condition: f64 },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("{users} users exceed total server capacity {capacity}")]
    Infeasible { users: usize, capacity: usize },

    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),

    #[error("assignment is not unidirectional: user {user} is served from the left")]
    NotUnidirectional { user: usize },

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors that come from the model or its numerics rather than from
    /// I/O or malformed input.
    pub fn is_model_error(&self) -> bool {
        matches!(
            self,
            Error::Unstable { .. }
                | Error::NoBracket(_)
                | Error::NonConvergence { .. }
                | Error::RootMultiplicity { .. }
                | Error::RootCount { .. }
                | Error::NearSingular { .. }
                | Error::Numeric(_)
                | Error::Infeasible { .. }
                | Error::TooLarge(_)
                | Error::NotUnidirectional { .. }
                | Error::InvalidParameter(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
