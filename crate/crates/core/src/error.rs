use std::io;

use thiserror::Error;

use crate::algebra::SpacetimePoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller passed arguments outside an operation's contract.
    #[error("usage error: {0}")]
    Usage(String),

    /// Cylindrical seeds are not evaluated on (or too close to) the z axis.
    #[error("point {point} lies within rho_min = {rho_min:e} of the cylinder axis (rho = {rho:e})")]
    AxisExclusion {
        point: SpacetimePoint,
        rho: f64,
        rho_min: f64,
    },

    #[error("non-finite {what} at {point}")]
    NonFinite {
        what: &'static str,
        point: SpacetimePoint,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
