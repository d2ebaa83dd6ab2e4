use thiserror::Error;

use crate::symexpr::ExprError;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the engine can report.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Expr(#[from] ExprError),

    #[error("Frenet type frame undefined at t = {t}: a² + b² = {value:e}")]
    FrameDegenerate { t: f64, value: f64 },

    #[error("{surface} undefined at t = {t}: {reason}")]
    SurfaceUndefined {
        surface: &'static str,
        t: f64,
        reason: String,
    },

    #[error("{which} evolute undefined at t = {t}: sigma_F = {sigma_f:e}")]
    EvoluteUndefined {
        which: &'static str,
        t: f64,
        sigma_f: f64,
    },

    #[error("frame drift {drift:e} exceeds tolerance at t = {t}")]
    IntegrationFailure { t: f64, drift: f64 },

    #[error("t = {t} outside the integrated domain [{t0}, {t1}]")]
    OutOfDomain { t: f64, t0: f64, t1: f64 },

    #[error("grid point ({row}, {col}): {source}")]
    Grid {
        row: usize,
        col: usize,
        #[source]
        source: Box<Error>,
    },
}
