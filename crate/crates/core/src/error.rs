use thiserror::Error;

use crate::quadrature::CertifiedResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid interval [{a}, {b}]: endpoints must be finite with a < b")]
    InvalidInterval { a: f64, b: f64 },

    #[error("{name} = {value} is outside its domain {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("the {bound} bound requires {required} mode")]
    ModeMismatch {
        bound: &'static str,
        required: &'static str,
    },

    #[error("missing derivative magnitude {0}")]
    MissingDerivative(&'static str),

    #[error("non-finite value {value} at x = {x}")]
    NonFinite { x: f64, value: f64 },

    #[error("evaluation failed at x = {x}: {message}")]
    Evaluation { x: f64, message: String },

    #[error("evaluation failed at triple (x = {x}, y = {y}, alpha = {alpha}): {source}")]
    Witness {
        x: f64,
        y: f64,
        alpha: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("oracle quadrature did not converge on [{a}, {b}] (last estimate {estimate})")]
    OracleNonConvergence { a: f64, b: f64, estimate: f64 },

    #[error("subinterval {index} [{a}, {b}]: {source}")]
    Subinterval {
        index: usize,
        a: f64,
        b: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("tolerance {tol:e} unreachable; best certified bound {best:e}")]
    ToleranceUnreachable {
        tol: f64,
        best: f64,
        partial: Box<CertifiedResult>,
    },
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            expected,
        }
    }
}
