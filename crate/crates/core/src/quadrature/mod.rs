//! Simpson evaluation, certified composite/adaptive integration and the
//! Gauss–Legendre reference integrator.

mod certified;
mod oracle;
mod simpson;

pub use certified::{CertifiedResult, Certifier, DerivativeSource, Panel};
pub use oracle::{gauss_legendre_rule, oracle_integral, Oracle};
pub use simpson::simpson;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

type EvalFn = dyn Fn(f64) -> Result<f64> + Send + Sync;

/// A pure real function of one variable.
///
/// Evaluation reports non-finite values as [`Error::NonFinite`] together with
/// the abscissa, so NaN and infinities never leak into a quadrature sum.
#[derive(Clone)]
pub struct Integrand {
    eval: Arc<EvalFn>,
    description: String,
}

impl Integrand {
    pub fn new<F>(description: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::fallible(description, move |x| Ok(f(x)))
    }

    pub fn fallible<F>(description: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> Result<f64> + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(f),
            description: description.into(),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let value = (self.eval)(x)?;
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonFinite { x, value })
        }
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// `x ↦ |self(x)|^q`.
    pub fn abs_pow(&self, q: f64) -> Integrand {
        let inner = self.clone();
        let description = if q == 1.0 {
            format!("|{}|", self.description)
        } else {
            format!("|{}|^{}", self.description, q)
        };
        Integrand::fallible(description, move |x| Ok(inner.eval(x)?.abs().powf(q)))
    }
}

impl fmt::Debug for Integrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Integrand")
            .field("description", &self.description)
            .finish_non_exhaustive()
    }
}
