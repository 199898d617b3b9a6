//! Simpson's rule with a-priori error bounds for integrands whose third
//! derivative (in absolute value, possibly raised to a power `q`) is
//! s-convex or s-concave in the second sense.
//!
//! - [`inequality`]: closed-form constants and the single-interval bounds.
//! - [`quadrature`]: Simpson's rule, certified composite/adaptive
//!   integration and the Gauss–Legendre reference integrator.
//! - [`analysis`]: the error kernel, the kernel identity check, sampled
//!   s-convexity testing and finite-difference derivatives.
//! - [`expr`]: a small expression language so integrands can come from text.

pub mod analysis;
pub mod error;
pub mod expr;
pub mod inequality;
pub mod quadrature;

pub use error::{Error, Result};
pub use inequality::{
    BoundChoice, BoundKind, BoundValue, ConvexityMode, DerivativeData, DerivativeOrigin,
    HolderPair, Interval, SParameter,
};
pub use quadrature::{CertifiedResult, Certifier, DerivativeSource, Integrand};
