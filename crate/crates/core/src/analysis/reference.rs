//! The constants' defining integrals, evaluated by the reference integrator.

use crate::error::Result;
use crate::inequality::Interval;
use crate::quadrature::{oracle_integral, Integrand};

fn half() -> Interval {
    Interval::new(0.0, 0.5).expect("[0, 1/2] is a valid interval")
}

/// `∫₀^{1/2} t^{2+s} (1/2 - t) dt`.
pub fn reference_moment_a(s: f64) -> Result<f64> {
    oracle_integral(
        &Integrand::new("t^(2+s) (1/2-t)", move |t| t.powf(2.0 + s) * (0.5 - t)),
        &half(),
    )
}

/// `∫₀^{1/2} t² (1/2 - t) (1-t)^s dt`.
pub fn reference_moment_b(s: f64) -> Result<f64> {
    oracle_integral(
        &Integrand::new("t^2 (1/2-t) (1-t)^s", move |t| {
            t * t * (0.5 - t) * (1.0 - t).powf(s)
        }),
        &half(),
    )
}

/// `∫₀^{1/2} (t² (1/2 - t))^p dt`.
pub fn reference_kernel_constant(p: f64) -> Result<f64> {
    oracle_integral(
        &Integrand::new("(t^2 (1/2-t))^p", move |t| (t * t * (0.5 - t)).powf(p)),
        &half(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_order_values() {
        assert!((reference_moment_a(1.0).unwrap() * 640.0 - 1.0).abs() < 1e-14);
        assert!((reference_kernel_constant(1.0).unwrap() * 192.0 - 1.0).abs() < 1e-14);
    }
}
