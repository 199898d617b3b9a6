//! Closed-form constants against numerical integration of their defining
//! integrals.

use simpson_certify_core::inequality::{holder_kernel_constant, moment_a, moment_b};
use simpson_certify_core::quadrature::oracle_integral;
use simpson_certify_core::{Integrand, Interval};

fn half() -> Interval {
    Interval::new(0.0, 0.5).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn oracle_a(s: f64) -> f64 {
    oracle_integral(
        &Integrand::new("A", move |t| t.powf(2.0 + s) * (0.5 - t)),
        &half(),
    )
    .unwrap()
}

fn oracle_b(s: f64) -> f64 {
    oracle_integral(
        &Integrand::new("B", move |t| t * t * (0.5 - t) * (1.0 - t).powf(s)),
        &half(),
    )
    .unwrap()
}

/// The same moment over the right half, `∫_{1/2}^1 (t-1)²(t-1/2) t^s dt`.
fn oracle_b_right(s: f64) -> f64 {
    let iv = Interval::new(0.5, 1.0).unwrap();
    oracle_integral(
        &Integrand::new("B'", move |t| (t - 1.0).powi(2) * (t - 0.5) * t.powf(s)),
        &iv,
    )
    .unwrap()
}

/// Combined direct-bound constant as a single fraction, reference only.
fn combined_fraction(s: f64) -> f64 {
    (-(4.0 + s)).exp2()
        * ((1.0 + s) * (2.0 + s) + 34.0 + (4.0 + s).exp2() * (-2.0 + s) + 11.0 * s + s * s)
        / ((1.0 + s) * (2.0 + s) * (3.0 + s) * (4.0 + s))
}

fn s_grid() -> impl Iterator<Item = f64> {
    (1..=20).map(|i| i as f64 * 0.05)
}

#[test]
fn moments_match_oracle_on_grid() {
    for s in s_grid() {
        let a = moment_a(s).unwrap();
        let b = moment_b(s).unwrap();
        assert!(rel(a, oracle_a(s)) <= 1e-12, "A({s})");
        assert!(rel(b, oracle_b(s)) <= 1e-12, "B({s})");
        assert!(rel(b, oracle_b_right(s)) <= 1e-12, "B right ({s})");
    }
}

#[test]
fn moment_sum_matches_combined_fraction() {
    for s in s_grid().chain([0.001, 0.3333, 0.999]) {
        let sum = moment_a(s).unwrap() + moment_b(s).unwrap();
        assert!(rel(sum, combined_fraction(s)) <= 1e-13, "s = {s}");
    }
}

#[test]
fn named_points() {
    assert!(rel(moment_a(1.0).unwrap(), oracle_a(1.0)) <= 1e-14);
    assert!(rel(oracle_a(1.0), 1.0 / 640.0) <= 1e-14);
    assert!(rel(oracle_b(1.0), 7.0 / 1920.0) <= 1e-14);
    assert!(rel(moment_a(0.5).unwrap(), oracle_a(0.5)) <= 1e-13);
    assert!(rel(moment_b(0.25).unwrap(), oracle_b(0.25)) <= 1e-13);
}

#[test]
fn kernel_constant_matches_oracle() {
    for p in [1.0, 1.5, 2.0, 3.0, 5.0, 10.0] {
        let oracle = oracle_integral(
            &Integrand::new("(t^2(1/2-t))^p", move |t| (t * t * (0.5 - t)).powf(p)),
            &half(),
        )
        .unwrap();
        let k = holder_kernel_constant(p).unwrap();
        assert!(rel(k, oracle) <= 1e-10, "p = {p}: {k} vs {oracle}");
    }
}

#[test]
fn kernel_constant_by_termwise_integration() {
    // t⁴(1/2 - t)² = t⁴/4 - t⁵ + t⁶ on [0, 1/2]
    let h = 0.5f64;
    let exact = h.powi(5) / 20.0 - h.powi(6) / 6.0 + h.powi(7) / 7.0;
    assert!(rel(exact, 1.0 / 13440.0) <= 1e-14);
    assert!(rel(holder_kernel_constant(2.0).unwrap(), exact) <= 1e-13);
    // t²(1/2 - t) has antiderivative t³/6 - t⁴/4
    let exact1 = h.powi(3) / 6.0 - h.powi(4) / 4.0;
    assert!(rel(holder_kernel_constant(1.0).unwrap(), exact1) <= 1e-13);
}
