//! Built-in test functions with exact third derivatives.

use crate::quadrature::Integrand;

#[derive(Debug, Clone)]
pub struct TestFunction {
    pub name: String,
    pub f: Integrand,
    pub d3: Integrand,
}

impl TestFunction {
    fn new(
        name: &str,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d3: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.to_string(),
            f: Integrand::new(name, f),
            d3: Integrand::new(format!("({name})'''"), d3),
        }
    }
}

/// `x^{s+3} / ((s+1)(s+2)(s+3))`, whose third derivative is `x^s`.
pub fn power_witness(s: f64) -> TestFunction {
    let c = (s + 1.0) * (s + 2.0) * (s + 3.0);
    TestFunction::new(
        &format!("x^{}/{}", s + 3.0, c),
        move |x| x.powf(s + 3.0) / c,
        move |x| x.powf(s),
    )
}

pub fn exp() -> TestFunction {
    TestFunction::new("exp(x)", f64::exp, f64::exp)
}

pub fn quartic() -> TestFunction {
    TestFunction::new("x^4/24", |x| x.powi(4) / 24.0, |x| x)
}

pub fn quintic() -> TestFunction {
    TestFunction::new("x^5/60", |x| x.powi(5) / 60.0, |x| x * x)
}

/// Functions for the domination sweep at order `s`. Each has `|f'''|^q`
/// s-convex on `[0, ∞)` for every `q >= 1`.
pub fn domination_suite(s: f64) -> Vec<TestFunction> {
    vec![power_witness(s), exp(), quartic(), quintic()]
}

/// Smooth functions for checking the kernel identity.
pub fn lemma_suite() -> Vec<TestFunction> {
    vec![
        exp(),
        TestFunction::new("sin(x)", f64::sin, |x| -x.cos()),
        TestFunction::new("x^5", |x| x.powi(5), |x| 60.0 * x * x),
        TestFunction::new(
            "x^6+x^3",
            |x| x.powi(6) + x.powi(3),
            |x| 120.0 * x.powi(3) + 6.0,
        ),
        TestFunction::new("1/(1+x)", |x| 1.0 / (1.0 + x), |x| -6.0 / (1.0 + x).powi(4)),
    ]
}
