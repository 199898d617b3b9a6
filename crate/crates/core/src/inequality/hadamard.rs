use super::{check_s, le_within, Interval};
use crate::error::Result;

/// Outcome of checking `2^{s-1} f(m) <= mean <= (f(a) + f(b)) / (s + 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HadamardCheck {
    pub lower: f64,
    pub mean: f64,
    pub upper: f64,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

impl HadamardCheck {
    /// `upper - mean`; zero when the right inequality is attained.
    pub fn upper_gap(&self) -> f64 {
        self.upper - self.mean
    }

    pub fn lower_gap(&self) -> f64 {
        self.mean - self.lower
    }
}

/// Checks both sides of the Hadamard-type sandwich for an s-convex `f`.
///
/// `mean_integral` is `(1/(b-a)) ∫ₐᵇ f`, supplied by the caller. The interval
/// itself is only validated; the sandwich does not depend on its width.
pub fn hadamard_sandwich(
    _iv: &Interval,
    s: f64,
    f_mid: f64,
    f_a: f64,
    f_b: f64,
    mean_integral: f64,
) -> Result<HadamardCheck> {
    check_s(s)?;
    let lower = (s - 1.0).exp2() * f_mid;
    let upper = (f_a + f_b) / (s + 1.0);
    Ok(HadamardCheck {
        lower,
        mean: mean_integral,
        upper,
        lower_ok: le_within(lower, mean_integral),
        upper_ok: le_within(mean_integral, upper),
    })
}
