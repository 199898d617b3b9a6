//! Central finite-difference estimates of third and fourth derivatives.
//!
//! The step is `scale · ε^{1/(k+2)} · max(1, |x|)` for a `k`-th derivative
//! with a second-order stencil, rounded to the nearest power of two so that
//! `x ± h` and `x ± 2h` are formed without representation error in `h`.

use crate::error::Result;
use crate::inequality::Interval;
use crate::quadrature::Integrand;

/// Step for a `k`-th derivative estimate around `x`.
pub fn fd_step(x: f64, scale: f64, order: u32) -> f64 {
    let raw = scale * f64::EPSILON.powf(1.0 / (order as f64 + 2.0)) * x.abs().max(1.0);
    raw.log2().round().exp2()
}

/// `f'''(x)` from `[f(x+2h) - 2f(x+h) + 2f(x-h) - f(x-2h)] / (2h³)`.
///
/// Signed; callers take the magnitude.
pub fn estimate_d3(f: &Integrand, x: f64, scale: f64) -> Result<f64> {
    check_scale(scale)?;
    let h = fd_step(x, scale, 3);
    let (p2, p1) = (f.eval(x + 2.0 * h)?, f.eval(x + h)?);
    let (m1, m2) = (f.eval(x - h)?, f.eval(x - 2.0 * h)?);
    Ok(((p2 - m2) - 2.0 * (p1 - m1)) / (2.0 * h * h * h))
}

/// `f''''(x)` from `[f(x+2h) - 4f(x+h) + 6f(x) - 4f(x-h) + f(x-2h)] / h⁴`.
pub fn estimate_d4(f: &Integrand, x: f64, scale: f64) -> Result<f64> {
    check_scale(scale)?;
    let h = fd_step(x, scale, 4);
    let (p2, p1, c) = (f.eval(x + 2.0 * h)?, f.eval(x + h)?, f.eval(x)?);
    let (m1, m2) = (f.eval(x - h)?, f.eval(x - 2.0 * h)?);
    Ok(((p2 + m2) - 4.0 * (p1 + m1) + 6.0 * c) / (h * h * h * h))
}

/// Largest `|f''''|` over `samples + 1` equally spaced points of `iv`.
///
/// This is an estimate, not a certified supremum.
pub fn estimate_sup_d4(f: &Integrand, iv: &Interval, samples: usize, scale: f64) -> Result<f64> {
    let n = samples.max(1);
    let mut best = 0.0f64;
    for i in 0..=n {
        let x = iv.a() + iv.width() * i as f64 / n as f64;
        best = best.max(estimate_d4(f, x, scale)?.abs());
    }
    Ok(best)
}

fn check_scale(scale: f64) -> Result<()> {
    if scale.is_finite() && scale > 0.0 {
        Ok(())
    } else {
        Err(crate::error::Error::Domain {
            name: "scale",
            value: scale,
            expected: "(0, inf)",
        })
    }
}
