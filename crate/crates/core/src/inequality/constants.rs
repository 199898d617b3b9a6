//! Moment integrals of the Simpson kernel and the Hölder kernel constant.

use crate::error::{Error, Result};

use super::check_s;

/// `∫₀^{1/2} t²(1/2 - t) dt`, the mass of `|p|` on each half times six.
pub const KERNEL_HALF_MASS: f64 = 1.0 / 192.0;

/// `A(s) = ∫₀^{1/2} t^{2+s} (1/2 - t) dt = 2^{-(4+s)} / ((3+s)(4+s))`.
pub fn moment_a(s: f64) -> Result<f64> {
    check_s(s)?;
    Ok((-(4.0 + s)).exp2() / ((3.0 + s) * (4.0 + s)))
}

/// `B(s) = ∫₀^{1/2} t² (1/2 - t) (1-t)^s dt`.
///
/// Closed form `2^{-(4+s)} (34 + 2^{4+s}(s-2) + 11s + s²) / ((1+s)(2+s)(3+s)(4+s))`.
pub fn moment_b(s: f64) -> Result<f64> {
    check_s(s)?;
    let numer = 34.0 + (4.0 + s).exp2() * (s - 2.0) + 11.0 * s + s * s;
    let denom = (1.0 + s) * (2.0 + s) * (3.0 + s) * (4.0 + s);
    Ok((-(4.0 + s)).exp2() * numer / denom)
}

/// `ln(Γ(2p+1) Γ(p+1) / Γ(3p+2))`.
pub fn ln_holder_gamma_ratio(p: f64) -> Result<f64> {
    if !(p.is_finite() && p > 0.0) {
        return Err(Error::domain("p", p, "(0, inf)"));
    }
    Ok(libm::lgamma(2.0 * p + 1.0) + libm::lgamma(p + 1.0) - libm::lgamma(3.0 * p + 2.0))
}

/// `Γ(2p+1) Γ(p+1) / Γ(3p+2)`, evaluated in log space.
pub fn holder_gamma_ratio(p: f64) -> Result<f64> {
    Ok(ln_holder_gamma_ratio(p)?.exp())
}

/// `K(p) = ∫₀^{1/2} (t²(1/2 - t))^p dt = 8^{-p} Γ(2p+1) Γ(p+1) / (2 Γ(3p+2))`.
///
/// The whole product is formed in log space; for large `p` the result
/// underflows gracefully towards zero instead of overflowing the Gamma values.
pub fn holder_kernel_constant(p: f64) -> Result<f64> {
    let ln = ln_holder_gamma_ratio(p)? - p * 8f64.ln() - std::f64::consts::LN_2;
    Ok(ln.exp())
}
