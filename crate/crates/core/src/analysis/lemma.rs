use super::kernel_p;
use crate::error::Result;
use crate::inequality::Interval;
use crate::quadrature::{oracle_integral, simpson, Integrand};

/// Both sides of the kernel representation of the Simpson error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaResidual {
    /// `∫ₐᵇ f - Simpson(f)`.
    pub lhs: f64,
    /// `(b-a)⁴ ∫₀¹ p(t) f'''(ta + (1-t)b) dt`.
    pub rhs: f64,
    pub residual: f64,
}

/// Evaluates both sides with the reference integrator and returns
/// `|lhs - rhs|`. `d3` must be the exact third derivative of `f`.
///
/// No closed forms are used on either side, so a small residual tests the
/// identity itself.
pub fn verify_lemma_identity(
    f: &Integrand,
    d3: &Integrand,
    iv: &Interval,
) -> Result<LemmaResidual> {
    let lhs = oracle_integral(f, iv)? - simpson(f, iv)?;

    let (a, b) = (iv.a(), iv.b());
    let d3 = d3.clone();
    let weighted = Integrand::fallible("p(t) f'''(ta+(1-t)b)", move |t| {
        Ok(kernel_p(t)? * d3.eval(t * a + (1.0 - t) * b)?)
    });
    // the kernel's second derivative jumps at t = 1/2
    let left = oracle_integral(&weighted, &Interval::new(0.0, 0.5)?)?;
    let right = oracle_integral(&weighted, &Interval::new(0.5, 1.0)?)?;
    let rhs = iv.width().powi(4) * (left + right);

    Ok(LemmaResidual {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
    })
}
