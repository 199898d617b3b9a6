//! The five single-interval error bounds.

use crate::error::{Error, Result};

use super::constants::{ln_holder_gamma_ratio, moment_a, moment_b, KERNEL_HALF_MASS};
use super::{
    BoundKind, BoundValue, ConvexityMode, DerivativeData, HolderPair, Interval, SParameter,
};

/// Which bound to apply, with the extra parameters it needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundChoice {
    /// Fourth-derivative bound; `sup_d4` is a uniform bound on `|f''''|`.
    Classical {
        sup_d4: f64,
    },
    SConvexDirect,
    Holder(HolderPair),
    PowerMean {
        q: f64,
    },
    SConcave(HolderPair),
}

impl BoundChoice {
    pub fn kind(&self) -> BoundKind {
        match self {
            BoundChoice::Classical { .. } => BoundKind::Classical,
            BoundChoice::SConvexDirect => BoundKind::SConvexDirect,
            BoundChoice::Holder(_) => BoundKind::Holder,
            BoundChoice::PowerMean { .. } => BoundKind::PowerMean,
            BoundChoice::SConcave(_) => BoundKind::SConcave,
        }
    }

    /// Whether the bound reads the quarter-point derivative magnitudes.
    pub fn needs_quarters(&self) -> bool {
        matches!(self, BoundChoice::SConcave(_))
    }
}

pub fn evaluate_bound(
    choice: &BoundChoice,
    iv: &Interval,
    s: &SParameter,
    d: &DerivativeData,
) -> Result<BoundValue> {
    match *choice {
        BoundChoice::Classical { sup_d4 } => bound_classical(iv, sup_d4),
        BoundChoice::SConvexDirect => bound_sconvex_direct(iv, s, d),
        BoundChoice::Holder(hp) => bound_holder(iv, s, &hp, d),
        BoundChoice::PowerMean { q } => bound_powermean(iv, s, q, d),
        BoundChoice::SConcave(hp) => bound_sconcave(iv, s, &hp, d),
    }
}

fn require_mode(s: &SParameter, mode: ConvexityMode, bound: &'static str) -> Result<()> {
    if s.mode() == mode {
        Ok(())
    } else {
        Err(Error::ModeMismatch {
            bound,
            required: mode.as_str(),
        })
    }
}

/// `‖f''''‖∞ (b-a)⁵ / 2880`.
pub fn bound_classical(iv: &Interval, sup_d4: f64) -> Result<BoundValue> {
    if !(sup_d4.is_finite() && sup_d4 >= 0.0) {
        return Err(Error::domain("sup_d4", sup_d4, "[0, inf)"));
    }
    Ok(BoundValue {
        kind: BoundKind::Classical,
        value: sup_d4 * iv.width().powi(5) / 2880.0,
    })
}

/// `((b-a)⁴/6) (A(s) + B(s)) (|f'''(a)| + |f'''(b)|)` for s-convex `|f'''|`.
pub fn bound_sconvex_direct(
    iv: &Interval,
    s: &SParameter,
    d: &DerivativeData,
) -> Result<BoundValue> {
    require_mode(s, ConvexityMode::Convex, "s-convex direct")?;
    let sv = s.value();
    let mass = moment_a(sv)? + moment_b(sv)?;
    Ok(BoundValue {
        kind: BoundKind::SConvexDirect,
        value: iv.width().powi(4) / 6.0 * mass * (d.d3a + d.d3b),
    })
}

/// `(b-a)⁴/48 · (1/2)^{1/p} · (Γ(2p+1)Γ(p+1)/Γ(3p+2))^{1/p}`, which is
/// `(b-a)⁴/6 · K(p)^{1/p}`.
fn holder_prefactor(iv: &Interval, hp: &HolderPair) -> Result<f64> {
    let p = hp.p();
    let ln = ln_holder_gamma_ratio(p)? / p - std::f64::consts::LN_2 / p;
    Ok(iv.width().powi(4) / 48.0 * ln.exp())
}

/// Hölder bound for s-convex `|f'''|^q`.
pub fn bound_holder(
    iv: &Interval,
    s: &SParameter,
    hp: &HolderPair,
    d: &DerivativeData,
) -> Result<BoundValue> {
    require_mode(s, ConvexityMode::Convex, "Hölder")?;
    let sv = s.value();
    let q = hp.q();
    let scale = (sv + 1.0).exp2() * (sv + 1.0);
    let w1 = 1.0 / scale;
    let w2 = ((sv + 1.0).exp2() - 1.0) / scale;
    let (aq, bq) = (d.d3a.powf(q), d.d3b.powf(q));
    let braces = (w1 * aq + w2 * bq).powf(1.0 / q) + (w2 * aq + w1 * bq).powf(1.0 / q);
    Ok(BoundValue {
        kind: BoundKind::Holder,
        value: holder_prefactor(iv, hp)? * braces,
    })
}

/// Power-mean bound for s-convex `|f'''|^q`, `q >= 1`.
///
/// At `q = 1` this is exactly [`bound_sconvex_direct`] and is computed along
/// the same path.
pub fn bound_powermean(
    iv: &Interval,
    s: &SParameter,
    q: f64,
    d: &DerivativeData,
) -> Result<BoundValue> {
    require_mode(s, ConvexityMode::Convex, "power-mean")?;
    if !(q.is_finite() && q >= 1.0) {
        return Err(Error::domain("q", q, "[1, inf)"));
    }
    if q == 1.0 {
        let direct = bound_sconvex_direct(iv, s, d)?;
        return Ok(BoundValue {
            kind: BoundKind::PowerMean,
            value: direct.value,
        });
    }
    let sv = s.value();
    let (ma, mb) = (moment_a(sv)?, moment_b(sv)?);
    let (aq, bq) = (d.d3a.powf(q), d.d3b.powf(q));
    let braces = (ma * aq + mb * bq).powf(1.0 / q) + (mb * aq + ma * bq).powf(1.0 / q);
    let value = iv.width().powi(4) / 6.0 * KERNEL_HALF_MASS.powf(1.0 - 1.0 / q) * braces;
    Ok(BoundValue {
        kind: BoundKind::PowerMean,
        value,
    })
}

/// Hölder bound for s-concave `|f'''|^q`, driven by the quarter-point values.
pub fn bound_sconcave(
    iv: &Interval,
    s: &SParameter,
    hp: &HolderPair,
    d: &DerivativeData,
) -> Result<BoundValue> {
    require_mode(s, ConvexityMode::Concave, "s-concave")?;
    let quarter = d.d3_quarter.ok_or(Error::MissingDerivative("d3_quarter"))?;
    let three_quarter = d
        .d3_three_quarter
        .ok_or(Error::MissingDerivative("d3_three_quarter"))?;
    let shift = ((s.value() - 2.0) / hp.q()).exp2();
    Ok(BoundValue {
        kind: BoundKind::SConcave,
        value: holder_prefactor(iv, hp)? * shift * (three_quarter + quarter),
    })
}
