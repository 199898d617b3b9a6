//! Closed-form constants and the single-interval error bounds for Simpson's
//! rule.
//!
//! Every bound is a pure function of an [`Interval`], the convexity order
//! [`SParameter`], optionally a [`HolderPair`], and the third-derivative
//! magnitudes in [`DerivativeData`]. The bounds hold under the hypothesis that
//! `|f'''|` (or `|f'''|^q`) is s-convex (or s-concave) in the second sense on
//! the interval; checking that hypothesis is the job of
//! [`crate::analysis::check_s_convexity`].

mod bounds;
mod constants;
mod hadamard;

pub use bounds::{
    bound_classical, bound_holder, bound_powermean, bound_sconcave, bound_sconvex_direct,
    evaluate_bound, BoundChoice,
};
pub use constants::{
    holder_gamma_ratio, holder_kernel_constant, ln_holder_gamma_ratio, moment_a, moment_b,
    KERNEL_HALF_MASS,
};
pub use hadamard::{hadamard_sandwich, HadamardCheck};

use std::fmt;

use crate::error::{Error, Result};

/// Absolute slack used by every inequality check.
pub const CHECK_ATOL: f64 = 1e-10;
/// Relative slack used by every inequality check.
pub const CHECK_RTOL: f64 = 1e-10;

/// `lhs <= rhs` up to the shared absolute-plus-relative slack.
pub fn le_within(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + CHECK_ATOL + CHECK_RTOL * lhs.abs().max(rhs.abs())
}

/// A closed real interval `[a, b]` with finite endpoints and `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a.is_finite() && b.is_finite() && a < b {
            Ok(Self { a, b })
        } else {
            Err(Error::InvalidInterval { a, b })
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    /// `(3a + b) / 4`, the midpoint of the left half.
    pub fn quarter(&self) -> f64 {
        0.25 * (3.0 * self.a + self.b)
    }

    /// `(a + 3b) / 4`, the midpoint of the right half.
    pub fn three_quarter(&self) -> f64 {
        0.25 * (self.a + 3.0 * self.b)
    }

    /// True when the interval lies in `[0, ∞)`, the domain on which
    /// s-convexity in the second sense is defined.
    pub fn is_nonnegative(&self) -> bool {
        self.a >= 0.0
    }

    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.midpoint();
        (Interval { a: self.a, b: m }, Interval { a: m, b: self.b })
    }

    /// Splits into `n` equal pieces. The last piece ends exactly at `b`.
    pub fn split(&self, n: usize) -> Result<Vec<Interval>> {
        if n == 0 {
            return Err(Error::domain("n", 0.0, "n >= 1"));
        }
        let h = self.width() / n as f64;
        let mut out = Vec::with_capacity(n);
        let mut left = self.a;
        for i in 1..=n {
            let right = if i == n {
                self.b
            } else {
                self.a + h * i as f64
            };
            out.push(Interval::new(left, right)?);
            left = right;
        }
        Ok(out)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConvexityMode {
    Convex,
    Concave,
}

impl ConvexityMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConvexityMode::Convex => "convex",
            ConvexityMode::Concave => "concave",
        }
    }
}

/// The convexity order `s ∈ (0, 1]` together with the direction of the
/// inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SParameter {
    s: f64,
    mode: ConvexityMode,
}

impl SParameter {
    pub fn new(s: f64, mode: ConvexityMode) -> Result<Self> {
        check_s(s)?;
        Ok(Self { s, mode })
    }

    pub fn convex(s: f64) -> Result<Self> {
        Self::new(s, ConvexityMode::Convex)
    }

    pub fn concave(s: f64) -> Result<Self> {
        Self::new(s, ConvexityMode::Concave)
    }

    pub fn value(&self) -> f64 {
        self.s
    }

    pub fn mode(&self) -> ConvexityMode {
        self.mode
    }
}

pub(crate) fn check_s(s: f64) -> Result<()> {
    if s > 0.0 && s <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain("s", s, "(0, 1]"))
    }
}

/// Conjugate exponents with `1/p + 1/q = 1` and `q > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderPair {
    p: f64,
    q: f64,
}

impl HolderPair {
    pub fn from_q(q: f64) -> Result<Self> {
        if !(q.is_finite() && q > 1.0) {
            return Err(Error::domain("q", q, "(1, inf)"));
        }
        let p = q / (q - 1.0);
        if !p.is_finite() {
            return Err(Error::domain("q", q, "(1, inf) with finite conjugate"));
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

/// Where a set of derivative magnitudes came from. Anything other than
/// `UserSupplied` means the certified claim rests on an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DerivativeOrigin {
    UserSupplied,
    FiniteDifference,
}

impl DerivativeOrigin {
    pub fn as_str(&self) -> &'static str {
        match self {
            DerivativeOrigin::UserSupplied => "user-supplied",
            DerivativeOrigin::FiniteDifference => "finite-difference",
        }
    }
}

/// Third-derivative magnitudes at the points the bounds need.
///
/// `d3a`/`d3b` are `|f'''(a)|`, `|f'''(b)|`. The quarter-point values
/// `|f'''((3a+b)/4)|` and `|f'''((a+3b)/4)|` are only needed by the s-concave
/// bound and may be absent otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeData {
    pub d3a: f64,
    pub d3b: f64,
    pub d3_quarter: Option<f64>,
    pub d3_three_quarter: Option<f64>,
    pub source: DerivativeOrigin,
}

fn check_magnitude(name: &'static str, v: f64) -> Result<f64> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(Error::domain(name, v, "[0, inf)"))
    }
}

impl DerivativeData {
    pub fn new(d3a: f64, d3b: f64, source: DerivativeOrigin) -> Result<Self> {
        Ok(Self {
            d3a: check_magnitude("d3a", d3a)?,
            d3b: check_magnitude("d3b", d3b)?,
            d3_quarter: None,
            d3_three_quarter: None,
            source,
        })
    }

    pub fn with_quarters(mut self, d3_quarter: f64, d3_three_quarter: f64) -> Result<Self> {
        self.d3_quarter = Some(check_magnitude("d3_quarter", d3_quarter)?);
        self.d3_three_quarter = Some(check_magnitude("d3_three_quarter", d3_three_quarter)?);
        Ok(self)
    }

    /// Samples `|g|` at the endpoints and, when `quarters` is set, at the two
    /// quarter points of `iv`.
    pub fn sample<G>(iv: &Interval, quarters: bool, source: DerivativeOrigin, g: G) -> Result<Self>
    where
        G: Fn(f64) -> Result<f64>,
    {
        let data = Self::new(g(iv.a())?.abs(), g(iv.b())?.abs(), source)?;
        if quarters {
            data.with_quarters(g(iv.quarter())?.abs(), g(iv.three_quarter())?.abs())
        } else {
            Ok(data)
        }
    }

    /// The same data with the roles of `a` and `b` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            d3a: self.d3b,
            d3b: self.d3a,
            d3_quarter: self.d3_three_quarter,
            d3_three_quarter: self.d3_quarter,
            source: self.source,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Classical,
    SConvexDirect,
    Holder,
    PowerMean,
    SConcave,
}

impl BoundKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundKind::Classical => "classical",
            BoundKind::SConvexDirect => "sconvex-direct",
            BoundKind::Holder => "holder",
            BoundKind::PowerMean => "power-mean",
            BoundKind::SConcave => "sconcave",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A certified upper bound on `|∫f - Simpson(f)|` over one interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundValue {
    pub kind: BoundKind,
    pub value: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_rejects_degenerate_and_reversed() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(f64::NAN, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
        let iv = Interval::new(-1.0, 3.0).unwrap();
        assert_eq!(iv.width(), 4.0);
        assert_eq!(iv.quarter(), 0.0);
        assert_eq!(iv.three_quarter(), 2.0);
        assert!(!iv.is_nonnegative());
    }

    #[test]
    fn split_covers_interval_exactly() {
        let iv = Interval::new(0.0, 1.0).unwrap();
        let parts = iv.split(7).unwrap();
        assert_eq!(parts.len(), 7);
        assert_eq!(parts[0].a(), 0.0);
        assert_eq!(parts[6].b(), 1.0);
        for w in parts.windows(2) {
            assert_eq!(w[0].b(), w[1].a());
        }
        assert!(iv.split(0).is_err());
    }

    #[test]
    fn s_parameter_domain() {
        assert!(SParameter::convex(0.0).is_err());
        assert!(SParameter::convex(1.0 + 1e-12).is_err());
        assert!(SParameter::concave(f64::NAN).is_err());
        assert_eq!(SParameter::convex(1.0).unwrap().value(), 1.0);
    }

    #[test]
    fn holder_pair_is_conjugate() {
        for q in [1.0001, 1.5, 2.0, 3.0, 5.0, 100.0, 1e6] {
            let hp = HolderPair::from_q(q).unwrap();
            assert!(
                (1.0 / hp.p() + 1.0 / hp.q() - 1.0).abs() <= 1e-12,
                "q = {q}"
            );
        }
        assert_eq!(HolderPair::from_q(2.0).unwrap().p(), 2.0);
        assert!(HolderPair::from_q(1.0).is_err());
        assert!(HolderPair::from_q(0.5).is_err());
    }

    #[test]
    fn derivative_data_validates_magnitudes() {
        let o = DerivativeOrigin::UserSupplied;
        assert!(DerivativeData::new(-1.0, 0.0, o).is_err());
        assert!(DerivativeData::new(f64::INFINITY, 0.0, o).is_err());
        let d = DerivativeData::new(1.0, 2.0, o).unwrap();
        assert!(d.with_quarters(-0.1, 1.0).is_err());
        let d = d.with_quarters(3.0, 4.0).unwrap().swapped();
        assert_eq!((d.d3a, d.d3b), (2.0, 1.0));
        assert_eq!((d.d3_quarter, d.d3_three_quarter), (Some(4.0), Some(3.0)));
    }
}
