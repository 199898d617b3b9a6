//! Composite and adaptive Simpson integration with certified error bounds.
//!
//! The single-interval bounds only need their hypothesis on the interval at
//! hand, and s-convexity on `[a, b]` restricts to every subinterval, so the
//! sum of per-panel bounds certifies the composite estimate.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{oracle_integral, simpson, Integrand};
use crate::analysis::estimate_d3;
use crate::error::{Error, Result};
use crate::inequality::{
    evaluate_bound, BoundChoice, BoundValue, DerivativeData, DerivativeOrigin, Interval, SParameter,
};

/// Hard cap on the number of panels an adaptive run may create.
pub const MAX_ADAPTIVE_PANELS: usize = 1 << 20;

/// How per-panel third-derivative magnitudes are obtained.
#[derive(Debug, Clone)]
pub enum DerivativeSource {
    /// A known `f'''`, evaluated at the points each bound needs.
    Exact(Integrand),
    /// Central finite differences of the integrand itself.
    FiniteDifference { scale: f64 },
}

impl DerivativeSource {
    pub fn origin(&self) -> DerivativeOrigin {
        match self {
            DerivativeSource::Exact(_) => DerivativeOrigin::UserSupplied,
            DerivativeSource::FiniteDifference { .. } => DerivativeOrigin::FiniteDifference,
        }
    }

    pub fn data(&self, f: &Integrand, iv: &Interval, quarters: bool) -> Result<DerivativeData> {
        match self {
            DerivativeSource::Exact(g) => {
                DerivativeData::sample(iv, quarters, self.origin(), |x| g.eval(x))
            }
            DerivativeSource::FiniteDifference { scale } => {
                DerivativeData::sample(iv, quarters, self.origin(), |x| estimate_d3(f, x, *scale))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Panel {
    pub interval: Interval,
    pub estimate: f64,
    pub bound: BoundValue,
    pub depth: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedResult {
    /// Composite Simpson value.
    pub estimate: f64,
    /// Sum of the per-panel bounds, left to right.
    pub certified_error: f64,
    /// Final partition, sorted by left endpoint.
    pub panels: Vec<Panel>,
    /// `|estimate - oracle|`, once [`CertifiedResult::attach_oracle`] ran.
    pub oracle_error: Option<f64>,
    pub derivative_origin: DerivativeOrigin,
}

impl CertifiedResult {
    fn from_panels(mut panels: Vec<Panel>, derivative_origin: DerivativeOrigin) -> Self {
        panels.sort_by(|x, y| x.interval.a().total_cmp(&y.interval.a()));
        let estimate = panels.iter().map(|p| p.estimate).sum();
        let certified_error = panels.iter().map(|p| p.bound.value).sum();
        Self {
            estimate,
            certified_error,
            panels,
            oracle_error: None,
            derivative_origin,
        }
    }

    /// Computes the reference integral over `iv` and records the deviation.
    /// Returns the oracle value.
    pub fn attach_oracle(&mut self, f: &Integrand, iv: &Interval) -> Result<f64> {
        let reference = oracle_integral(f, iv)?;
        self.oracle_error = Some((self.estimate - reference).abs());
        Ok(reference)
    }
}

/// Bound selection plus derivative source, applied panel by panel.
#[derive(Debug, Clone)]
pub struct Certifier {
    pub s: SParameter,
    pub bound: BoundChoice,
    pub derivatives: DerivativeSource,
}

impl Certifier {
    pub fn new(s: SParameter, bound: BoundChoice, derivatives: DerivativeSource) -> Self {
        Self {
            s,
            bound,
            derivatives,
        }
    }

    pub fn panel(&self, f: &Integrand, iv: &Interval, depth: u32) -> Result<Panel> {
        let estimate = simpson(f, iv)?;
        let data = self.derivatives.data(f, iv, self.bound.needs_quarters())?;
        let bound = evaluate_bound(&self.bound, iv, &self.s, &data)?;
        Ok(Panel {
            interval: *iv,
            estimate,
            bound,
            depth,
        })
    }

    /// `n` equal panels.
    pub fn composite(&self, f: &Integrand, iv: &Interval, n: usize) -> Result<CertifiedResult> {
        let panels = iv
            .split(n)?
            .iter()
            .enumerate()
            .map(|(index, sub)| {
                self.panel(f, sub, 0).map_err(|e| Error::Subinterval {
                    index,
                    a: sub.a(),
                    b: sub.b(),
                    source: Box::new(e),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CertifiedResult::from_panels(
            panels,
            self.derivatives.origin(),
        ))
    }

    /// Bisects the panel with the largest bound until the total certified
    /// bound is at most `tol`. Ties go to the leftmost panel.
    pub fn adaptive(
        &self,
        f: &Integrand,
        iv: &Interval,
        tol: f64,
        max_depth: u32,
    ) -> Result<CertifiedResult> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::Domain {
                name: "tol",
                value: tol,
                expected: "(0, inf)",
            });
        }
        if max_depth == 0 {
            return Err(Error::Domain {
                name: "max_depth",
                value: 0.0,
                expected: ">= 1",
            });
        }

        let origin = self.derivatives.origin();
        let root = self.panel(f, iv, 0)?;
        let mut total = root.bound.value;
        let mut open = BinaryHeap::new();
        let mut frozen = Vec::new();
        open.push(Ranked(root));
        let mut count = 1usize;

        loop {
            if total <= tol {
                let panels = drain(open, frozen);
                let result = CertifiedResult::from_panels(panels, origin);
                if result.certified_error <= tol {
                    return Ok(result);
                }
                // running total drifted below the exact sum; resume from it
                total = result.certified_error;
                (open, frozen) = refill(result.panels, max_depth);
            }
            let worst = match open.pop() {
                Some(Ranked(p)) if p.bound.value > 0.0 && count < MAX_ADAPTIVE_PANELS => p,
                other => {
                    if let Some(p) = other {
                        open.push(p);
                    }
                    let partial = CertifiedResult::from_panels(drain(open, frozen), origin);
                    return Err(Error::ToleranceUnreachable {
                        tol,
                        best: partial.certified_error,
                        partial: Box::new(partial),
                    });
                }
            };
            let (left, right) = worst.interval.bisect();
            let depth = worst.depth + 1;
            let lp = self.panel(f, &left, depth)?;
            let rp = self.panel(f, &right, depth)?;
            total += lp.bound.value + rp.bound.value - worst.bound.value;
            count += 1;
            for p in [lp, rp] {
                if depth < max_depth {
                    open.push(Ranked(p));
                } else {
                    frozen.push(p);
                }
            }
        }
    }
}

fn drain(open: BinaryHeap<Ranked>, mut frozen: Vec<Panel>) -> Vec<Panel> {
    frozen.extend(open.into_iter().map(|r| r.0));
    frozen
}

fn refill(panels: Vec<Panel>, max_depth: u32) -> (BinaryHeap<Ranked>, Vec<Panel>) {
    let (open, frozen): (Vec<_>, Vec<_>) = panels.into_iter().partition(|p| p.depth < max_depth);
    (open.into_iter().map(Ranked).collect(), frozen)
}

/// Max-heap order: larger bound first, then smaller left endpoint.
struct Ranked(Panel);

impl Ord for Ranked {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .bound
            .value
            .total_cmp(&other.0.bound.value)
            .then_with(|| other.0.interval.a().total_cmp(&self.0.interval.a()))
    }
}

impl PartialOrd for Ranked {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Ranked {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ranked {}
