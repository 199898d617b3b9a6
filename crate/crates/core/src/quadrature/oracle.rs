//! Adaptive composite Gauss–Legendre reference integration.
//!
//! A panel is accepted when its single-panel value agrees with the sum over
//! its two halves. Accepted panels are summed left to right with Neumaier
//! compensation.

use std::sync::OnceLock;

use super::Integrand;
use crate::error::{Error, Result};
use crate::inequality::Interval;

const ORDER: usize = 15;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// computed by Newton iteration on `P_n`.
pub fn gauss_legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre_rule(ORDER))
}

#[derive(Default, Clone, Copy)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Reference integrator settings.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    /// Accepted relative disagreement between a panel and its halves.
    pub rel_tol: f64,
    /// Absolute floor, relative to the initial estimate of `∫|f|`.
    pub abs_floor: f64,
    pub max_depth: u32,
    pub max_panels: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self {
            rel_tol: 1e-13,
            abs_floor: 1e-15,
            max_depth: 60,
            max_panels: 200_000,
        }
    }
}

impl Oracle {
    fn panel(&self, f: &Integrand, a: f64, b: f64) -> Result<(f64, f64)> {
        let (nodes, weights) = rule();
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = Neumaier::default();
        let mut abs = 0.0;
        for (x, w) in nodes.iter().zip(weights) {
            let v = f.eval(mid + half * x)?;
            sum.add(w * v);
            abs += w * v.abs();
        }
        Ok((half * sum.value(), half * abs))
    }

    pub fn integrate(&self, f: &Integrand, iv: &Interval) -> Result<f64> {
        let (whole, abs) = self.panel(f, iv.a(), iv.b())?;
        let floor = self.abs_floor * abs;
        let mut total = Neumaier::default();
        let mut panels = 0usize;
        // Depth-first with the left child on top, so panels are accepted in
        // left-to-right order.
        let mut stack = vec![(iv.a(), iv.b(), whole, 0u32)];
        while let Some((a, b, value, depth)) = stack.pop() {
            let m = 0.5 * (a + b);
            let (left, _) = self.panel(f, a, m)?;
            let (right, _) = self.panel(f, m, b)?;
            let refined = left + right;
            let diff = (refined - value).abs();
            panels += 1;
            let unresolvable = b - a <= 4.0 * f64::EPSILON * a.abs().max(b.abs());
            if diff <= self.rel_tol * refined.abs() || diff <= floor || unresolvable {
                total.add(refined);
                continue;
            }
            if depth >= self.max_depth || panels >= self.max_panels {
                total.add(refined);
                return Err(Error::OracleNonConvergence {
                    a,
                    b,
                    estimate: total.value(),
                });
            }
            stack.push((m, b, right, depth + 1));
            stack.push((a, m, left, depth + 1));
        }
        Ok(total.value())
    }
}

/// `∫ₐᵇ f` with the default [`Oracle`] settings.
pub fn oracle_integral(f: &Integrand, iv: &Interval) -> Result<f64> {
    Oracle::default().integrate(f, iv)
}
