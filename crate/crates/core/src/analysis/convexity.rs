//! Sampling test of `g(αx + (1-α)y) <= α^s g(x) + (1-α)^s g(y)`.
//!
//! A passing verdict is evidence, not proof: it says no violation was found
//! among the deterministic corner triples and `n_samples` seeded random ones.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::inequality::{check_s, ConvexityMode, Interval};
use crate::quadrature::Integrand;

/// Violations up to `CONVEXITY_TOLERANCE · (1 + |rhs|)` count as roundoff.
pub const CONVEXITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub x: f64,
    pub y: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexityVerdict {
    /// `true` iff the worst scaled violation is within tolerance.
    pub holds: bool,
    /// Largest `lhs - rhs` seen (concave mode: `rhs - lhs`); positive breaks
    /// the inequality.
    pub worst_violation: f64,
    pub witness: Witness,
    /// Triples checked, corners included.
    pub samples_used: usize,
    /// Sampled points where `g < 0`. The function class is usually taken to
    /// be nonnegative, so a nonzero count deserves a warning.
    pub negative_samples: usize,
    pub mode: ConvexityMode,
}

struct Tracker {
    worst: f64,
    worst_scaled: f64,
    witness: Witness,
    used: usize,
    negative: usize,
}

pub fn check_s_convexity(
    g: &Integrand,
    iv: &Interval,
    s: f64,
    mode: ConvexityMode,
    n_samples: usize,
    seed: u64,
) -> Result<ConvexityVerdict> {
    check_s(s)?;
    if !iv.is_nonnegative() {
        return Err(Error::Domain {
            name: "a",
            value: iv.a(),
            expected: "[0, inf) for s-convexity in the second sense",
        });
    }

    let mut t = Tracker {
        worst: f64::NEG_INFINITY,
        worst_scaled: f64::NEG_INFINITY,
        witness: Witness {
            x: iv.a(),
            y: iv.a(),
            alpha: 0.0,
        },
        used: 0,
        negative: 0,
    };

    let corners = [iv.a(), iv.midpoint(), iv.b()];
    for &x in &corners {
        for &y in &corners {
            for alpha in [0.0, 0.5, 1.0] {
                probe(g, s, mode, Witness { x, y, alpha }, &mut t)?;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n_samples {
        let x = iv.a() + iv.width() * rng.random::<f64>();
        let y = iv.a() + iv.width() * rng.random::<f64>();
        let alpha = rng.random::<f64>();
        probe(g, s, mode, Witness { x, y, alpha }, &mut t)?;
    }

    Ok(ConvexityVerdict {
        holds: t.worst_scaled <= 0.0,
        worst_violation: t.worst,
        witness: t.witness,
        samples_used: t.used,
        negative_samples: t.negative,
        mode,
    })
}

fn probe(g: &Integrand, s: f64, mode: ConvexityMode, w: Witness, t: &mut Tracker) -> Result<()> {
    let wrap = |e: Error| Error::Witness {
        x: w.x,
        y: w.y,
        alpha: w.alpha,
        source: Box::new(e),
    };
    let beta = 1.0 - w.alpha;
    let z = w.alpha * w.x + beta * w.y;
    let gz = g.eval(z).map_err(wrap)?;
    let gx = g.eval(w.x).map_err(wrap)?;
    let gy = g.eval(w.y).map_err(wrap)?;
    t.negative += [gx, gy, gz].iter().filter(|v| **v < 0.0).count();

    // 0^s = 0 for s > 0, so alpha in {0, 1} drops a term exactly
    let rhs = w.alpha.powf(s) * gx + beta.powf(s) * gy;
    let violation = match mode {
        ConvexityMode::Convex => gz - rhs,
        ConvexityMode::Concave => rhs - gz,
    };
    let scaled = violation - CONVEXITY_TOLERANCE * (1.0 + rhs.abs().max(gz.abs()));
    t.used += 1;
    if violation > t.worst {
        t.worst = violation;
        t.witness = w;
    }
    t.worst_scaled = t.worst_scaled.max(scaled);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn power_function_is_s_convex() {
        let s = 0.5;
        let g = Integrand::new("x^0.5", move |x| x.powf(s));
        let v = check_s_convexity(&g, &unit(), s, ConvexityMode::Convex, 100_000, 42).unwrap();
        assert!(v.holds);
        assert!(v.worst_violation <= 1e-12);
        assert_eq!(v.samples_used, 100_027);
        assert_eq!(v.negative_samples, 0);
    }

    #[test]
    fn linear_function_is_convex_with_zero_violation() {
        let g = Integrand::new("x", |x| x);
        let v = check_s_convexity(&g, &unit(), 1.0, ConvexityMode::Convex, 10_000, 7).unwrap();
        assert!(v.holds);
        assert!(v.worst_violation.abs() <= 1e-15);
    }

    #[test]
    fn concave_parabola_fails_convexity_at_the_corner() {
        let g = Integrand::new("1-x^2", |x| 1.0 - x * x);
        let v = check_s_convexity(&g, &unit(), 1.0, ConvexityMode::Convex, 1_000, 1).unwrap();
        assert!(!v.holds);
        assert!(v.worst_violation >= 0.1);
        assert!((v.worst_violation - 0.25).abs() <= 1e-15);
        assert_eq!(v.witness.alpha, 0.5);
        assert_eq!((v.witness.x - v.witness.y).abs(), 1.0);
        // and it is concave
        let c = check_s_convexity(&g, &unit(), 1.0, ConvexityMode::Concave, 1_000, 1).unwrap();
        assert!(c.holds);
    }

    #[test]
    fn negative_values_are_counted() {
        let g = Integrand::new("x-0.5", |x| x - 0.5);
        let v = check_s_convexity(&g, &unit(), 1.0, ConvexityMode::Convex, 100, 3).unwrap();
        assert!(v.negative_samples > 0);
    }

    #[test]
    fn seeded_runs_are_identical() {
        let g = Integrand::new("exp", f64::exp);
        let a = check_s_convexity(&g, &unit(), 0.3, ConvexityMode::Convex, 5_000, 99).unwrap();
        let b = check_s_convexity(&g, &unit(), 0.3, ConvexityMode::Convex, 5_000, 99).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_negative_domain_and_bad_s() {
        let g = Integrand::new("x", |x| x);
        let iv = Interval::new(-1.0, 1.0).unwrap();
        assert!(check_s_convexity(&g, &iv, 1.0, ConvexityMode::Convex, 10, 0).is_err());
        assert!(check_s_convexity(&g, &unit(), 0.0, ConvexityMode::Convex, 10, 0).is_err());
    }

    #[test]
    fn evaluation_errors_carry_the_triple() {
        let g = Integrand::new("1/(x-0.5)", |x| 1.0 / (x - 0.5));
        match check_s_convexity(&g, &unit(), 1.0, ConvexityMode::Convex, 10, 0) {
            Err(Error::Witness { source, .. }) => {
                assert!(matches!(*source, Error::NonFinite { .. }))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn satisfying_s1_implies_smaller_s_for_nonnegative_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = |x: f64| x * x;
        for _ in 0..10_000 {
            let (x, y, alpha): (f64, f64, f64) = (rng.random(), rng.random(), rng.random());
            let gz = g(alpha * x + (1.0 - alpha) * y);
            let rhs = |s: f64| alpha.powf(s) * g(x) + (1.0 - alpha).powf(s) * g(y);
            if gz <= rhs(1.0) {
                for s2 in [0.9, 0.5, 0.1] {
                    assert!(gz <= rhs(s2));
                }
            }
        }
    }
}
