use simpson_certify_core::analysis::{check_s_convexity, estimate_d3, CONVEXITY_TOLERANCE};
use simpson_certify_core::{DerivativeData, DerivativeOrigin, Interval};

use crate::config::Problem;
use crate::report::{cell, num, Check, Status};
use crate::CliError;

pub const HYPOTHESIS_PREFIX: &str = "hypothesis";

/// Third-derivative magnitudes at the endpoints (and quarter points when
/// asked), taking explicit values first, then `--d3`, then finite
/// differences.
pub fn single_interval_data(p: &Problem, quarters: bool) -> Result<DerivativeData, CliError> {
    let iv = &p.interval;
    let points = [iv.a(), iv.b(), iv.quarter(), iv.three_quarter()];
    let wanted = if quarters { 4 } else { 2 };
    let mut values = [0.0; 4];
    let mut estimated = false;
    for i in 0..wanted {
        values[i] = match (p.explicit[i], &p.d3) {
            (Some(v), _) => v,
            (None, Some(g)) => g
                .eval(points[i])
                .map_err(|e| CliError::runtime(format!("--d3: {e}")))?
                .abs(),
            (None, None) => {
                estimated = true;
                estimate_d3(&p.f, points[i], p.fd_scale)
                    .map_err(|e| CliError::runtime(format!("finite-difference f''': {e}")))?
                    .abs()
            }
        };
    }
    let origin = if estimated {
        DerivativeOrigin::FiniteDifference
    } else {
        DerivativeOrigin::UserSupplied
    };
    let data = DerivativeData::new(values[0], values[1], origin)
        .map_err(|e| CliError::runtime(e.to_string()))?;
    if quarters {
        data.with_quarters(values[2], values[3])
            .map_err(|e| CliError::runtime(e.to_string()))
    } else {
        Ok(data)
    }
}

pub fn origin_check(origin: DerivativeOrigin) -> Option<Check> {
    (origin == DerivativeOrigin::FiniteDifference).then(|| {
        Check::new(
            "derivatives",
            Status::Unverified,
            "hypothesis unverified: f''' estimated by finite differences, so the bounds rest on estimates",
        )
    })
}

pub fn domain_warning(iv: &Interval) -> Option<Check> {
    (iv.a() < 0.0).then(|| {
        Check::new(
            "domain",
            Status::Warn,
            "interval starts below 0; s-convexity is defined on [0, inf), so sampled hypothesis checks are skipped",
        )
    })
}

pub fn hypothesis_name(p: &Problem, exponent: f64) -> String {
    let power = if exponent == 1.0 {
        "|f'''|".to_string()
    } else {
        format!("|f'''|^{}", cell(&num(exponent)))
    };
    format!(
        "{HYPOTHESIS_PREFIX}: {power} {}-{} on {}",
        cell(&num(p.s.value())),
        p.mode().as_str(),
        p.interval
    )
}

/// Samples `|f'''|^exponent` for s-convexity (or s-concavity) on the
/// problem interval.
pub fn sampled(p: &Problem, exponent: f64, seed: u64, used_by: &str) -> Check {
    let name = hypothesis_name(p, exponent);
    let Some(d3) = &p.d3 else {
        return Check::new(
            name,
            Status::Unverified,
            format!("no --d3 expression to sample; needed by {used_by}"),
        );
    };
    if !p.interval.is_nonnegative() {
        return Check::new(name, Status::Skipped, "interval starts below 0");
    }
    let g = d3.abs_pow(exponent);
    match check_s_convexity(&g, &p.interval, p.s.value(), p.mode(), p.samples, seed) {
        Ok(v) => {
            let status = if v.holds { Status::Pass } else { Status::Fail };
            let mut detail = format!("{} triples; needed by {used_by}", v.samples_used);
            if !v.holds {
                let w = v.witness;
                detail.push_str(&format!(
                    "; witness x={} y={} alpha={}",
                    cell(&num(w.x)),
                    cell(&num(w.y)),
                    cell(&num(w.alpha))
                ));
            }
            Check::new(name, status, detail).measured(v.worst_violation, CONVEXITY_TOLERANCE)
        }
        Err(e) => Check::new(name, Status::Fail, format!("sampler error: {e}")),
    }
}

pub fn any_hypothesis_failed(checks: &[Check]) -> bool {
    checks
        .iter()
        .any(|c| c.status == Status::Fail && c.name.starts_with(HYPOTHESIS_PREFIX))
}
