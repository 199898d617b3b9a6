use serde_json::{json, Value};

use simpson_certify_core::analysis::estimate_sup_d4;
use simpson_certify_core::inequality::{
    bound_classical, bound_holder, bound_powermean, bound_sconcave, bound_sconvex_direct,
    CHECK_ATOL, CHECK_RTOL,
};
use simpson_certify_core::quadrature::{oracle_integral, simpson};
use simpson_certify_core::{BoundValue, ConvexityMode, DerivativeOrigin, HolderPair};

use super::hypothesis::{self, any_hypothesis_failed};
use crate::args::{BoundsArgs, Cli};
use crate::config::{resolve, RunConfig};
use crate::report::{num, opt_num, row, Check, Report, Status};
use crate::{CliError, Completed, EXIT_HYPOTHESIS, EXIT_OK};

/// Points used to estimate `sup |f''''|` when it is not supplied.
const SUP_D4_SAMPLES: usize = 64;

struct Candidate {
    bound: BoundValue,
    q: Option<f64>,
    note: String,
    /// Exponent of `|f'''|` whose s-convexity the bound assumes.
    exponent: Option<f64>,
}

pub fn run(cli: &Cli, args: &BoundsArgs) -> Result<Completed, CliError> {
    let p = resolve(&args.problem)?;
    let mut report = Report::new(
        "bounds",
        RunConfig::new("bounds", cli.output, cli.seed, cli.strict).with_problem(&p),
    );
    let iv = p.interval;
    let concave = p.mode() == ConvexityMode::Concave;

    let d = hypothesis::single_interval_data(&p, concave)?;
    let runtime = |e: simpson_certify_core::Error| CliError::runtime(e.to_string());
    let estimate = simpson(&p.f, &iv).map_err(runtime)?;
    let reference = oracle_integral(&p.f, &iv).map_err(runtime)?;
    let actual = (reference - estimate).abs();

    let mut candidates = Vec::new();
    let mut skipped = Vec::new();
    let classical = match p.sup_d4 {
        Some(m) => Ok((m, "sup|f''''| supplied")),
        None => estimate_sup_d4(&p.f, &iv, SUP_D4_SAMPLES, p.fd_scale)
            .map(|m| (m, "sup|f''''| estimated on a grid")),
    };
    match classical.and_then(|(m, note)| Ok((bound_classical(&iv, m)?, note))) {
        Ok((bound, note)) => candidates.push(Candidate {
            bound,
            q: None,
            note: note.into(),
            exponent: None,
        }),
        Err(e) => skipped.push(Check::new(
            "bound: classical",
            Status::Skipped,
            e.to_string(),
        )),
    }

    let q = p.q;
    if concave {
        let hp = HolderPair::from_q(q).map_err(runtime)?;
        let bound = bound_sconcave(&iv, &p.s, &hp, &d).map_err(runtime)?;
        candidates.push(Candidate {
            bound,
            q: Some(q),
            note: String::new(),
            exponent: Some(q),
        });
    } else {
        let bound = bound_sconvex_direct(&iv, &p.s, &d).map_err(runtime)?;
        candidates.push(Candidate {
            bound,
            q: None,
            note: String::new(),
            exponent: Some(1.0),
        });
        if q > 1.0 {
            let hp = HolderPair::from_q(q).map_err(runtime)?;
            let bound = bound_holder(&iv, &p.s, &hp, &d).map_err(runtime)?;
            candidates.push(Candidate {
                bound,
                q: Some(q),
                note: String::new(),
                exponent: Some(q),
            });
        } else {
            skipped.push(Check::new("bound: holder", Status::Skipped, "needs q > 1"));
        }
        let bound = bound_powermean(&iv, &p.s, q, &d).map_err(runtime)?;
        let note = if q == 1.0 {
            "reduces to the direct s-convex bound"
        } else {
            ""
        };
        candidates.push(Candidate {
            bound,
            q: Some(q),
            note: note.into(),
            exponent: Some(q),
        });
    }

    // One sampler run per distinct exponent.
    let mut exponents: Vec<f64> = Vec::new();
    for c in &candidates {
        if let Some(e) = c.exponent {
            if !exponents.contains(&e) {
                exponents.push(e);
            }
        }
    }
    let mut hypotheses = Vec::new();
    for &e in &exponents {
        let users: Vec<&str> = candidates
            .iter()
            .filter(|c| c.exponent == Some(e))
            .map(|c| c.bound.kind.as_str())
            .collect();
        hypotheses.push((e, hypothesis::sampled(&p, e, cli.seed, &users.join(", "))));
    }

    report.checks.extend(hypothesis::domain_warning(&iv));
    report.checks.extend(hypothesis::origin_check(d.source));
    if p.sup_d4.is_none() && candidates.iter().any(|c| c.exponent.is_none()) {
        report.checks.push(Check::new(
            "sup|f''''|",
            Status::Unverified,
            "classical bound uses a grid estimate of sup|f''''|; give --sup-d4 to certify it",
        ));
    }
    for (_, h) in &hypotheses {
        report.checks.push(h.clone());
    }

    for c in &candidates {
        let value = c.bound.value;
        let ratio = if value > 0.0 {
            num(actual / value)
        } else {
            Value::Null
        };
        let slack = actual - value;
        let tol = CHECK_ATOL + CHECK_RTOL * value.abs();
        let dominates = slack <= tol;
        report.results.push(row([
            ("bound", json!(c.bound.kind.as_str())),
            ("q", opt_num(c.q)),
            ("value", num(value)),
            ("simpson", num(estimate)),
            ("oracle", num(reference)),
            ("actual_error", num(actual)),
            ("ratio", ratio),
            ("dominates", json!(dominates)),
            ("derivatives", json!(d.source.as_str())),
            ("note", json!(c.note)),
        ]));

        let trusted = d.source == DerivativeOrigin::UserSupplied
            && match c.exponent {
                Some(e) => hypotheses
                    .iter()
                    .any(|(x, h)| *x == e && h.status == Status::Pass),
                None => p.sup_d4.is_some(),
            };
        let status = match (dominates, trusted) {
            (true, _) => Status::Pass,
            (false, true) => Status::Fail,
            (false, false) => Status::Warn,
        };
        let detail = if dominates {
            String::new()
        } else {
            "actual error exceeds the bound".to_string()
        };
        report.checks.push(
            Check::new(format!("domination: {}", c.bound.kind), status, detail)
                .measured(slack, tol),
        );
    }
    report.checks.extend(skipped);

    let code = if cli.strict && any_hypothesis_failed(&report.checks) {
        EXIT_HYPOTHESIS
    } else {
        EXIT_OK
    };
    Ok(Completed { report, code })
}
