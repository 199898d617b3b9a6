use serde_json::{json, Value};

use simpson_certify_core::analysis::estimate_sup_d4;
use simpson_certify_core::quadrature::oracle_integral;
use simpson_certify_core::{
    BoundChoice, CertifiedResult, Certifier, ConvexityMode, DerivativeSource, Error, HolderPair,
};

use super::hypothesis::{self, any_hypothesis_failed};
use crate::args::{BoundFlag, CertifyArgs, Cli};
use crate::config::RunConfig;
use crate::config::{resolve, Problem};
use crate::report::{num, opt_num, row, Check, Report, Status};
use crate::{CliError, Completed, EXIT_HYPOTHESIS, EXIT_OK, EXIT_UNREACHABLE};

const SUP_D4_SAMPLES: usize = 256;

pub fn run(cli: &Cli, args: &CertifyArgs) -> Result<Completed, CliError> {
    let p = resolve(&args.problem)?;
    match (args.tol, args.n) {
        (None, None) => {
            return Err(CliError::usage(
                "certify needs --tol (adaptive) or --n (composite)",
            ))
        }
        (Some(_), Some(_)) => return Err(CliError::usage("--tol and --n are mutually exclusive")),
        (Some(t), None) if !(t.is_finite() && t > 0.0) => {
            return Err(CliError::usage(format!(
                "--tol: {t} must be a positive number"
            )))
        }
        (None, Some(0)) => return Err(CliError::usage("--n must be at least 1")),
        _ => {}
    }
    if p.explicit.iter().any(Option::is_some) {
        return Err(CliError::usage(
            "explicit --d3a/--d3b/--d3-quarter/--d3-three-quarter apply to one interval; give --d3 for certify",
        ));
    }
    let flag = args.bound.unwrap_or(match p.mode() {
        ConvexityMode::Convex => BoundFlag::Direct,
        ConvexityMode::Concave => BoundFlag::Concave,
    });

    let mut config = RunConfig::new("certify", cli.output, cli.seed, cli.strict).with_problem(&p);
    config.tol = args.tol;
    config.n = args.n;
    config.max_depth = Some(args.max_depth);
    config.bound = Some(flag_name(flag).to_string());
    let mut report = Report::new("certify", config);

    let (choice, sup_estimated) = choose_bound(&p, flag)?;
    let derivatives = match &p.d3 {
        Some(g) => DerivativeSource::Exact(g.clone()),
        None => DerivativeSource::FiniteDifference { scale: p.fd_scale },
    };
    report
        .checks
        .extend(hypothesis::domain_warning(&p.interval));
    report
        .checks
        .extend(hypothesis::origin_check(derivatives.origin()));
    if sup_estimated {
        report.checks.push(Check::new(
            "derivatives",
            Status::Unverified,
            "hypothesis unverified: sup|f''''| estimated on a grid",
        ));
    }
    if let Some(e) = exponent(&choice) {
        report
            .checks
            .push(hypothesis::sampled(&p, e, cli.seed, choice.kind().as_str()));
    }

    let certifier = Certifier::new(p.s, choice, derivatives);
    let outcome = match args.tol {
        Some(tol) => certifier.adaptive(&p.f, &p.interval, tol, args.max_depth),
        None => certifier.composite(&p.f, &p.interval, args.n.expect("validated above")),
    };
    let (result, mut code) = match outcome {
        Ok(r) => (r, EXIT_OK),
        Err(Error::ToleranceUnreachable { partial, .. }) => (*partial, EXIT_UNREACHABLE),
        Err(e) => return Err(CliError::runtime(e.to_string())),
    };

    let reference = if args.oracle {
        Some(oracle_integral(&p.f, &p.interval).map_err(|e| CliError::runtime(e.to_string()))?)
    } else {
        None
    };
    push_rows(&mut report, &result, reference);

    if let Some(tol) = args.tol {
        let mut c = Check::against(
            "tolerance",
            result.certified_error,
            tol,
            format!("{} panels", result.panels.len()),
        );
        if code == EXIT_UNREACHABLE {
            c.detail.push_str(&format!(
                "; unreachable within max depth {}",
                args.max_depth
            ));
        }
        report.checks.push(c);
    }
    if let Some(r) = reference {
        let err = (result.estimate - r).abs();
        let mut c = Check::against(
            "oracle",
            err,
            result.certified_error,
            "|estimate - oracle| against the certified error",
        );
        if c.status == Status::Fail && report.has_status(Status::Unverified) {
            c.status = Status::Warn;
        }
        report.checks.push(c);
    }

    if code == EXIT_OK && cli.strict && any_hypothesis_failed(&report.checks) {
        code = EXIT_HYPOTHESIS;
    }
    Ok(Completed { report, code })
}

fn flag_name(flag: BoundFlag) -> &'static str {
    match flag {
        BoundFlag::Classical => "classical",
        BoundFlag::Direct => "direct",
        BoundFlag::Holder => "holder",
        BoundFlag::PowerMean => "power-mean",
        BoundFlag::Concave => "concave",
    }
}

fn choose_bound(p: &Problem, flag: BoundFlag) -> Result<(BoundChoice, bool), CliError> {
    let concave = p.mode() == ConvexityMode::Concave;
    let holder = || HolderPair::from_q(p.q).map_err(|e| CliError::usage(format!("--q: {e}")));
    match flag {
        BoundFlag::Direct | BoundFlag::PowerMean if concave => Err(CliError::usage(format!(
            "--bound {}: not available in concave mode; use --bound concave or classical",
            flag_name(flag)
        ))),
        BoundFlag::Concave if !concave => {
            Err(CliError::usage("--bound concave needs --mode concave"))
        }
        BoundFlag::Holder if concave => Err(CliError::usage(
            "--bound holder: not available in concave mode; use --bound concave or classical",
        )),
        BoundFlag::Holder if p.q <= 1.0 => Err(CliError::usage("--bound holder needs q > 1")),
        BoundFlag::Direct => Ok((BoundChoice::SConvexDirect, false)),
        BoundFlag::PowerMean => Ok((BoundChoice::PowerMean { q: p.q }, false)),
        BoundFlag::Holder => Ok((BoundChoice::Holder(holder()?), false)),
        BoundFlag::Concave => Ok((BoundChoice::SConcave(holder()?), false)),
        BoundFlag::Classical => match p.sup_d4 {
            Some(m) => Ok((BoundChoice::Classical { sup_d4: m }, false)),
            None => {
                let m = estimate_sup_d4(&p.f, &p.interval, SUP_D4_SAMPLES, p.fd_scale)
                    .map_err(|e| CliError::runtime(format!("estimating sup|f''''|: {e}")))?;
                Ok((BoundChoice::Classical { sup_d4: m }, true))
            }
        },
    }
}

fn exponent(choice: &BoundChoice) -> Option<f64> {
    match choice {
        BoundChoice::Classical { .. } => None,
        BoundChoice::SConvexDirect => Some(1.0),
        BoundChoice::PowerMean { q } => Some(*q),
        BoundChoice::Holder(hp) | BoundChoice::SConcave(hp) => Some(hp.q()),
    }
}

fn push_rows(report: &mut Report, result: &CertifiedResult, reference: Option<f64>) {
    let (a, b) = match (result.panels.first(), result.panels.last()) {
        (Some(first), Some(last)) => (first.interval.a(), last.interval.b()),
        _ => (f64::NAN, f64::NAN),
    };
    report.results.push(row([
        ("scope", json!("total")),
        ("index", Value::Null),
        ("a", num(a)),
        ("b", num(b)),
        ("depth", Value::Null),
        ("estimate", num(result.estimate)),
        ("certified_error", num(result.certified_error)),
        ("panels", json!(result.panels.len())),
        ("derivatives", json!(result.derivative_origin.as_str())),
        ("oracle", opt_num(reference)),
        (
            "oracle_error",
            opt_num(reference.map(|r| (result.estimate - r).abs())),
        ),
    ]));
    for (i, panel) in result.panels.iter().enumerate() {
        report.results.push(row([
            ("scope", json!("panel")),
            ("index", json!(i)),
            ("a", num(panel.interval.a())),
            ("b", num(panel.interval.b())),
            ("depth", json!(panel.depth)),
            ("estimate", num(panel.estimate)),
            ("certified_error", num(panel.bound.value)),
        ]));
    }
}
