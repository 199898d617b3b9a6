//! The built-in verification battery.
//!
//! Each suite yields one row per case and one aggregate check. Every suite
//! draws from its own RNG stream derived from `--seed`, so `--only` runs
//! reproduce the corresponding part of a full run exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use simpson_certify_core::analysis::{
    check_s_convexity, corpus, reference_kernel_constant, reference_moment_a, reference_moment_b,
    verify_lemma_identity,
};
use simpson_certify_core::inequality::{
    bound_classical, bound_holder, bound_powermean, bound_sconcave, bound_sconvex_direct,
    hadamard_sandwich, holder_gamma_ratio, holder_kernel_constant, ln_holder_gamma_ratio, moment_a,
    moment_b, CHECK_ATOL,
};
use simpson_certify_core::quadrature::{oracle_integral, simpson};
use simpson_certify_core::{
    ConvexityMode, DerivativeData, DerivativeOrigin, HolderPair, Integrand, Interval, Result,
    SParameter,
};

use super::constants::rel_err;
use crate::args::{Cli, Suite, VerifyArgs};
use crate::config::{parse_grid, RunConfig};
use crate::report::{num, row, Check, Report, Status};
use crate::{CliError, Completed, EXIT_OK, EXIT_VERIFY};

const ALL: [Suite; 8] = [
    Suite::Constants,
    Suite::Gamma,
    Suite::Lemma,
    Suite::Classical,
    Suite::Hadamard,
    Suite::Reductions,
    Suite::Domination,
    Suite::Concave,
];

struct Case {
    name: String,
    residual: f64,
    tolerance: f64,
    pass: bool,
    detail: String,
}

impl Case {
    fn within(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            tolerance,
            pass: residual <= tolerance,
            detail: String::new(),
        }
    }

    fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    fn failed(name: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Self {
            name: name.into(),
            residual: f64::NAN,
            tolerance: f64::NAN,
            pass: false,
            detail: err.to_string(),
        }
    }
}

/// Turns a fallible case into a failing row instead of aborting the suite.
fn attempt(name: &str, f: impl FnOnce() -> Result<Case>) -> Case {
    f().unwrap_or_else(|e| Case::failed(name, e))
}

struct Settings {
    s_grid: Vec<f64>,
    q_grid: Vec<f64>,
    intervals: usize,
    samples: usize,
    seed: u64,
}

pub fn run(cli: &Cli, args: &VerifyArgs) -> Result<Completed, CliError> {
    let s_grid = parse_grid("--s-grid", &args.s_grid)?;
    let q_grid = parse_grid("--q-grid", &args.q_grid)?;
    if s_grid.is_empty() || q_grid.is_empty() {
        return Err(CliError::usage("grids must not be empty"));
    }
    for &s in &s_grid {
        SParameter::convex(s).map_err(|e| CliError::usage(format!("--s-grid: {e}")))?;
    }
    if let Some(q) = q_grid.iter().find(|q| **q < 1.0) {
        return Err(CliError::usage(format!("--q-grid: q = {q} must be >= 1")));
    }
    if args.intervals == 0 {
        return Err(CliError::usage("--intervals must be at least 1"));
    }

    let mut config = RunConfig::new("verify", cli.output, cli.seed, cli.strict);
    config.s_grid = Some(s_grid.clone());
    config.q_grid = Some(q_grid.clone());
    config.samples = Some(args.samples);
    config.only = args.only.map(|s| suite_name(s).to_string());
    let mut report = Report::new("verify", config);

    let settings = Settings {
        s_grid,
        q_grid,
        intervals: args.intervals,
        samples: args.samples,
        seed: cli.seed,
    };
    let suites: Vec<Suite> = match args.only {
        Some(s) => vec![s],
        None => ALL.to_vec(),
    };
    for suite in suites {
        let cases = match suite {
            Suite::Constants => constants(),
            Suite::Gamma => gamma(),
            Suite::Lemma => lemma(),
            Suite::Classical => classical(),
            Suite::Hadamard => hadamard(),
            Suite::Reductions => reductions(&mut stream(&settings, suite)),
            Suite::Domination => domination(&settings, &mut stream(&settings, suite)),
            Suite::Concave => concave(&settings, &mut stream(&settings, suite)),
        };
        record(&mut report, suite, cases);
    }

    let code = exit_code(&report);
    Ok(Completed { report, code })
}

fn exit_code(report: &Report) -> i32 {
    if report.has_status(Status::Fail) {
        EXIT_VERIFY
    } else {
        EXIT_OK
    }
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Constants => "constants",
        Suite::Gamma => "gamma",
        Suite::Lemma => "lemma",
        Suite::Classical => "classical",
        Suite::Hadamard => "hadamard",
        Suite::Reductions => "reductions",
        Suite::Domination => "domination",
        Suite::Concave => "concave",
    }
}

fn stream(settings: &Settings, suite: Suite) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    rng.set_stream(suite as u64 + 1);
    rng
}

fn record(report: &mut Report, suite: Suite, cases: Vec<Case>) {
    let name = suite_name(suite);
    for c in &cases {
        report.results.push(row([
            ("suite", json!(name)),
            ("case", json!(c.name)),
            ("residual", num(c.residual)),
            ("tolerance", num(c.tolerance)),
            ("status", json!(if c.pass { "pass" } else { "fail" })),
            ("detail", json!(c.detail)),
        ]));
    }
    let failed = cases.iter().filter(|c| !c.pass).count();
    // worst case by residual relative to its own tolerance
    let worst = cases.iter().max_by(|x, y| score(x).total_cmp(&score(y)));
    let status = if failed == 0 {
        Status::Pass
    } else {
        Status::Fail
    };
    let mut check = Check::new(
        format!("verify: {name}"),
        status,
        format!("{} of {} cases passed", cases.len() - failed, cases.len()),
    );
    if let Some(w) = worst {
        check = check.measured(w.residual, w.tolerance);
        if !w.pass {
            check.detail.push_str(&format!("; worst: {}", w.name));
        }
    }
    report.checks.push(check);
}

fn score(c: &Case) -> f64 {
    if !c.pass && c.residual.is_nan() {
        return f64::INFINITY;
    }
    if c.tolerance > 0.0 {
        c.residual / c.tolerance
    } else if c.residual > 0.0 {
        f64::INFINITY
    } else {
        c.residual
    }
}

fn iv(a: f64, b: f64) -> Interval {
    Interval::new(a, b).expect("literal interval is valid")
}

fn random_interval(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Interval {
    loop {
        let x = lo + (hi - lo) * rng.random::<f64>();
        let y = lo + (hi - lo) * rng.random::<f64>();
        if (x - y).abs() > 1e-3 * (hi - lo) {
            return Interval::new(x.min(y), x.max(y)).expect("distinct finite endpoints");
        }
    }
}

fn user(a: f64, b: f64) -> Result<DerivativeData> {
    DerivativeData::new(a, b, DerivativeOrigin::UserSupplied)
}

fn constants() -> Vec<Case> {
    let mut out = Vec::new();
    for i in 1..=20 {
        let s = i as f64 * 0.05;
        let label = format!("A(s) vs reference, s={}", crate::report::cell(&num(s)));
        out.push(attempt(&label, || {
            Ok(Case::within(
                &label,
                rel_err(moment_a(s)?, reference_moment_a(s)?),
                1e-12,
            ))
        }));
        let label = format!("B(s) vs reference, s={}", crate::report::cell(&num(s)));
        out.push(attempt(&label, || {
            Ok(Case::within(
                &label,
                rel_err(moment_b(s)?, reference_moment_b(s)?),
                1e-12,
            ))
        }));
    }
    let exact = [
        ("A(1) = 1/640", 1.0 / 640.0),
        ("B(1) = 7/1920", 7.0 / 1920.0),
        ("A(1)+B(1) = 1/192", 1.0 / 192.0),
    ];
    for (i, (label, want)) in exact.into_iter().enumerate() {
        out.push(attempt(label, || {
            let (a, b) = (moment_a(1.0)?, moment_b(1.0)?);
            let value = [a, b, a + b][i];
            Ok(Case::within(label, rel_err(value, want), 1e-15))
        }));
    }
    out
}

fn gamma() -> Vec<Case> {
    let mut out = Vec::new();
    for p in [1.0, 1.5, 2.0, 3.0, 5.0, 10.0] {
        let label = format!("K(p) vs reference, p={}", crate::report::cell(&num(p)));
        out.push(attempt(&label, || {
            Ok(Case::within(
                &label,
                rel_err(holder_kernel_constant(p)?, reference_kernel_constant(p)?),
                1e-10,
            ))
        }));
    }
    for (label, p, want) in [
        ("K(1) = 1/192", 1.0, 1.0 / 192.0),
        ("K(2) = 1/13440", 2.0, 1.0 / 13440.0),
    ] {
        out.push(attempt(label, || {
            Ok(Case::within(
                label,
                rel_err(holder_kernel_constant(p)?, want),
                1e-13,
            ))
        }));
    }
    for p in [100.0, 250.0, 500.0] {
        let label = format!("no overflow, p={p}");
        out.push(attempt(&label, || {
            let k = holder_kernel_constant(p)?;
            let ln = ln_holder_gamma_ratio(p)?;
            let ok = k.is_finite() && k >= 0.0 && ln.is_finite();
            let mut c =
                Case::within(&label, 0.0, 0.0).detail(format!("K = {k:e}, ln ratio = {ln}"));
            c.pass = ok;
            Ok(c)
        }));
    }
    out
}

fn lemma() -> Vec<Case> {
    let mut out = Vec::new();
    for t in corpus::lemma_suite() {
        for domain in [iv(0.0, 1.0), iv(0.5, 2.5)] {
            let label = format!("{} on {domain}", t.name);
            out.push(attempt(&label, || {
                let r = verify_lemma_identity(&t.f, &t.d3, &domain)?;
                Ok(Case::within(&label, r.residual, 1e-10).detail(format!("lhs = {:e}", r.lhs)))
            }));
        }
    }
    out
}

fn classical() -> Vec<Case> {
    let label = "x^4 on [0, 1] attains the classical bound";
    let case = attempt(label, || {
        let domain = iv(0.0, 1.0);
        let f = Integrand::new("x^4", |x| x.powi(4));
        let actual = (oracle_integral(&f, &domain)? - simpson(&f, &domain)?).abs();
        let bound = bound_classical(&domain, 24.0)?.value;
        let residual = (actual - bound).abs().max((bound - 1.0 / 120.0).abs());
        Ok(Case::within(label, residual, 1e-14)
            .detail(format!("actual = {actual:e}, bound = {bound:e}")))
    });
    vec![case]
}

fn hadamard() -> Vec<Case> {
    let mut out = Vec::new();
    let domain = iv(0.0, 1.0);
    for s in [0.25, 0.5, 0.75, 1.0] {
        let f = Integrand::new("x^s", move |x| x.powf(s));
        let label = format!("x^{s} upper side attained");
        out.push(attempt(&label, || {
            let mean = oracle_integral(&f, &domain)? / domain.width();
            let c = hadamard_sandwich(&domain, s, f.eval(0.5)?, f.eval(0.0)?, f.eval(1.0)?, mean)?;
            Ok(Case::within(&label, c.upper_gap().abs(), 1e-12))
        }));
        let label = format!("x^{s} lower side holds");
        out.push(attempt(&label, || {
            let mean = oracle_integral(&f, &domain)? / domain.width();
            let c = hadamard_sandwich(&domain, s, f.eval(0.5)?, f.eval(0.0)?, f.eval(1.0)?, mean)?;
            Ok(Case::within(&label, -c.lower_gap(), CHECK_ATOL))
        }));
    }
    out
}

const REDUCTION_CASES: usize = 100;

/// `(interval, s, |f'''(a)|, |f'''(b)|)`.
type Draw = (Interval, f64, f64, f64);

fn reductions(rng: &mut ChaCha8Rng) -> Vec<Case> {
    let mut draws = Vec::with_capacity(REDUCTION_CASES);
    for _ in 0..REDUCTION_CASES {
        let domain = random_interval(rng, 0.0, 5.0);
        let s = 1.0 - rng.random::<f64>();
        let da = 10.0 * rng.random::<f64>();
        let db = 10.0 * rng.random::<f64>();
        draws.push((domain, s, da, db));
    }
    let worst = |label: &str, tol: f64, f: &dyn Fn(&Draw) -> Result<f64>| {
        attempt(label, || {
            let mut w = 0.0f64;
            for d in &draws {
                w = w.max(f(d)?);
            }
            Ok(Case::within(label, w, tol).detail(format!("{REDUCTION_CASES} random cases")))
        })
    };
    let q_values = [1.2, 1.5, 2.0, 3.0, 7.5];
    vec![
        worst(
            "power-mean at q=1 equals the direct bound",
            1e-15,
            &|(domain, s, da, db)| {
                let sp = SParameter::convex(*s)?;
                let d = user(*da, *db)?;
                Ok(rel_err(
                    bound_powermean(domain, &sp, 1.0, &d)?.value,
                    bound_sconvex_direct(domain, &sp, &d)?.value,
                ))
            },
        ),
        worst("holder at s=1 equals its closed form", 1e-14, &|(
            domain,
            _,
            da,
            db,
        )| {
            let s1 = SParameter::convex(1.0)?;
            let mut w = 0.0f64;
            for q in q_values {
                let got =
                    bound_holder(domain, &s1, &HolderPair::from_q(q)?, &user(*da, *db)?)?.value;
                w = w.max(rel_err(got, holder_s1(domain, q, *da, *db)?));
            }
            Ok(w)
        }),
        worst(
            "power-mean at s=1 equals its 3/10, 7/10 form",
            1e-14,
            &|(domain, _, da, db)| {
                let s1 = SParameter::convex(1.0)?;
                let mut w = 0.0f64;
                for q in q_values {
                    let got = bound_powermean(domain, &s1, q, &user(*da, *db)?)?.value;
                    w = w.max(rel_err(got, powermean_s1(domain, q, *da, *db)));
                }
                Ok(w)
            },
        ),
    ]
}

/// `(b-a)⁴/96 · (1/4)^{1/q} · G^{1/p} · [(a^q + 3b^q)^{1/q} + (3a^q + b^q)^{1/q}]`.
fn holder_s1(domain: &Interval, q: f64, da: f64, db: f64) -> Result<f64> {
    let p = q / (q - 1.0);
    let (x, y) = (da.powf(q), db.powf(q));
    Ok(domain.width().powi(4) / 96.0
        * 0.25f64.powf(1.0 / q)
        * holder_gamma_ratio(p)?.powf(1.0 / p)
        * ((x + 3.0 * y).powf(1.0 / q) + (3.0 * x + y).powf(1.0 / q)))
}

/// `(b-a)⁴/1152 · [((3a^q + 7b^q)/10)^{1/q} + ((7a^q + 3b^q)/10)^{1/q}]`.
fn powermean_s1(domain: &Interval, q: f64, da: f64, db: f64) -> f64 {
    let (x, y) = (da.powf(q), db.powf(q));
    domain.width().powi(4) / 1152.0
        * (((3.0 * x + 7.0 * y) / 10.0).powf(1.0 / q) + ((7.0 * x + 3.0 * y) / 10.0).powf(1.0 / q))
}

const DOMINATION_TOL: f64 = 1e-10;

fn domination(settings: &Settings, rng: &mut ChaCha8Rng) -> Vec<Case> {
    let domain = iv(0.0, 3.0);
    let mut out = Vec::new();
    for &s in &settings.s_grid {
        let panels: Vec<Interval> = (0..settings.intervals)
            .map(|_| random_interval(rng, 0.0, 3.0))
            .collect();
        for t in corpus::domination_suite(s) {
            let mut exponents = vec![1.0];
            exponents.extend(settings.q_grid.iter().copied().filter(|q| *q != 1.0));
            let sampled: Vec<(f64, Result<bool>)> = exponents
                .iter()
                .map(|&e| {
                    let v = check_s_convexity(
                        &t.d3.abs_pow(e),
                        &domain,
                        s,
                        ConvexityMode::Convex,
                        settings.samples,
                        settings.seed,
                    );
                    (e, v.map(|v| v.holds))
                })
                .collect();
            let sampler_ok = |e: f64| {
                sampled
                    .iter()
                    .any(|(x, r)| *x == e && matches!(r, Ok(true)))
            };
            let errors: Result<Vec<(f64, DerivativeData)>> = panels
                .iter()
                .map(|p| {
                    let actual = (oracle_integral(&t.f, p)? - simpson(&t.f, p)?).abs();
                    Ok((
                        actual,
                        user(t.d3.eval(p.a())?.abs(), t.d3.eval(p.b())?.abs())?,
                    ))
                })
                .collect();
            for &q in &settings.q_grid {
                let label = format!(
                    "{} s={} q={}",
                    t.name,
                    crate::report::cell(&num(s)),
                    crate::report::cell(&num(q))
                );
                let errors = match &errors {
                    Ok(e) => e,
                    Err(e) => {
                        out.push(Case::failed(&label, e));
                        continue;
                    }
                };
                out.push(attempt(&label, || {
                    let sp = SParameter::convex(s)?;
                    let mut worst = f64::NEG_INFINITY;
                    let mut ratios: Vec<f64> = Vec::new();
                    for (p, (actual, d)) in panels.iter().zip(errors) {
                        let direct = bound_sconvex_direct(p, &sp, d)?.value;
                        let pm = bound_powermean(p, &sp, q, d)?.value;
                        worst = worst.max(actual - direct).max(actual - pm);
                        if q > 1.0 {
                            let h = bound_holder(p, &sp, &HolderPair::from_q(q)?, d)?.value;
                            worst = worst.max(actual - h);
                            if pm > 0.0 {
                                ratios.push(h / pm);
                            }
                        }
                    }
                    let hyp = sampler_ok(1.0) && sampler_ok(q);
                    let mut c = Case::within(&label, worst, DOMINATION_TOL);
                    c.pass &= hyp;
                    let mut detail = format!(
                        "{} intervals; sampler {}",
                        panels.len(),
                        if hyp {
                            "confirmed s-convexity"
                        } else {
                            "did not confirm s-convexity"
                        }
                    );
                    if let (Some(lo), Some(hi)) = (
                        ratios.iter().copied().reduce(f64::min),
                        ratios.iter().copied().reduce(f64::max),
                    ) {
                        detail
                            .push_str(&format!("; holder/power-mean ratio in [{lo:.4}, {hi:.4}]"));
                    }
                    Ok(c.detail(detail))
                }));
            }
        }
    }
    out
}

fn concave(settings: &Settings, rng: &mut ChaCha8Rng) -> Vec<Case> {
    let mut out = Vec::new();
    let label = "value for c=1, q=2 on [0, 1]";
    out.push(attempt(label, || {
        let d = user(1.0, 1.0)?.with_quarters(1.0, 1.0)?;
        let b = bound_sconcave(
            &iv(0.0, 1.0),
            &SParameter::concave(1.0)?,
            &HolderPair::from_q(2.0)?,
            &d,
        )?
        .value;
        let want = (1.0 / 48.0) * (1.0f64 / 105.0).sqrt();
        Ok(Case::within(label, rel_err(b, want), 1e-12).detail(format!("bound = {b:e}")))
    }));
    let s1 = SParameter::concave(1.0).expect("s = 1 is valid");
    for c in [0.5, 1.0, 2.0] {
        let label = format!("f''' = {c}");
        let panels: Vec<Interval> = (0..20).map(|_| random_interval(rng, 0.0, 4.0)).collect();
        out.push(attempt(&label, || {
            let f = Integrand::new("c x^3 / 6", move |x| c * x.powi(3) / 6.0);
            let g = Integrand::new("c", move |_| c);
            let d = user(c, c)?.with_quarters(c, c)?;
            let mut worst = f64::NEG_INFINITY;
            let mut positive = true;
            let mut hyp = true;
            for q in [1.5, 2.0, 4.0] {
                let v = check_s_convexity(
                    &g.abs_pow(q),
                    &iv(0.0, 4.0),
                    1.0,
                    ConvexityMode::Concave,
                    settings.samples,
                    settings.seed,
                )?;
                hyp &= v.holds;
                let hp = HolderPair::from_q(q)?;
                for p in &panels {
                    let actual = (oracle_integral(&f, p)? - simpson(&f, p)?).abs();
                    let b = bound_sconcave(p, &s1, &hp, &d)?.value;
                    positive &= b > 0.0;
                    worst = worst.max(actual - b);
                }
            }
            let mut case = Case::within(&label, worst, DOMINATION_TOL).detail(format!(
                "{} intervals x 3 exponents; bounds positive: {positive}",
                panels.len()
            ));
            case.pass &= positive && hyp;
            Ok(case)
        }));
    }
    out
}
