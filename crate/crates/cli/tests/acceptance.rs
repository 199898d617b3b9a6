//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use simpson_certify_core::analysis::{
    check_s_convexity, corpus, reference_kernel_constant, reference_moment_a, reference_moment_b,
    verify_lemma_identity,
};
use simpson_certify_core::expr::parse;
use simpson_certify_core::inequality::{
    bound_classical, bound_holder, bound_powermean, bound_sconcave, bound_sconvex_direct,
    hadamard_sandwich, holder_gamma_ratio, holder_kernel_constant, moment_a, moment_b,
};
use simpson_certify_core::quadrature::{oracle_integral, simpson};
use simpson_certify_core::{
    ConvexityMode, DerivativeData, DerivativeOrigin, HolderPair, Integrand, Interval, SParameter,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn iv(a: f64, b: f64) -> Interval {
    Interval::new(a, b).unwrap()
}

fn random_interval(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Interval {
    loop {
        let x = lo + (hi - lo) * rng.random::<f64>();
        let y = lo + (hi - lo) * rng.random::<f64>();
        if (x - y).abs() > 1e-3 {
            return iv(x.min(y), x.max(y));
        }
    }
}

fn user(a: f64, b: f64) -> DerivativeData {
    DerivativeData::new(a, b, DerivativeOrigin::UserSupplied).unwrap()
}

fn simpson_error(f: &Integrand, domain: &Interval) -> f64 {
    (oracle_integral(f, domain).unwrap() - simpson(f, domain).unwrap()).abs()
}

fn constant_fidelity() -> Outcome {
    let mut worst = 0.0f64;
    for i in 1..=20 {
        let s = i as f64 * 0.05;
        let ea = rel(moment_a(s).unwrap(), reference_moment_a(s).unwrap());
        let eb = rel(moment_b(s).unwrap(), reference_moment_b(s).unwrap());
        ensure(ea <= 1e-12 && eb <= 1e-12, || {
            format!("s = {s}: rel errors {ea:e}, {eb:e}")
        })?;
        worst = worst.max(ea).max(eb);
    }
    let (a1, b1) = (moment_a(1.0).unwrap(), moment_b(1.0).unwrap());
    for (name, got, want) in [
        ("A(1)", a1, 1.0 / 640.0),
        ("B(1)", b1, 7.0 / 1920.0),
        ("A(1)+B(1)", a1 + b1, 1.0 / 192.0),
    ] {
        ensure(rel(got, want) <= 1e-15, || {
            format!("{name} = {got:e}, want {want:e}")
        })?;
    }
    Ok(format!(
        "20 s-points, worst rel err {worst:.1e}; A(1), B(1), A+B exact"
    ))
}

fn gamma_identity() -> Outcome {
    let mut worst = 0.0f64;
    for p in [1.0, 1.5, 2.0, 3.0, 5.0, 10.0] {
        let e = rel(
            holder_kernel_constant(p).unwrap(),
            reference_kernel_constant(p).unwrap(),
        );
        ensure(e <= 1e-10, || format!("p = {p}: rel err {e:e}"))?;
        worst = worst.max(e);
    }
    let k1 = holder_kernel_constant(1.0).unwrap();
    let k2 = holder_kernel_constant(2.0).unwrap();
    ensure(rel(k1, 1.0 / 192.0) <= 1e-13, || format!("K(1) = {k1:e}"))?;
    ensure(rel(k2, 1.0 / 13440.0) <= 1e-13, || format!("K(2) = {k2:e}"))?;
    for i in 1..=1000 {
        let p = i as f64 * 0.5;
        let k = holder_kernel_constant(p).unwrap();
        ensure(k.is_finite() && k >= 0.0, || format!("K({p}) = {k}"))?;
    }
    Ok(format!(
        "6 exponents, worst rel err {worst:.1e}; K(1), K(2) exact; finite up to p = 500"
    ))
}

fn lemma_identity() -> Outcome {
    let mut worst = 0.0f64;
    for t in corpus::lemma_suite() {
        for domain in [iv(0.0, 1.0), iv(0.5, 2.5)] {
            let r = verify_lemma_identity(&t.f, &t.d3, &domain)
                .unwrap()
                .residual;
            ensure(r <= 1e-10, || {
                format!("{} on {domain}: residual {r:e}", t.name)
            })?;
            worst = worst.max(r);
        }
    }
    Ok(format!(
        "5 functions x 2 intervals, worst residual {worst:.1e}"
    ))
}

fn extremal_classical() -> Outcome {
    let domain = iv(0.0, 1.0);
    let f = Integrand::new("x^4", |x| x.powi(4));
    let actual = simpson_error(&f, &domain);
    let bound = bound_classical(&domain, 24.0).unwrap().value;
    ensure((actual - bound).abs() <= 1e-14, || {
        format!("actual {actual:e} vs bound {bound:e}")
    })?;
    ensure((actual - 1.0 / 120.0).abs() <= 1e-14, || {
        format!("actual {actual:e} vs 1/120")
    })?;
    Ok(format!(
        "actual = bound = 1/120 within {:.1e}",
        (actual - bound).abs()
    ))
}

fn bound_domination() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let domain = iv(0.0, 3.0);
    let mut worst = f64::NEG_INFINITY;
    let mut checked = 0usize;
    for i in 1..=10 {
        let s = i as f64 / 10.0;
        let sp = SParameter::convex(s).unwrap();
        let panels: Vec<Interval> = (0..50)
            .map(|_| random_interval(&mut rng, 0.0, 3.0))
            .collect();
        for t in corpus::domination_suite(s) {
            for q in [1.0, 1.5, 2.0, 5.0] {
                let v = check_s_convexity(
                    &t.d3.abs_pow(q),
                    &domain,
                    s,
                    ConvexityMode::Convex,
                    10_000,
                    42,
                )
                .unwrap();
                ensure(v.holds, || {
                    format!("sampler rejects |f'''|^{q} for {} at s = {s}", t.name)
                })?;
            }
            for p in &panels {
                let actual = simpson_error(&t.f, p);
                let d = user(
                    t.d3.eval(p.a()).unwrap().abs(),
                    t.d3.eval(p.b()).unwrap().abs(),
                );
                let mut bounds = vec![(
                    "direct".to_string(),
                    bound_sconvex_direct(p, &sp, &d).unwrap().value,
                )];
                for q in [1.5, 2.0, 5.0] {
                    let hp = HolderPair::from_q(q).unwrap();
                    bounds.push((
                        format!("holder q={q}"),
                        bound_holder(p, &sp, &hp, &d).unwrap().value,
                    ));
                }
                for q in [1.0, 2.0, 5.0] {
                    bounds.push((
                        format!("power-mean q={q}"),
                        bound_powermean(p, &sp, q, &d).unwrap().value,
                    ));
                }
                for (name, b) in bounds {
                    let slack = b - actual;
                    ensure(slack >= -1e-10, || {
                        format!("{} {name} s={s} {p}: slack {slack:e}", t.name)
                    })?;
                    worst = worst.max(-slack);
                    checked += 1;
                }
            }
        }
    }
    Ok(format!(
        "{checked} bound evaluations over 10 s-values, min slack {:.1e}",
        -worst
    ))
}

fn holder_s1(domain: &Interval, q: f64, da: f64, db: f64) -> f64 {
    let p = q / (q - 1.0);
    let (x, y) = (da.powf(q), db.powf(q));
    domain.width().powi(4) / 96.0
        * 0.25f64.powf(1.0 / q)
        * holder_gamma_ratio(p).unwrap().powf(1.0 / p)
        * ((x + 3.0 * y).powf(1.0 / q) + (3.0 * x + y).powf(1.0 / q))
}

fn powermean_s1(domain: &Interval, q: f64, da: f64, db: f64) -> f64 {
    let (x, y) = (da.powf(q), db.powf(q));
    domain.width().powi(4) / 1152.0
        * (((3.0 * x + 7.0 * y) / 10.0).powf(1.0 / q) + ((7.0 * x + 3.0 * y) / 10.0).powf(1.0 / q))
}

fn reduction_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let s1 = SParameter::convex(1.0).unwrap();
    let (mut w_direct, mut w_holder, mut w_pm) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let domain = random_interval(&mut rng, 0.0, 5.0);
        let s = 1.0 - rng.random::<f64>();
        let d = user(10.0 * rng.random::<f64>(), 10.0 * rng.random::<f64>());
        let sp = SParameter::convex(s).unwrap();
        let e = rel(
            bound_powermean(&domain, &sp, 1.0, &d).unwrap().value,
            bound_sconvex_direct(&domain, &sp, &d).unwrap().value,
        );
        ensure(e <= 1e-15, || format!("q=1 reduction at s={s}: {e:e}"))?;
        w_direct = w_direct.max(e);
        for q in [1.2, 1.5, 2.0, 3.0, 7.5] {
            let h = bound_holder(&domain, &s1, &HolderPair::from_q(q).unwrap(), &d)
                .unwrap()
                .value;
            let eh = rel(h, holder_s1(&domain, q, d.d3a, d.d3b));
            let pm = bound_powermean(&domain, &s1, q, &d).unwrap().value;
            let ep = rel(pm, powermean_s1(&domain, q, d.d3a, d.d3b));
            ensure(eh <= 1e-14 && ep <= 1e-14, || {
                format!("s=1 closed forms at q={q}: {eh:e}, {ep:e}")
            })?;
            w_holder = w_holder.max(eh);
            w_pm = w_pm.max(ep);
        }
    }
    Ok(format!(
        "100 cases; worst rel err q=1 {w_direct:.1e}, holder {w_holder:.1e}, power-mean {w_pm:.1e}"
    ))
}

fn sconcave_path() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let s1 = SParameter::concave(1.0).unwrap();
    for c in [0.5, 1.0, 2.0] {
        let f = Integrand::new("c x^3/6", move |x| c * x.powi(3) / 6.0);
        let g = Integrand::new("c", move |_| c);
        let d = user(c, c).with_quarters(c, c).unwrap();
        for q in [1.5, 2.0, 4.0] {
            let v = check_s_convexity(
                &g.abs_pow(q),
                &iv(0.0, 4.0),
                1.0,
                ConvexityMode::Concave,
                10_000,
                42,
            )
            .unwrap();
            ensure(v.holds, || {
                format!("sampler rejects s-concavity of {c}^{q}")
            })?;
        }
        for _ in 0..20 {
            let domain = random_interval(&mut rng, 0.0, 4.0);
            let actual = simpson_error(&f, &domain);
            for q in [1.5, 2.0, 4.0] {
                let b = bound_sconcave(&domain, &s1, &HolderPair::from_q(q).unwrap(), &d)
                    .unwrap()
                    .value;
                ensure(b > 0.0 && b >= actual, || {
                    format!("c={c} q={q} {domain}: bound {b:e}, actual {actual:e}")
                })?;
            }
        }
    }
    let d = user(1.0, 1.0).with_quarters(1.0, 1.0).unwrap();
    let b = bound_sconcave(&iv(0.0, 1.0), &s1, &HolderPair::from_q(2.0).unwrap(), &d)
        .unwrap()
        .value;
    let want = (1.0 / 48.0) * (1.0f64 / 105.0).sqrt();
    ensure(rel(b, want) <= 1e-12, || {
        format!("q=p=2 value {b:e} vs {want:e}")
    })?;
    ensure((b - 2.0331e-3).abs() <= 1e-7, || {
        format!("q=p=2 value {b:e}")
    })?;
    Ok(format!(
        "3 constants x 20 intervals x 3 exponents dominate; q=p=2 value {b:.5e}"
    ))
}

fn hadamard() -> Outcome {
    let domain = iv(0.0, 1.0);
    let mut worst = 0.0f64;
    for s in [0.25, 0.5, 0.75, 1.0] {
        let f = Integrand::new("x^s", move |x| x.powf(s));
        let mean = oracle_integral(&f, &domain).unwrap();
        let c = hadamard_sandwich(&domain, s, 0.5f64.powf(s), 0.0, 1.0, mean).unwrap();
        ensure(c.lower_ok && c.upper_ok, || format!("s={s}: {c:?}"))?;
        ensure(c.upper_gap().abs() <= 1e-12, || {
            format!("s={s}: upper gap {:e}", c.upper_gap())
        })?;
        worst = worst.max(c.upper_gap().abs());
    }
    Ok(format!(
        "both sides hold for 4 exponents, upper equality residual {worst:.1e}"
    ))
}

fn binary(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_simpson-certify"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
    )
}

fn adaptive_certification() -> Outcome {
    let (code, stdout) = binary(&[
        "certify", "--f", "exp(x)", "--d3", "exp(x)", "--s", "1", "--tol", "1e-8", "--output",
        "json",
    ]);
    ensure(code == 0, || format!("exit code {code}"))?;
    let report: Value = serde_json::from_str(&stdout).map_err(|e| e.to_string())?;
    let total = report["results"]
        .as_array()
        .and_then(|r| r.iter().find(|row| row["scope"] == "total"))
        .ok_or("no total row")?;
    let err = total["certified_error"]
        .as_f64()
        .ok_or("no certified_error")?;
    let estimate = total["estimate"].as_f64().ok_or("no estimate")?;
    let deviation = (estimate - (std::f64::consts::E - 1.0)).abs();
    ensure(err <= 1e-8, || format!("certified_error {err:e}"))?;
    ensure(deviation <= err, || {
        format!("|estimate - (e-1)| = {deviation:e} > {err:e}")
    })?;
    Ok(format!(
        "certified_error {err:.3e} over {} panels, actual deviation {deviation:.1e}",
        total["panels"]
    ))
}

fn determinism_and_fuzz() -> Outcome {
    let runs: [&[&str]; 3] = [
        &["verify", "--seed", "9", "--output", "json"],
        &[
            "bounds", "--f", "exp(x)", "--d3", "exp(x)", "--seed", "9", "--output", "json",
        ],
        &[
            "certify", "--f", "sin(x)+2", "--d3", "-cos(x)", "--tol", "1e-7", "--seed", "9",
            "--output", "json",
        ],
    ];
    for args in runs {
        let (c1, first) = binary(args);
        let (c2, second) = binary(args);
        ensure(c1 == c2 && first == second && !first.is_empty(), || {
            format!("{args:?} differs between runs")
        })?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut errors = 0usize;
    for _ in 0..10_000 {
        let len = rng.random_range(0..48);
        let bytes: Vec<u8> = (0..len).map(|_| rng.random()).collect();
        let src = String::from_utf8_lossy(&bytes).into_owned();
        let result = catch_unwind(AssertUnwindSafe(|| parse(&src).map(|e| e.eval(0.5))));
        match result {
            Ok(Ok(_)) => {}
            Ok(Err(e)) => {
                ensure(e.offset() <= src.len(), || {
                    format!("offset past input for {src:?}")
                })?;
                errors += 1;
            }
            Err(_) => return Err(format!("parser panicked on {bytes:?}")),
        }
    }
    Ok(format!(
        "3 commands byte-identical across runs; 10000 random inputs, {errors} rejected, no panics"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("constant fidelity", constant_fidelity),
        ("gamma identity", gamma_identity),
        ("kernel identity", lemma_identity),
        ("extremal classical case", extremal_classical),
        ("bound domination sweep", bound_domination),
        ("reduction identities", reduction_identities),
        ("s-concave path", sconcave_path),
        ("hadamard sandwich", hadamard),
        ("adaptive certification", adaptive_certification),
        ("determinism and fuzzing", determinism_and_fuzz),
    ];
    let mut failed = 0;
    for (i, (name, criterion)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(criterion).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
