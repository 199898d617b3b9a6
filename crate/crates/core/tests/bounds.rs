use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use simpson_certify_core::analysis::{check_s_convexity, corpus};
use simpson_certify_core::inequality::{
    bound_classical, bound_holder, bound_powermean, bound_sconcave, bound_sconvex_direct,
    holder_gamma_ratio, le_within,
};
use simpson_certify_core::quadrature::{oracle_integral, simpson};
use simpson_certify_core::{
    BoundChoice, Certifier, ConvexityMode, DerivativeData, DerivativeOrigin, DerivativeSource,
    HolderPair, Integrand, Interval, SParameter,
};

fn data(a: f64, b: f64) -> DerivativeData {
    DerivativeData::new(a, b, DerivativeOrigin::UserSupplied).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn random_interval(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Interval {
    loop {
        let x: f64 = lo + (hi - lo) * rng.random::<f64>();
        let y: f64 = lo + (hi - lo) * rng.random::<f64>();
        if (x - y).abs() > 1e-3 {
            return Interval::new(x.min(y), x.max(y)).unwrap();
        }
    }
}

/// Holder bound at s = 1 written in its specialised closed form.
fn holder_s1_closed(iv: &Interval, q: f64, da: f64, db: f64) -> f64 {
    let p = q / (q - 1.0);
    iv.width().powi(4) / 96.0
        * 0.25f64.powf(1.0 / q)
        * holder_gamma_ratio(p).unwrap().powf(1.0 / p)
        * ((da.powf(q) + 3.0 * db.powf(q)).powf(1.0 / q)
            + (3.0 * da.powf(q) + db.powf(q)).powf(1.0 / q))
}

/// Power-mean bound at s = 1 with weights 3/10 and 7/10.
fn powermean_s1_closed(iv: &Interval, q: f64, da: f64, db: f64) -> f64 {
    iv.width().powi(4) / 1152.0
        * (((3.0 * da.powf(q) + 7.0 * db.powf(q)) / 10.0).powf(1.0 / q)
            + ((7.0 * da.powf(q) + 3.0 * db.powf(q)) / 10.0).powf(1.0 / q))
}

#[test]
fn s1_bounds_match_specialised_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s1 = SParameter::convex(1.0).unwrap();
    for _ in 0..200 {
        let iv = random_interval(&mut rng, 0.0, 5.0);
        let (da, db) = (10.0 * rng.random::<f64>(), 10.0 * rng.random::<f64>());
        for q in [1.2, 1.5, 2.0, 3.0, 7.5] {
            let hp = HolderPair::from_q(q).unwrap();
            let h = bound_holder(&iv, &s1, &hp, &data(da, db)).unwrap().value;
            assert!(rel(h, holder_s1_closed(&iv, q, da, db)) <= 1e-14);
            let pm = bound_powermean(&iv, &s1, q, &data(da, db)).unwrap().value;
            assert!(rel(pm, powermean_s1_closed(&iv, q, da, db)) <= 1e-14);
        }
    }
}

#[test]
fn quartic_attains_the_classical_bound() {
    let iv = Interval::new(0.0, 1.0).unwrap();
    let f = Integrand::new("x^4", |x| x.powi(4));
    let err = (simpson(&f, &iv).unwrap() - 0.2).abs();
    let bound = bound_classical(&iv, 24.0).unwrap().value;
    assert!((err - bound).abs() <= 1e-14);

    let iv2 = Interval::new(0.0, 2.0).unwrap();
    let err2 = (simpson(&f, &iv2).unwrap() - 32.0 / 5.0).abs();
    assert!(rel(err2, bound_classical(&iv2, 24.0).unwrap().value) <= 1e-14);
}

#[test]
fn bounds_dominate_actual_error_on_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let domain = Interval::new(0.0, 3.0).unwrap();
    for s in [0.2, 0.5, 0.8, 1.0] {
        let sp = SParameter::convex(s).unwrap();
        for t in corpus::domination_suite(s) {
            let v = check_s_convexity(
                &t.d3.abs_pow(2.0),
                &domain,
                s,
                ConvexityMode::Convex,
                5_000,
                1,
            )
            .unwrap();
            assert!(v.holds, "{} at s = {s}", t.name);
            for _ in 0..20 {
                let iv = random_interval(&mut rng, 0.0, 3.0);
                let actual =
                    (oracle_integral(&t.f, &iv).unwrap() - simpson(&t.f, &iv).unwrap()).abs();
                let d = data(
                    t.d3.eval(iv.a()).unwrap().abs(),
                    t.d3.eval(iv.b()).unwrap().abs(),
                );
                let direct = bound_sconvex_direct(&iv, &sp, &d).unwrap().value;
                let holder = bound_holder(&iv, &sp, &HolderPair::from_q(2.0).unwrap(), &d)
                    .unwrap()
                    .value;
                let pm = bound_powermean(&iv, &sp, 2.0, &d).unwrap().value;
                for (name, b) in [("direct", direct), ("holder", holder), ("power-mean", pm)] {
                    assert!(
                        le_within(actual, b),
                        "{} {name} s={s} {iv}: {actual} > {b}",
                        t.name
                    );
                }
            }
        }
    }
}

#[test]
fn sconcave_bound_dominates_for_constant_third_derivative() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let s1 = SParameter::concave(1.0).unwrap();
    for c in [0.5, 1.0, 2.0] {
        let f = Integrand::new("c x^3 / 6", move |x| c * x.powi(3) / 6.0);
        for _ in 0..20 {
            let iv = random_interval(&mut rng, 0.0, 4.0);
            let actual = (oracle_integral(&f, &iv).unwrap() - simpson(&f, &iv).unwrap()).abs();
            let d = data(c, c).with_quarters(c, c).unwrap();
            for q in [1.5, 2.0, 4.0] {
                let b = bound_sconcave(&iv, &s1, &HolderPair::from_q(q).unwrap(), &d)
                    .unwrap()
                    .value;
                assert!(b > 0.0 && le_within(actual, b));
            }
        }
    }
}

#[test]
fn composite_converges_at_fourth_order() {
    let iv = Interval::new(0.0, 1.0).unwrap();
    let f = Integrand::new("exp(sin)", |x| x.sin().exp());
    let reference = oracle_integral(&f, &iv).unwrap();
    let c = Certifier::new(
        SParameter::convex(1.0).unwrap(),
        BoundChoice::SConvexDirect,
        DerivativeSource::FiniteDifference { scale: 1.0 },
    );
    let errs: Vec<f64> = [4, 8, 16, 32]
        .into_iter()
        .map(|n| (c.composite(&f, &iv, n).unwrap().estimate - reference).abs())
        .collect();
    for w in errs.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!(order >= 3.9, "{errs:?}");
    }
}
