//! The demo's operations as plain Rust returning JSON text, so they can be
//! tested natively and exported to JavaScript unchanged.

use serde_json::{json, Value};

use simpson_certify_core::analysis::kernel_p;
use simpson_certify_core::expr::compile;
use simpson_certify_core::inequality::{bound_holder, bound_powermean, bound_sconvex_direct};
use simpson_certify_core::quadrature::{oracle_integral, simpson};
use simpson_certify_core::{
    BoundChoice, Certifier, DerivativeData, DerivativeOrigin, DerivativeSource, Error, HolderPair,
    Integrand, Interval, SParameter,
};

const MAX_POINTS: usize = 2000;

fn failure(message: impl std::fmt::Display) -> String {
    json!({ "error": message.to_string() }).to_string()
}

fn expression(label: &str, src: &str) -> Result<Integrand, String> {
    compile(src).map_err(|e| format!("{label}: {e}"))
}

fn points(n: usize) -> usize {
    n.clamp(2, MAX_POINTS)
}

/// Direct, Hölder and power-mean bounds as functions of `s` on `(0, 1]`,
/// plus the actual Simpson error.
pub fn bound_curves(f_src: &str, d3_src: &str, a: f64, b: f64, q: f64, n: usize) -> String {
    let run = || -> Result<Value, String> {
        let f = expression("f", f_src)?;
        let d3 = expression("f'''", d3_src)?;
        let iv = Interval::new(a, b).map_err(|e| e.to_string())?;
        let hp = HolderPair::from_q(q).map_err(|e| e.to_string())?;
        let d = DerivativeData::sample(&iv, false, DerivativeOrigin::UserSupplied, |x| d3.eval(x))
            .map_err(|e| e.to_string())?;
        let actual = (oracle_integral(&f, &iv).map_err(|e| e.to_string())?
            - simpson(&f, &iv).map_err(|e| e.to_string())?)
        .abs();
        let n = points(n);
        let (mut s_values, mut direct, mut holder, mut power_mean) =
            (vec![], vec![], vec![], vec![]);
        for i in 1..=n {
            let s = i as f64 / n as f64;
            let sp = SParameter::convex(s).map_err(|e| e.to_string())?;
            s_values.push(s);
            direct.push(
                bound_sconvex_direct(&iv, &sp, &d)
                    .map_err(|e| e.to_string())?
                    .value,
            );
            holder.push(
                bound_holder(&iv, &sp, &hp, &d)
                    .map_err(|e| e.to_string())?
                    .value,
            );
            power_mean.push(
                bound_powermean(&iv, &sp, q, &d)
                    .map_err(|e| e.to_string())?
                    .value,
            );
        }
        Ok(json!({
            "s": s_values,
            "direct": direct,
            "holder": holder,
            "power_mean": power_mean,
            "actual": actual,
        }))
    };
    run().map_or_else(failure, |v| v.to_string())
}

/// Adaptive certified integration; returns the final partition together
/// with samples of `f` for plotting. An unreachable tolerance still returns
/// the best partition, flagged with `reached: false`.
pub fn adaptive_partition(
    f_src: &str,
    d3_src: &str,
    a: f64,
    b: f64,
    s: f64,
    tol: f64,
    max_depth: u32,
) -> String {
    let run = || -> Result<Value, String> {
        let f = expression("f", f_src)?;
        let d3 = expression("f'''", d3_src)?;
        let iv = Interval::new(a, b).map_err(|e| e.to_string())?;
        let sp = SParameter::convex(s).map_err(|e| e.to_string())?;
        let certifier = Certifier::new(sp, BoundChoice::SConvexDirect, DerivativeSource::Exact(d3));
        let (result, reached) = match certifier.adaptive(&f, &iv, tol, max_depth.min(24)) {
            Ok(r) => (r, true),
            Err(Error::ToleranceUnreachable { partial, .. }) => (*partial, false),
            Err(e) => return Err(e.to_string()),
        };
        let panels: Vec<Value> = result
            .panels
            .iter()
            .map(|p| json!({ "a": p.interval.a(), "b": p.interval.b(), "bound": p.bound.value, "depth": p.depth }))
            .collect();
        let n = 400;
        let curve: Vec<[f64; 2]> = (0..=n)
            .filter_map(|i| {
                let x = a + (b - a) * i as f64 / n as f64;
                f.eval(x).ok().map(|y| [x, y])
            })
            .collect();
        Ok(json!({
            "estimate": result.estimate,
            "certified_error": result.certified_error,
            "reached": reached,
            "panels": panels,
            "curve": curve,
        }))
    };
    run().map_or_else(failure, |v| v.to_string())
}

/// Samples of the Simpson error kernel `p(t)` on `[0, 1]`.
pub fn kernel_curve(n: usize) -> String {
    let n = points(n);
    let mut t = Vec::with_capacity(n + 1);
    let mut p = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let x = i as f64 / n as f64;
        t.push(x);
        p.push(kernel_p(x).expect("t lies in [0, 1]"));
    }
    json!({ "t": t, "p": p }).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn curves_end_at_the_s1_values() {
        let v = parse(&bound_curves("x^4/24", "x", 0.0, 1.0, 2.0, 10));
        let direct = v["direct"].as_array().unwrap();
        assert_eq!(direct.len(), 10);
        assert_eq!(v["s"][9], 1.0);
        assert!((direct[9].as_f64().unwrap() - 1.0 / 1152.0).abs() < 1e-16);
        let actual = v["actual"].as_f64().unwrap();
        for key in ["direct", "holder", "power_mean"] {
            for b in v[key].as_array().unwrap() {
                assert!(b.as_f64().unwrap() >= actual);
            }
        }
    }

    #[test]
    fn partition_meets_tolerance() {
        let v = parse(&adaptive_partition(
            "exp(x)", "exp(x)", 0.0, 1.0, 1.0, 1e-6, 20,
        ));
        assert_eq!(v["reached"], true);
        assert!(v["certified_error"].as_f64().unwrap() <= 1e-6);
        let panels = v["panels"].as_array().unwrap();
        assert_eq!(panels[0]["a"], 0.0);
        assert_eq!(panels[panels.len() - 1]["b"], 1.0);
        assert_eq!(v["curve"].as_array().unwrap().len(), 401);
    }

    #[test]
    fn unreachable_tolerance_keeps_partition() {
        let v = parse(&adaptive_partition(
            "x^7", "210*x^4", 0.0, 1.0, 1.0, 1e-40, 3,
        ));
        assert_eq!(v["reached"], false);
        assert_eq!(v["panels"].as_array().unwrap().len(), 8);
    }

    #[test]
    fn errors_are_reported_as_json() {
        for out in [
            bound_curves("x +", "1", 0.0, 1.0, 2.0, 10),
            bound_curves("x", "1", 1.0, 0.0, 2.0, 10),
            bound_curves("x", "1", 0.0, 1.0, 1.0, 10),
            adaptive_partition("x", "0", 0.0, 1.0, 2.0, 1e-3, 5),
        ] {
            assert!(parse(&out)["error"].is_string(), "{out}");
        }
    }

    #[test]
    fn kernel_samples() {
        let v = parse(&kernel_curve(4));
        assert_eq!(v["t"], json!([0.0, 0.25, 0.5, 0.75, 1.0]));
        assert!((v["p"][1].as_f64().unwrap() + 1.0 / 384.0).abs() < 1e-18);
        assert_eq!(v["p"][2], 0.0);
    }
}
