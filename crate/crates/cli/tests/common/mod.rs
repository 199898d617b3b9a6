#![allow(dead_code)]

use serde_json::Value;
use simpson_certify::{run, Outcome};

pub fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("simpson-certify").chain(args.iter().copied()))
}

/// Runs with `--output json` and parses stdout.
pub fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--output", "json"]);
    let out = cli(&full);
    let v = serde_json::from_str(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{args:?}: {e}\nstdout: {}\nstderr: {}",
            out.stdout, out.stderr
        )
    });
    (out.code, v)
}

pub fn rows<'a>(report: &'a Value, key: &str, value: &str) -> Vec<&'a Value> {
    report["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r[key] == value)
        .collect()
}

pub fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"].as_str().unwrap().starts_with(name))
        .unwrap_or_else(|| panic!("no check {name}"))
}

pub fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
