//! WebAssembly bindings for the browser demo in `www/`.

use wasm_bindgen::prelude::*;

pub mod ops;

#[wasm_bindgen(js_name = boundCurves)]
pub fn bound_curves(f: &str, d3: &str, a: f64, b: f64, q: f64, points: usize) -> String {
    ops::bound_curves(f, d3, a, b, q, points)
}

#[wasm_bindgen(js_name = adaptivePartition)]
pub fn adaptive_partition(
    f: &str,
    d3: &str,
    a: f64,
    b: f64,
    s: f64,
    tol: f64,
    max_depth: u32,
) -> String {
    ops::adaptive_partition(f, d3, a, b, s, tol, max_depth)
}

#[wasm_bindgen(js_name = kernelCurve)]
pub fn kernel_curve(points: usize) -> String {
    ops::kernel_curve(points)
}
