use serde_json::json;

use simpson_certify_core::analysis::{
    reference_kernel_constant, reference_moment_a, reference_moment_b,
};
use simpson_certify_core::inequality::{holder_kernel_constant, moment_a, moment_b};

use crate::args::{Cli, ConstantsArgs};
use crate::config::{parse_grid, RunConfig};
use crate::report::{num, row, Check, Report};
use crate::{CliError, Completed, EXIT_OK};

pub const MOMENT_TOL: f64 = 1e-12;
pub const KERNEL_TOL: f64 = 1e-10;

/// `(grid point, closed form, reference integral)`.
type Entry = (f64, f64, f64);

pub fn run(cli: &Cli, args: &ConstantsArgs) -> Result<Completed, CliError> {
    let s_grid = parse_grid("--s-grid", &args.s_grid)?;
    let p_grid = parse_grid("--p-grid", &args.p_grid)?;
    for &s in &s_grid {
        moment_a(s).map_err(|e| CliError::usage(format!("--s-grid: {e}")))?;
    }
    for &p in &p_grid {
        holder_kernel_constant(p).map_err(|e| CliError::usage(format!("--p-grid: {e}")))?;
    }

    let mut config = RunConfig::new("constants", cli.output, cli.seed, cli.strict);
    config.s_grid = Some(s_grid.clone());
    config.p_grid = Some(p_grid.clone());
    let mut report = Report::new("constants", config);

    let runtime = |e: simpson_certify_core::Error| CliError::runtime(e.to_string());
    let mut tables: Vec<(&str, f64, Vec<Entry>)> = vec![
        ("A", MOMENT_TOL, Vec::new()),
        ("B", MOMENT_TOL, Vec::new()),
        ("A+B", MOMENT_TOL, Vec::new()),
        ("K", KERNEL_TOL, Vec::new()),
    ];
    for &s in &s_grid {
        let (a, b) = (moment_a(s).map_err(runtime)?, moment_b(s).map_err(runtime)?);
        let (ra, rb) = (
            reference_moment_a(s).map_err(runtime)?,
            reference_moment_b(s).map_err(runtime)?,
        );
        tables[0].2.push((s, a, ra));
        tables[1].2.push((s, b, rb));
        tables[2].2.push((s, a + b, ra + rb));
    }
    for &p in &p_grid {
        let k = holder_kernel_constant(p).map_err(runtime)?;
        tables[3]
            .2
            .push((p, k, reference_kernel_constant(p).map_err(runtime)?));
    }

    for (quantity, tol, entries) in &tables {
        let mut worst = 0.0f64;
        for &(x, value, oracle) in entries {
            let rel = rel_err(value, oracle);
            worst = worst.max(rel);
            report.results.push(row([
                ("quantity", json!(quantity)),
                ("s_or_p", num(x)),
                ("value", num(value)),
                ("oracle_value", num(oracle)),
                ("rel_err", num(rel)),
            ]));
        }
        if !entries.is_empty() {
            let detail = format!(
                "{} grid points, relative error against the reference integral",
                entries.len()
            );
            report.checks.push(Check::against(
                format!("constants: {quantity}"),
                worst,
                *tol,
                detail,
            ));
        }
    }
    Ok(Completed {
        report,
        code: EXIT_OK,
    })
}

/// Relative error, or absolute error when the reference is zero.
pub fn rel_err(value: f64, reference: f64) -> f64 {
    let d = (value - reference).abs();
    if reference == 0.0 {
        d
    } else {
        d / reference.abs()
    }
}
