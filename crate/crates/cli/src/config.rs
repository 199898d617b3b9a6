use serde::Serialize;

use simpson_certify_core::expr::{compile, ParseError};
use simpson_certify_core::{ConvexityMode, Integrand, Interval, SParameter};

use crate::args::{Mode, OutputFormat, ProblemArgs};
use crate::CliError;

/// Echo of the effective configuration, written into every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub integrand: Option<String>,
    pub d3_expression: Option<String>,
    pub interval: Option<[f64; 2]>,
    pub s: Option<f64>,
    pub q: Option<f64>,
    pub mode: Option<Mode>,
    pub tol: Option<f64>,
    pub n: Option<usize>,
    pub bound: Option<String>,
    pub max_depth: Option<u32>,
    pub s_grid: Option<Vec<f64>>,
    pub q_grid: Option<Vec<f64>>,
    pub p_grid: Option<Vec<f64>>,
    pub only: Option<String>,
    pub samples: Option<usize>,
    pub output: OutputFormat,
    pub seed: u64,
    pub strict: bool,
}

impl RunConfig {
    pub fn new(command: &'static str, output: OutputFormat, seed: u64, strict: bool) -> Self {
        Self {
            command,
            integrand: None,
            d3_expression: None,
            interval: None,
            s: None,
            q: None,
            mode: None,
            tol: None,
            n: None,
            bound: None,
            max_depth: None,
            s_grid: None,
            q_grid: None,
            p_grid: None,
            only: None,
            samples: None,
            output,
            seed,
            strict,
        }
    }

    pub fn with_problem(mut self, p: &Problem) -> Self {
        self.integrand = Some(p.f_src.clone());
        self.d3_expression = p.d3_src.clone();
        self.interval = Some([p.interval.a(), p.interval.b()]);
        self.s = Some(p.s.value());
        self.q = Some(p.q);
        self.mode = Some(p.mode_flag);
        self.samples = Some(p.samples);
        self
    }
}

/// Validated inputs shared by `bounds` and `certify`.
pub struct Problem {
    pub f_src: String,
    pub f: Integrand,
    pub d3_src: Option<String>,
    pub d3: Option<Integrand>,
    pub interval: Interval,
    pub s: SParameter,
    pub q: f64,
    pub mode_flag: Mode,
    pub explicit: [Option<f64>; 4],
    pub sup_d4: Option<f64>,
    pub fd_scale: f64,
    pub samples: usize,
}

impl Problem {
    pub fn mode(&self) -> ConvexityMode {
        self.s.mode()
    }
}

pub fn resolve(args: &ProblemArgs) -> Result<Problem, CliError> {
    let f = compile_flag("--f", &args.f)?;
    let d3 = args
        .d3
        .as_deref()
        .map(|src| compile_flag("--d3", src))
        .transpose()?;

    let (a, b) = (args.interval[0], args.interval[1]);
    let interval = Interval::new(a, b).map_err(|e| CliError::usage(format!("--interval: {e}")))?;

    let mode = match args.mode {
        Mode::Convex => ConvexityMode::Convex,
        Mode::Concave => ConvexityMode::Concave,
    };
    let s = SParameter::new(args.s, mode).map_err(|e| CliError::usage(format!("--s: {e}")))?;

    let q = args.q.unwrap_or(2.0);
    if !(q.is_finite() && q >= 1.0) {
        return Err(CliError::usage(format!(
            "--q: q = {q} must be a finite number >= 1"
        )));
    }
    if mode == ConvexityMode::Concave && q <= 1.0 {
        return Err(CliError::usage(
            "--mode concave: the s-concave bound is Hölder-based and needs q > 1",
        ));
    }

    let explicit = [
        ("--d3a", args.d3a),
        ("--d3b", args.d3b),
        ("--d3-quarter", args.d3_quarter),
        ("--d3-three-quarter", args.d3_three_quarter),
    ];
    for (flag, v) in explicit {
        if let Some(v) = v {
            if !v.is_finite() {
                return Err(CliError::usage(format!("{flag}: value {v} is not finite")));
            }
        }
    }
    if let Some(m) = args.sup_d4 {
        if !(m.is_finite() && m >= 0.0) {
            return Err(CliError::usage(format!(
                "--sup-d4: {m} must be finite and >= 0"
            )));
        }
    }
    if !(args.fd_scale.is_finite() && args.fd_scale > 0.0) {
        return Err(CliError::usage(format!(
            "--fd-scale: {} must be > 0",
            args.fd_scale
        )));
    }

    Ok(Problem {
        f_src: args.f.clone(),
        f,
        d3_src: args.d3.clone(),
        d3,
        interval,
        s,
        q,
        mode_flag: args.mode,
        explicit: explicit.map(|(_, v)| v.map(f64::abs)),
        sup_d4: args.sup_d4,
        fd_scale: args.fd_scale,
        samples: args.samples,
    })
}

fn compile_flag(flag: &str, src: &str) -> Result<Integrand, CliError> {
    compile(src).map_err(|e| CliError::usage(describe_parse_error(flag, src, &e)))
}

/// Error message with a caret under the offending byte.
pub fn describe_parse_error(flag: &str, src: &str, e: &ParseError) -> String {
    let col = src
        .char_indices()
        .take_while(|(i, _)| *i < e.offset())
        .count();
    format!("{flag}: {e}\n  {src}\n  {}^", " ".repeat(col))
}

const MAX_GRID: usize = 10_000;

/// Parses `start:stop:step` or a comma list. Range grids always end on
/// `stop` when it lies within rounding of a step multiple.
pub fn parse_grid(flag: &str, src: &str) -> Result<Vec<f64>, CliError> {
    let bad = |msg: String| CliError::usage(format!("{flag}: {msg}"));
    let number = |t: &str| -> Result<f64, CliError> {
        let t = t.trim();
        match t.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(bad(format!("'{t}' is not a finite number"))),
        }
    };
    let values = if src.contains(':') {
        let parts: Vec<&str> = src.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("expected start:stop:step".into()));
        }
        let (start, stop, step) = (number(parts[0])?, number(parts[1])?, number(parts[2])?);
        if step <= 0.0 {
            return Err(bad("step must be positive".into()));
        }
        if stop < start {
            return Err(bad("stop must not be below start".into()));
        }
        let span = (stop - start) / step;
        let count = (span + 1e-9).floor();
        if count >= MAX_GRID as f64 {
            return Err(bad(format!("more than {MAX_GRID} points")));
        }
        let count = count as usize;
        let mut out: Vec<f64> = (0..=count).map(|i| tidy(start + i as f64 * step)).collect();
        if (span - count as f64).abs() <= 1e-9 {
            out[count] = stop;
        }
        out
    } else {
        let out: Vec<f64> = src.split(',').map(number).collect::<Result<_, _>>()?;
        if out.len() > MAX_GRID {
            return Err(bad(format!("more than {MAX_GRID} points")));
        }
        out
    };
    Ok(values)
}

/// Rounds away accumulated binary noise such as `0.30000000000000004`.
fn tidy(x: f64) -> f64 {
    let r: f64 = format!("{x:.12}").parse().expect("formatted float parses");
    if (r - x).abs() <= 1e-12 * x.abs().max(1.0) {
        r
    } else {
        x
    }
}
