//! Report model and the three renderers.
//!
//! Every command fills the same [`Report`]. Plain and CSV output format
//! numbers exactly as the JSON serializer does, so the three views carry
//! identical values.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::OutputFormat;
use crate::config::RunConfig;

pub type Row = Map<String, Value>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unverified,
    Skipped,
    Warn,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unverified => "unverified",
            Status::Skipped => "skipped",
            Status::Warn => "warn",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status,
            residual: None,
            tolerance: None,
            detail: detail.into(),
        }
    }

    pub fn measured(mut self, residual: f64, tolerance: f64) -> Self {
        self.residual = Some(residual);
        self.tolerance = Some(tolerance);
        self
    }

    /// Pass when `residual <= tolerance`.
    pub fn against(
        name: impl Into<String>,
        residual: f64,
        tolerance: f64,
        detail: impl Into<String>,
    ) -> Self {
        let status = if residual <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Self::new(name, status, detail).measured(residual, tolerance)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub config: RunConfig,
    pub results: Vec<Row>,
    pub checks: Vec<Check>,
    pub version: &'static str,
}

/// Builds a row from `(key, value)` pairs, keeping their order.
pub fn row<const N: usize>(pairs: [(&str, Value); N]) -> Row {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// A JSON number, or `null` for non-finite input.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn opt_num(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

impl Report {
    pub fn new(command: &'static str, config: RunConfig) -> Self {
        Self {
            command,
            config,
            results: Vec::new(),
            checks: Vec::new(),
            version: env!("CARGO_PKG_VERSION"),
        }
    }

    pub fn has_status(&self, status: Status) -> bool {
        self.checks.iter().any(|c| c.status == status)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Plain => self.to_plain(),
            OutputFormat::Csv => self.to_csv(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "simpson-certify {} {}", self.version, self.command);
        let config = serde_json::to_value(&self.config).expect("config serializes");
        if let Value::Object(map) = config {
            let fields: Vec<String> = map
                .iter()
                .filter(|(_, v)| !v.is_null())
                .map(|(k, v)| format!("{k}={}", cell(v)))
                .collect();
            let _ = writeln!(out, "config: {}", fields.join(" "));
        }
        if self.has_status(Status::Unverified) {
            out.push_str("*** hypothesis unverified: see checks marked [unverified] ***\n");
        }
        if !self.results.is_empty() {
            out.push_str("\nresults:\n");
            for r in &self.results {
                let fields: Vec<String> =
                    r.iter().map(|(k, v)| format!("{k}={}", cell(v))).collect();
                let _ = writeln!(out, "  {}", fields.join("  "));
            }
        }
        if !self.checks.is_empty() {
            out.push_str("\nchecks:\n");
            for c in &self.checks {
                let _ = write!(out, "  [{}] {}", c.status.as_str(), c.name);
                if let (Some(r), Some(t)) = (c.residual, c.tolerance) {
                    let _ = write!(
                        out,
                        "  residual={}  tolerance={}",
                        cell(&num(r)),
                        cell(&num(t))
                    );
                }
                if !c.detail.is_empty() {
                    let _ = write!(out, "  {}", c.detail);
                }
                out.push('\n');
            }
        }
        let counts = [
            Status::Pass,
            Status::Fail,
            Status::Unverified,
            Status::Skipped,
            Status::Warn,
        ]
        .map(|s| (s, self.checks.iter().filter(|c| c.status == s).count()));
        let summary: Vec<String> = counts
            .iter()
            .filter(|(_, n)| *n > 0)
            .map(|(s, n)| format!("{n} {}", s.as_str()))
            .collect();
        if !summary.is_empty() {
            let _ = writeln!(out, "\nsummary: {}", summary.join(", "));
        }
        out
    }

    /// The results table, with a header built from the union of row keys
    /// in first-seen order.
    pub fn to_csv(&self) -> String {
        let mut header: Vec<&str> = Vec::new();
        for r in &self.results {
            for k in r.keys() {
                if !header.contains(&k.as_str()) {
                    header.push(k);
                }
            }
        }
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(Vec::new());
        w.write_record(&header).expect("in-memory write");
        for r in &self.results {
            let record: Vec<String> = header
                .iter()
                .map(|k| r.get(*k).map_or_else(String::new, cell))
                .collect();
            w.write_record(&record).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }
}

/// Text for one value: strings raw, `null` empty, everything else as JSON.
pub fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}
