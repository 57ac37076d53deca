//! Per-iteration metrics as comma-delimited text.
//!
//! ```text
//! iter,residual,true_error
//! 1,0.31,0.12
//! 2,0.07,0.03
//! # rho=0.5
//! # error_bound_c=2
//! ...
//! ```
//!
//! `true_error` is empty when no ground truth was tracked. Summary records are
//! `# key=value` lines after the data rows. Floats use the shortest
//! representation that parses back to the same value.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::recovery::RecoveryReport;

pub const METRICS_HEADER: &str = "iter,residual,true_error";

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRow {
    pub iter: usize,
    pub residual: f64,
    pub true_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MetricsFile {
    pub rows: Vec<MetricsRow>,
    pub summary: Vec<(String, String)>,
}

impl MetricsFile {
    pub fn summary_value(&self, key: &str) -> Option<&str> {
        self.summary.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn render_metrics(report: &RecoveryReport) -> String {
    let mut s = String::new();
    s.push_str(METRICS_HEADER);
    s.push('\n');
    let errors = report.true_error_history.as_deref();
    for (i, r) in report.residual_history.iter().enumerate() {
        let e = errors.and_then(|e| e.get(i).copied());
        let _ = writeln!(s, "{},{},{}", i + 1, r, opt(e));
    }
    let _ = writeln!(s, "# rho={}", report.rho);
    let _ = writeln!(s, "# error_bound_c={}", opt(report.error_bound_c));
    let _ = writeln!(s, "# guaranteed={}", report.guaranteed);
    let _ = writeln!(s, "# converged={}", report.converged);
    let _ = writeln!(s, "# iterations_run={}", report.iterations_run);
    let _ = writeln!(s, "# noise_norm={}", report.noise_norm);
    s
}

pub fn write_metrics(report: &RecoveryReport, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, render_metrics(report)).map_err(|e| Error::io(path, e))
}

pub fn parse_metrics(text: &str) -> Result<MetricsFile> {
    let mut lines = text.lines();
    if lines.next() != Some(METRICS_HEADER) {
        return Err(Error::Spec("metrics: missing header".into()));
    }
    let bad = |line: &str| Error::Spec(format!("metrics: malformed line {line:?}"));
    let mut out = MetricsFile::default();
    for line in lines {
        if let Some(rest) = line.strip_prefix('#') {
            let (k, v) = rest.trim().split_once('=').ok_or_else(|| bad(line))?;
            out.summary.push((k.to_string(), v.to_string()));
            continue;
        }
        let mut fields = line.split(',');
        let (Some(i), Some(r), Some(e), None) = (fields.next(), fields.next(), fields.next(), fields.next()) else {
            return Err(bad(line));
        };
        out.rows.push(MetricsRow {
            iter: i.parse().map_err(|_| bad(line))?,
            residual: r.parse().map_err(|_| bad(line))?,
            true_error: if e.is_empty() {
                None
            } else {
                Some(e.parse().map_err(|_| bad(line))?)
            },
        });
    }
    Ok(out)
}

pub fn read_metrics(path: impl AsRef<Path>) -> Result<MetricsFile> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_metrics(&text)
}
