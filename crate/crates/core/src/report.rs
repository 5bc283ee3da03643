//! JSON verification reports shared by the CLI and the regression fixtures.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Informational record with no verdict.
    Info,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub witness: Value,
    pub wall_time_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub command: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub pyramid: String,
    pub checks: Vec<CheckRecord>,
    pub engine_version: String,
    pub order_fingerprint: String,
    /// The computed object itself (an element, a matrix, ...).
    pub payload: Value,
}

impl VerificationReport {
    pub fn new(command: &str, n: usize, pyramid: &str, order_fingerprint: String) -> Self {
        VerificationReport {
            command: command.into(),
            n,
            pyramid: pyramid.into(),
            checks: Vec::new(),
            engine_version: env!("CARGO_PKG_VERSION").into(),
            order_fingerprint,
            payload: Value::Null,
        }
    }

    /// Times `f` and records its verdict and witness.
    pub fn run_check<F>(&mut self, name: &str, f: F) -> Result<bool>
    where
        F: FnOnce() -> Result<(Status, Value)>,
    {
        let t = Instant::now();
        let (status, witness) = f()?;
        self.checks.push(CheckRecord {
            name: name.into(),
            status,
            witness,
            wall_time_ms: t.elapsed().as_secs_f64() * 1e3,
        });
        Ok(status != Status::Fail)
    }

    pub fn push(&mut self, name: &str, status: Status, witness: Value) {
        self.checks.push(CheckRecord {
            name: name.into(),
            status,
            witness,
            wall_time_ms: 0.0,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// The report with every timing zeroed, for byte comparisons.
    pub fn comparison_payload(&self) -> VerificationReport {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.wall_time_ms = 0.0;
        }
        r
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json_string() + "\n")?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} N={} pyramid={} order={} engine={}",
            self.command, self.n, self.pyramid, self.order_fingerprint, self.engine_version
        );
        let w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        let _ = writeln!(out, "{:<w$}  status  {:>10}  witness", "check", "ms");
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Info => "info",
            };
            let _ = writeln!(
                out,
                "{:<w$}  {:<6}  {:>10.2}  {}",
                c.name,
                status,
                c.wall_time_ms,
                summarize(&c.witness)
            );
        }
        out
    }
}

fn summarize(v: &Value) -> String {
    let s = match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if s.chars().count() > 100 {
        let cut: String = s.chars().take(97).collect();
        cut + "..."
    } else {
        s
    }
}

/// Reads a report fixture; any schema violation is an error.
pub fn load_fixture(path: &Path) -> Result<VerificationReport> {
    VerificationReport::load(path)
}

pub fn save_fixture(report: &VerificationReport, path: &Path) -> Result<()> {
    report.comparison_payload().save(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn status_and_table() {
        let mut r = VerificationReport::new("demo", 3, "subreg:3", "00".into());
        r.push("a", Status::Pass, json!("ok"));
        r.push("b", Status::Fail, json!({"x": 1}));
        assert!(!r.passed());
        assert_eq!(r.failures(), vec!["b"]);
        let t = r.render_table();
        assert!(t.contains("FAIL") && t.contains("{\"x\":1}"));
    }
}
