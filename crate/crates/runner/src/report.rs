//! Claim rows and the two report files.
//!
//! `report.csv` columns, frozen: `experiment,claim,expected,measured,tolerance,pass`.
//! Timings live only in `summary.json` so the CSV is reproducible bit for bit.

use std::fmt::Display;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::ExperimentId;
use crate::error::Result;
use crate::tolerances::rel_close;

pub const CSV_COLUMNS: [&str; 6] = ["experiment", "claim", "expected", "measured", "tolerance", "pass"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub expected: String,
    pub measured: String,
    pub tolerance: String,
    pub pass: bool,
}

/// Shortest round-trip form of an `f64`.
pub fn float(x: f64) -> String {
    format!("{x:e}")
}

impl Claim {
    pub fn new(
        name: impl Into<String>,
        expected: impl Into<String>,
        measured: impl Into<String>,
        tolerance: impl Into<String>,
        pass: bool,
    ) -> Self {
        Self {
            name: name.into(),
            expected: expected.into(),
            measured: measured.into(),
            tolerance: tolerance.into(),
            pass,
        }
    }

    /// Exact equality of two displayable values.
    pub fn exact<V: PartialEq + Display>(name: impl Into<String>, expected: &V, measured: &V) -> Self {
        Self::new(name, expected.to_string(), measured.to_string(), "exact", expected == measured)
    }

    /// `|measured − expected| ≤ tol`.
    pub fn absolute(name: impl Into<String>, expected: f64, measured: f64, tol: f64) -> Self {
        let pass = (measured - expected).abs() <= tol;
        Self::new(name, float(expected), float(measured), format!("abs {}", float(tol)), pass)
    }

    /// `|measured − expected| ≤ tol · max(1, |expected|)`.
    pub fn relative(name: impl Into<String>, expected: f64, measured: f64, tol: f64) -> Self {
        let pass = rel_close(measured, expected, tol);
        Self::new(name, float(expected), float(measured), format!("rel {}", float(tol)), pass)
    }

    /// A deviation that must stay at or below `tol`.
    pub fn at_most(name: impl Into<String>, deviation: f64, tol: f64) -> Self {
        Self::new(name, "0", float(deviation), format!("≤ {}", float(tol)), deviation <= tol)
    }

    /// `passed` of `total` exact draws.
    pub fn sweep(name: impl Into<String>, passed: usize, total: usize) -> Self {
        Self::new(
            name,
            format!("{total}/{total}"),
            format!("{passed}/{total}"),
            "exact",
            passed == total && total > 0,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub experiment: ExperimentId,
    pub title: String,
    pub seed: u64,
    pub seconds: f64,
    pub claims: Vec<Claim>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        !self.claims.is_empty() && self.claims.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.pass)
    }
}

#[derive(Serialize)]
struct Summary<'a> {
    passed: bool,
    claims: usize,
    failed: usize,
    experiments: &'a [RunReport],
}

pub fn write_csv(path: &Path, reports: &[RunReport]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(CSV_COLUMNS)?;
    for r in reports {
        let id = r.experiment.to_string();
        for c in &r.claims {
            w.write_record([
                id.as_str(),
                &c.name,
                &c.expected,
                &c.measured,
                &c.tolerance,
                if c.pass { "true" } else { "false" },
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_summary(path: &Path, reports: &[RunReport]) -> Result<()> {
    let claims = reports.iter().map(|r| r.claims.len()).sum();
    let failed = reports.iter().map(|r| r.failures().count()).sum();
    let summary = Summary {
        passed: reports.iter().all(RunReport::passed),
        claims,
        failed,
        experiments: reports,
    };
    fs::write(path, serde_json::to_string_pretty(&summary)? + "\n")?;
    Ok(())
}

/// Writes `report.csv` and `summary.json` into `dir`, creating it if needed.
pub fn write_reports(dir: &Path, reports: &[RunReport]) -> Result<()> {
    fs::create_dir_all(dir)?;
    write_csv(&dir.join("report.csv"), reports)?;
    write_summary(&dir.join("summary.json"), reports)
}
