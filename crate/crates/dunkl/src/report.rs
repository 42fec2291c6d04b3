//! Results of verification runs: check records, constant-refinement traces,
//! and deterministic rendering to report files.
//!
//! A run produces a [`RunReport`]: a flat list of [`CheckRecord`]s — one per
//! verified statement, each carrying the measured value, the bound it was
//! compared against, and the outcome — plus [`ConstantTrace`] rows recording
//! how each empirical constant moves under refinement (grid doubling,
//! schedule doubling, seed changes). Nothing here computes; the suites in
//! [`crate::suites`] fill a report and this module renders it.
//!
//! # Files
//!
//! [`RunReport::write_dir`] emits four files into the output directory:
//!
//! * `checks.csv` — columns `suite, check, statement, parameters, value,
//!   bound, pass`; one row per check, insertion order.
//! * `constants.csv` — columns `suite, constant, parameters, refinement,
//!   value`; the raw material for refinement plots.
//! * `summary.txt` — human-readable digest: configuration echo, per-suite
//!   tallies, every check with its numbers, failures called out, and the
//!   constant traces grouped by constant.
//! * `report.toml` — the full report, serialized; [`RunReport::load_dir`]
//!   reads it back so a previous run can be re-rendered without recomputing.
//!
//! # Determinism
//!
//! Rendering is pure: records are written in insertion order, floats are
//! formatted with the shortest round-trip representation, and no timestamps
//! or machine identifiers appear anywhere. Identical runs therefore produce
//! byte-identical files, and `write_dir` after `load_dir` reproduces the
//! original files exactly.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Outcome of one verified statement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    /// Suite that produced the check (e.g. `transform`).
    pub suite: String,
    /// Short machine-friendly check name (e.g. `round_trip_even_envelope`).
    pub name: String,
    /// Self-contained statement of what was verified, in plain language.
    pub statement: String,
    /// Parameter set as `key=value` pairs separated by single spaces.
    pub parameters: String,
    /// Measured quantity: a residual, a ratio, or an empirical constant.
    pub value: f64,
    /// Bound or tolerance the value was compared against.
    pub bound: f64,
    /// Whether the check passed.
    pub pass: bool,
}

impl CheckRecord {
    /// Record for a check that passes when `value <= bound` and the value is
    /// finite.
    pub fn le(
        suite: impl Into<String>,
        name: impl Into<String>,
        statement: impl Into<String>,
        parameters: impl Into<String>,
        value: f64,
        bound: f64,
    ) -> Self {
        Self {
            suite: suite.into(),
            name: name.into(),
            statement: statement.into(),
            parameters: parameters.into(),
            value,
            bound,
            pass: value.is_finite() && value <= bound,
        }
    }

    /// Record for a check that passes when `value >= bound` and the value is
    /// finite.
    pub fn ge(
        suite: impl Into<String>,
        name: impl Into<String>,
        statement: impl Into<String>,
        parameters: impl Into<String>,
        value: f64,
        bound: f64,
    ) -> Self {
        Self {
            suite: suite.into(),
            name: name.into(),
            statement: statement.into(),
            parameters: parameters.into(),
            value,
            bound,
            pass: value.is_finite() && value >= bound,
        }
    }

    /// Record for a check that passes when the value is finite (the bound
    /// column stores a reference scale for context, not a hard limit).
    pub fn finite(
        suite: impl Into<String>,
        name: impl Into<String>,
        statement: impl Into<String>,
        parameters: impl Into<String>,
        value: f64,
        reference: f64,
    ) -> Self {
        Self {
            suite: suite.into(),
            name: name.into(),
            statement: statement.into(),
            parameters: parameters.into(),
            value,
            bound: reference,
            pass: value.is_finite(),
        }
    }
}

/// One sample of an empirical constant along a refinement axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantTrace {
    /// Suite that measured the constant.
    pub suite: String,
    /// Constant name (e.g. `weak_type_ratio`).
    pub constant: String,
    /// Fixed parameters of the measurement.
    pub parameters: String,
    /// Refinement coordinate, `axis=level` (e.g. `grid=256`, `radii=24`).
    pub refinement: String,
    /// Measured value at this refinement level.
    pub value: f64,
}

/// A complete verification run: configuration echo, checks, and traces.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// Configuration echo shown at the top of `summary.txt` (sorted by key).
    pub meta: BTreeMap<String, String>,
    /// All checks, in execution order.
    pub checks: Vec<CheckRecord>,
    /// All constant-trace samples, in execution order.
    pub traces: Vec<ConstantTrace>,
}

impl RunReport {
    /// Empty report.
    pub fn new() -> Self {
        Self::default()
    }

    /// Record a configuration key for the summary header.
    pub fn set_meta(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.meta.insert(key.into(), value.into());
    }

    /// Append a check record.
    pub fn push_check(&mut self, record: CheckRecord) {
        self.checks.push(record);
    }

    /// Append a constant-trace sample.
    pub fn push_trace(&mut self, trace: ConstantTrace) {
        self.traces.push(trace);
    }

    /// Move all checks and traces of `other` to the end of this report.
    pub fn append(&mut self, mut other: RunReport) {
        self.checks.append(&mut other.checks);
        self.traces.append(&mut other.traces);
        for (k, v) in other.meta {
            self.meta.entry(k).or_insert(v);
        }
    }

    /// Whether every check passed.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// The failing checks, in execution order.
    pub fn failures(&self) -> Vec<&CheckRecord> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    /// Process exit status for this report: 0 if everything passed, 2 if any
    /// check failed (usage errors exit 1 before a report exists).
    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            2
        }
    }

    /// Render `checks.csv`.
    pub fn checks_csv(&self) -> String {
        let mut out = String::from("suite,check,statement,parameters,value,bound,pass\n");
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                csv_field(&c.suite),
                csv_field(&c.name),
                csv_field(&c.statement),
                csv_field(&c.parameters),
                fmt_float(c.value),
                fmt_float(c.bound),
                if c.pass { "pass" } else { "FAIL" },
            );
        }
        out
    }

    /// Render `constants.csv`.
    pub fn constants_csv(&self) -> String {
        let mut out = String::from("suite,constant,parameters,refinement,value\n");
        for t in &self.traces {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                csv_field(&t.suite),
                csv_field(&t.constant),
                csv_field(&t.parameters),
                csv_field(&t.refinement),
                fmt_float(t.value),
            );
        }
        out
    }

    /// Render `summary.txt`.
    pub fn summary_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "verification run summary");
        let _ = writeln!(out, "========================");
        if !self.meta.is_empty() {
            let _ = writeln!(out);
            let _ = writeln!(out, "configuration");
            for (k, v) in &self.meta {
                let _ = writeln!(out, "  {k} = {v}");
            }
        }

        let failed = self.failures().len();
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "checks: {} total, {} passed, {} failed",
            self.checks.len(),
            self.checks.len() - failed,
            failed
        );

        for suite in self.suite_order() {
            let suite_checks: Vec<&CheckRecord> =
                self.checks.iter().filter(|c| c.suite == suite).collect();
            let passed = suite_checks.iter().filter(|c| c.pass).count();
            let _ = writeln!(out);
            let _ = writeln!(out, "suite {suite}: {passed}/{} passed", suite_checks.len());
            for c in suite_checks {
                let _ = writeln!(
                    out,
                    "  [{}] {}: value {} vs bound {}  ({})",
                    if c.pass { "pass" } else { "FAIL" },
                    c.name,
                    fmt_float(c.value),
                    fmt_float(c.bound),
                    c.parameters,
                );
                let _ = writeln!(out, "         {}", c.statement);
            }
        }

        if failed > 0 {
            let _ = writeln!(out);
            let _ = writeln!(out, "failures");
            for c in self.failures() {
                let _ = writeln!(
                    out,
                    "  {}/{}: value {} exceeded bound {}  ({})",
                    c.suite,
                    c.name,
                    fmt_float(c.value),
                    fmt_float(c.bound),
                    c.parameters,
                );
            }
        }

        if !self.traces.is_empty() {
            let _ = writeln!(out);
            let _ = writeln!(out, "constant traces");
            let mut seen: Vec<(String, String)> = Vec::new();
            for t in &self.traces {
                let key = (t.suite.clone(), t.constant.clone());
                if !seen.contains(&key) {
                    seen.push(key);
                }
            }
            for (suite, constant) in seen {
                let _ = writeln!(out, "  {suite}/{constant}");
                for t in self
                    .traces
                    .iter()
                    .filter(|t| t.suite == suite && t.constant == constant)
                {
                    let _ = writeln!(
                        out,
                        "    {:<18} {}  ({})",
                        t.refinement,
                        fmt_float(t.value),
                        t.parameters
                    );
                }
            }
        }
        out
    }

    /// Write `summary.txt`, `checks.csv`, `constants.csv`, and `report.toml`
    /// into `dir`, creating the directory if needed.
    pub fn write_dir(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("summary.txt"), self.summary_text())?;
        std::fs::write(dir.join("checks.csv"), self.checks_csv())?;
        std::fs::write(dir.join("constants.csv"), self.constants_csv())?;
        let serialized = toml::to_string_pretty(self)
            .map_err(|e| Error::Config(format!("cannot serialize report: {e}")))?;
        std::fs::write(dir.join("report.toml"), serialized)?;
        Ok(())
    }

    /// Load the report a previous [`RunReport::write_dir`] stored in `dir`.
    pub fn load_dir(dir: &Path) -> Result<Self> {
        let path = dir.join("report.toml");
        let text = std::fs::read_to_string(&path)?;
        toml::from_str(&text)
            .map_err(|e| Error::Config(format!("cannot parse {}: {e}", path.display())))
    }

    /// Suite names in order of first appearance.
    fn suite_order(&self) -> Vec<String> {
        let mut order: Vec<String> = Vec::new();
        for c in &self.checks {
            if !order.contains(&c.suite) {
                order.push(c.suite.clone());
            }
        }
        order
    }
}

/// Shortest round-trip decimal-exponent representation (`3.25e-7` style).
fn fmt_float(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v:e}")
    }
}

/// Quote a CSV field when it contains a delimiter, quote, or newline.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
