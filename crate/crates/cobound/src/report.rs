//! Machine-readable run reports.
//!
//! A [`Report`] is one run of a suite: the configuration, a list of
//! [`Record`]s (one per checked claim instance), and an overall pass flag.
//! Rendering is deterministic for a fixed configuration and seed — maps are
//! ordered, floats print in shortest round-trip form — except for the
//! `wall_ms` fields, which carry timing and are excluded from any
//! byte-comparison.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::Domain(format!("unknown format '{}'", other))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Text => "text",
        })
    }
}

/// Configuration of one suite run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub n: usize,
    pub p: f64,
    pub group: String,
    pub seed: u64,
    pub tol: f64,
    pub trials: usize,
    pub format: OutputFormat,
    pub out: Option<String>,
}

impl RunConfig {
    pub fn new(command: &str) -> Self {
        RunConfig {
            command: command.to_string(),
            n: 3,
            p: 2.0,
            group: "s3".to_string(),
            seed: 0,
            tol: 1e-6,
            trials: 10,
            format: OutputFormat::Text,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::Domain(format!("tol must be positive, got {}", self.tol)));
        }
        if self.trials < 1 {
            return Err(Error::Domain("trials must be at least 1".into()));
        }
        if self.n < 1 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        Ok(())
    }
}

/// One checked claim instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Record {
    /// Short slug naming the claim being checked
    /// (e.g. `cob-equals-abs-symbol-norm`).
    pub claim: String,
    /// The operation that produced the numbers.
    pub operation: String,
    /// Hex digest identifying the exact inputs of this instance.
    pub inputs_digest: String,
    pub values: BTreeMap<String, f64>,
    pub tolerances: BTreeMap<String, f64>,
    pub pass: bool,
    pub wall_ms: u64,
}

impl Record {
    pub fn new(claim: &str, operation: &str, inputs_digest: String) -> Self {
        Record {
            claim: claim.to_string(),
            operation: operation.to_string(),
            inputs_digest,
            values: BTreeMap::new(),
            tolerances: BTreeMap::new(),
            pass: true,
            wall_ms: 0,
        }
    }

    pub fn value(mut self, key: &str, v: f64) -> Self {
        self.values.insert(key.to_string(), v);
        self
    }

    pub fn tolerance(mut self, key: &str, v: f64) -> Self {
        self.tolerances.insert(key.to_string(), v);
        self
    }

    /// Records a two-sided comparison: stores both values, the deviation,
    /// the tolerance, and folds the outcome into the pass flag.
    pub fn check_close(mut self, key: &str, got: f64, want: f64, tol: f64) -> Self {
        self.values.insert(format!("{}.got", key), got);
        self.values.insert(format!("{}.want", key), want);
        self.values.insert(format!("{}.dev", key), (got - want).abs());
        self.tolerances.insert(key.to_string(), tol);
        if !((got - want).abs() <= tol) {
            self.pass = false;
        }
        self
    }

    /// Records a one-sided bound `value ≤ bound + slack`.
    pub fn check_at_most(mut self, key: &str, value: f64, bound: f64, slack: f64) -> Self {
        self.values.insert(format!("{}.value", key), value);
        self.values.insert(format!("{}.bound", key), bound);
        self.tolerances.insert(key.to_string(), slack);
        if !(value <= bound + slack) {
            self.pass = false;
        }
        self
    }

    pub fn fail(mut self, reason: &str) -> Self {
        self.pass = false;
        self.values.insert(format!("error.{}", reason), f64::NAN);
        self
    }
}

/// A full suite run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub config: RunConfig,
    pub records: Vec<Record>,
    pub pass: bool,
    pub wall_ms: u64,
}

impl Report {
    pub fn new(config: &RunConfig) -> Self {
        Report {
            schema: 1,
            command: config.command.clone(),
            config: config.clone(),
            records: Vec::new(),
            pass: true,
            wall_ms: 0,
        }
    }

    pub fn push(&mut self, r: Record) {
        self.pass &= r.pass;
        self.records.push(r);
    }

    pub fn merge(&mut self, other: Report) {
        self.pass &= other.pass;
        self.records.extend(other.records);
    }

    pub fn failing(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Text => self.to_text(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    /// CSV with one row per record; map-valued fields are flattened into
    /// `key=value` pairs joined by `;`.
    pub fn to_csv(&self) -> String {
        fn flatten(map: &BTreeMap<String, f64>) -> String {
            let cells: Vec<String> = map.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
            cells.join(";")
        }
        let mut out = String::from("claim,operation,inputs_digest,values,tolerances,pass,wall_ms\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.claim,
                r.operation,
                r.inputs_digest,
                flatten(&r.values),
                flatten(&r.tolerances),
                r.pass,
                r.wall_ms
            ));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{}: {} record(s), overall {}\n",
            self.command,
            self.records.len(),
            if self.pass { "PASS" } else { "FAIL" }
        );
        for r in &self.records {
            out.push_str(&format!(
                "  [{}] {} ({}) digest {}\n",
                if r.pass { "ok" } else { "FAIL" },
                r.claim,
                r.operation,
                &r.inputs_digest[..12.min(r.inputs_digest.len())]
            ));
            for (k, v) in &r.values {
                out.push_str(&format!("      {} = {}\n", k, v));
            }
            for (k, v) in &r.tolerances {
                out.push_str(&format!("      tol[{}] = {}\n", k, v));
            }
        }
        out
    }
}

/// Digest builder for record provenance: hashes tags and the exact bit
/// patterns of numeric inputs, so identical inputs give identical digests
/// and any bit-level change is visible.
pub struct InputDigest {
    hasher: Sha256,
}

impl InputDigest {
    pub fn new(tag: &str) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(tag.as_bytes());
        hasher.update([0]);
        InputDigest { hasher }
    }

    pub fn text(mut self, s: &str) -> Self {
        self.hasher.update(s.as_bytes());
        self.hasher.update([0]);
        self
    }

    pub fn int(mut self, v: u64) -> Self {
        self.hasher.update(v.to_le_bytes());
        self
    }

    pub fn real(mut self, v: f64) -> Self {
        self.hasher.update(v.to_bits().to_le_bytes());
        self
    }

    pub fn reals<'a>(mut self, vs: impl IntoIterator<Item = &'a f64>) -> Self {
        for v in vs {
            self.hasher.update(v.to_bits().to_le_bytes());
        }
        self
    }

    pub fn complex_matrix(mut self, m: &crate::linalg::CMatrix) -> Self {
        self.hasher.update((m.rows() as u64).to_le_bytes());
        self.hasher.update((m.cols() as u64).to_le_bytes());
        for v in m.data() {
            self.hasher.update(v.re.to_bits().to_le_bytes());
            self.hasher.update(v.im.to_bits().to_le_bytes());
        }
        self
    }

    pub fn complex_slice(mut self, vs: &[num_complex::Complex64]) -> Self {
        for v in vs {
            self.hasher.update(v.re.to_bits().to_le_bytes());
            self.hasher.update(v.im.to_bits().to_le_bytes());
        }
        self
    }

    pub fn finish(self) -> String {
        let bytes = self.hasher.finalize();
        bytes.iter().map(|b| format!("{:02x}", b)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable_and_input_sensitive() {
        let a = InputDigest::new("t").real(1.0).int(7).finish();
        let b = InputDigest::new("t").real(1.0).int(7).finish();
        let c = InputDigest::new("t").real(1.0 + 1e-16).int(7).finish();
        let d = InputDigest::new("t").real(1.5).int(7).finish();
        assert_eq!(a, b);
        assert_eq!(a, c); // 1.0 + 1e-16 rounds to the same double
        assert_ne!(a, d);
        assert_eq!(a.len(), 64);
    }

    #[test]
    fn report_pass_flag_follows_records() {
        let cfg = RunConfig::new("demo");
        let mut rep = Report::new(&cfg);
        rep.push(Record::new("ok-claim", "op", "x".into()).check_close("v", 1.0, 1.0, 1e-9));
        assert!(rep.pass);
        rep.push(Record::new("bad-claim", "op", "y".into()).check_close("v", 1.0, 2.0, 1e-9));
        assert!(!rep.pass);
        assert_eq!(rep.failing().count(), 1);
        let text = rep.to_text();
        assert!(text.contains("FAIL"));
        assert!(text.contains("bad-claim"));
    }

    #[test]
    fn json_round_trips_and_is_deterministic() {
        let cfg = RunConfig::new("demo");
        let mut rep = Report::new(&cfg);
        rep.push(
            Record::new("claim", "op", "z".into())
                .value("x", 0.1 + 0.2)
                .tolerance("x", 1e-9),
        );
        let a = rep.to_json();
        let b = rep.to_json();
        assert_eq!(a, b);
        let parsed: Report = serde_json::from_str(&a).unwrap();
        assert_eq!(parsed.records[0].values["x"], 0.1 + 0.2);
        assert_eq!(parsed.schema, 1);
    }

    #[test]
    fn csv_has_header_and_rows() {
        let cfg = RunConfig::new("demo");
        let mut rep = Report::new(&cfg);
        rep.push(Record::new("claim", "op", "z".into()).value("a", 2.0).value("b", 3.0));
        let csv = rep.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("claim,operation"));
        assert!(lines[1].contains("a=2;b=3"));
    }

    #[test]
    fn config_validation() {
        let mut cfg = RunConfig::new("x");
        cfg.validate().unwrap();
        cfg.tol = 0.0;
        assert!(cfg.validate().is_err());
        cfg.tol = 1e-6;
        cfg.trials = 0;
        assert!(cfg.validate().is_err());
        cfg.trials = 1;
        cfg.n = 0;
        assert!(cfg.validate().is_err());
        assert!("json".parse::<OutputFormat>().is_ok());
        assert!("yaml".parse::<OutputFormat>().is_err());
    }
}
