use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use super::config::SuiteConfig;
use crate::chaos::GrowthReport;
use crate::error::{Error, Result};

/// One named result. A row with `expected` passes iff
/// `|measured - expected| <= tolerance`; a row with `bound` passes iff
/// `measured <= bound + tolerance`; a row with neither is informational.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub name: String,
    pub measured: f64,
    pub expected: Option<f64>,
    pub bound: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

impl Row {
    pub fn expect(name: impl Into<String>, measured: f64, expected: f64, tolerance: f64) -> Self {
        let mut r = Row {
            name: name.into(),
            measured,
            expected: Some(expected),
            bound: None,
            tolerance,
            pass: false,
        };
        r.pass = r.consistent_pass();
        r
    }

    pub fn at_most(name: impl Into<String>, measured: f64, bound: f64, tolerance: f64) -> Self {
        let mut r = Row {
            name: name.into(),
            measured,
            expected: None,
            bound: Some(bound),
            tolerance,
            pass: false,
        };
        r.pass = r.consistent_pass();
        r
    }

    pub fn info(name: impl Into<String>, measured: f64) -> Self {
        Row { name: name.into(), measured, expected: None, bound: None, tolerance: 0.0, pass: true }
    }

    /// The pass value the row's numbers imply.
    pub fn consistent_pass(&self) -> bool {
        match (self.expected, self.bound) {
            (Some(e), _) => (self.measured - e).abs() <= self.tolerance,
            (None, Some(b)) => self.measured <= b + self.tolerance,
            (None, None) => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: SuiteConfig,
    pub rows: Vec<Row>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub growth: Vec<GrowthReport>,
    pub duration_ms: u64,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| !r.pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Config(format!("unknown format {other:?}; expected json or csv"))),
        }
    }
}

/// Compact JSON with every float written to 17 significant digits.
struct SignificantDigits;

impl Formatter for SignificantDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{}", format_f64(value))
    }
}

pub(crate) fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub const CSV_HEADER: [&str; 7] =
    ["suite", "name", "measured", "expected", "bound", "tolerance", "pass"];

pub fn serialize_report(report: &SuiteReport, format: Format) -> Vec<u8> {
    serialize_reports(std::slice::from_ref(report), format)
}

/// A JSON array (or one CSV table) when several reports are written together;
/// a single report is written as a bare object.
pub fn serialize_reports(reports: &[SuiteReport], format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = Vec::new();
            let mut ser = serde_json::Serializer::with_formatter(&mut out, SignificantDigits);
            let res = if reports.len() == 1 {
                reports[0].serialize(&mut ser)
            } else {
                reports.serialize(&mut ser)
            };
            res.expect("reports serialize to memory");
            out.push(b'\n');
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER).expect("write to memory");
            let opt = |v: Option<f64>| v.map(format_f64).unwrap_or_default();
            for report in reports {
                for r in &report.rows {
                    w.write_record([
                        report.suite.clone(),
                        r.name.clone(),
                        format_f64(r.measured),
                        opt(r.expected),
                        opt(r.bound),
                        format_f64(r.tolerance),
                        r.pass.to_string(),
                    ])
                    .expect("write to memory");
                }
            }
            w.into_inner().expect("flush to memory")
        }
    }
}

/// Names of rows whose stored `pass` disagrees with their numbers.
pub fn recheck(report: &SuiteReport) -> Vec<String> {
    report
        .rows
        .iter()
        .filter(|r| r.pass != r.consistent_pass())
        .map(|r| r.name.clone())
        .collect()
}

/// Re-parses a serialized JSON report and rechecks every row.
pub fn recheck_json(bytes: &[u8]) -> Result<Vec<String>> {
    let report: SuiteReport = serde_json::from_slice(bytes)
        .map_err(|e| Error::InvalidInput(format!("unparseable report: {e}")))?;
    Ok(recheck(&report))
}
