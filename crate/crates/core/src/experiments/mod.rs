//! Named suites over the chaos machinery, with JSON and CSV reports.

mod config;
mod report;
mod suites;

use std::time::Instant;

use rayon::prelude::*;

pub use config::{SuiteConfig, SUITE_NAMES};
pub use report::{
    recheck, recheck_json, serialize_report, serialize_reports, Format, Row, SuiteReport,
    CSV_HEADER,
};
pub use suites::{random_polynomials, EIGEN_RESIDUAL_TOLERANCE, RATIO_TOLERANCE};

use crate::error::{Error, Result};

/// Runs one suite. Bad parameters surface as configuration errors; capacity
/// and approximation errors keep their kind and gain the suite name.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let start = Instant::now();
    let out = match config.suite.as_str() {
        "norm-table" => suites::norm_table(config),
        "eigen" => suites::eigen(config),
        "growth" => suites::growth(config),
        "criterion" => suites::criterion(config),
        "periodic" => suites::periodic(config),
        "shadow" => suites::shadow(config),
        "norm-equivalence" => suites::norm_equivalence(config),
        other => Err(Error::Config(format!("unknown suite {other:?}"))),
    }
    .map_err(|e| match e {
        Error::InvalidInput(m) | Error::Incompatible(m) => {
            Error::Config(format!("{}: {m}", config.suite))
        }
        other => other.context(&config.suite),
    })?;
    let duration_ms = if config.timing { start.elapsed().as_millis() as u64 } else { 0 };
    Ok(SuiteReport {
        suite: config.suite.clone(),
        config: config.clone(),
        rows: out.rows,
        growth: out.growth,
        duration_ms,
    })
}

/// Runs independent suites concurrently; results keep the input order.
pub fn run_suites(configs: &[SuiteConfig]) -> Vec<Result<SuiteReport>> {
    configs.par_iter().map(run_suite).collect()
}

/// Every suite with default parameters on `[a, b]`.
pub fn full_suite(a: f64, b: f64, seed: u64) -> Vec<SuiteConfig> {
    SUITE_NAMES
        .iter()
        .map(|s| SuiteConfig { a, b, seed, ..SuiteConfig::for_suite(s) })
        .collect()
}
