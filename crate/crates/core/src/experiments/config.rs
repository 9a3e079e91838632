use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcspace::{ChebFun, Interval, NormMode, C64};

pub const SUITE_NAMES: [&str; 7] =
    ["norm-table", "eigen", "growth", "criterion", "periodic", "shadow", "norm-equivalence"];

/// One suite run. Polynomials are coefficient vectors in powers of `x`,
/// lowest degree first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub suite: String,
    pub a: f64,
    pub b: f64,
    /// `"sup"` or `"lp"`.
    pub norm: String,
    pub p: f64,
    pub n: usize,
    pub k_max: usize,
    pub n_max: usize,
    pub epsilon: f64,
    pub poly: Option<Vec<f64>>,
    pub targets: Option<Vec<Vec<f64>>>,
    /// Eigenvalues as `[re, im]`.
    pub lambdas: Option<Vec<[f64; 2]>>,
    /// `"b"` (Volterra power) or `"d"` (derivative power), for the growth suite.
    pub operator: String,
    /// Fixed period for the periodic suite; chosen from `epsilon` when absent.
    pub period: Option<usize>,
    pub truncation: Option<usize>,
    /// Random polynomial count for the criterion and norm-equivalence suites.
    pub samples: Option<usize>,
    pub max_degree: usize,
    pub seed: u64,
    /// Record wall-clock duration; off keeps reports byte-reproducible.
    pub timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: "norm-table".into(),
            a: 0.0,
            b: 1.0,
            norm: "sup".into(),
            p: 2.0,
            n: 1,
            k_max: 10,
            n_max: 25,
            epsilon: 1e-3,
            poly: None,
            targets: None,
            lambdas: None,
            operator: "b".into(),
            period: None,
            truncation: None,
            samples: None,
            max_degree: 15,
            seed: 0,
            timing: false,
        }
    }
}

fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

impl SuiteConfig {
    pub fn for_suite(suite: &str) -> Self {
        SuiteConfig { suite: suite.into(), ..Self::default() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| config_err(format!("bad config file: {e}")))
    }

    /// Accepts one config object or an array of them.
    pub fn list_from_json(text: &str) -> Result<Vec<Self>> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum OneOrMany {
            One(SuiteConfig),
            Many(Vec<SuiteConfig>),
        }
        let parsed: OneOrMany = serde_json::from_str(text).map_err(|_| {
            // untagged errors are uninformative; report the single-object error
            Self::from_json(text).err().unwrap_or_else(|| config_err("bad config file"))
        })?;
        Ok(match parsed {
            OneOrMany::One(c) => vec![c],
            OneOrMany::Many(v) => v,
        })
    }

    pub fn interval(&self) -> Result<Interval> {
        Interval::new(self.a, self.b).map_err(|e| config_err(e.to_string()))
    }

    pub fn norm_mode(&self) -> Result<NormMode> {
        match self.norm.as_str() {
            "sup" => Ok(NormMode::Sup),
            "lp" => NormMode::lp(self.p).map_err(|e| config_err(e.to_string())),
            other => Err(config_err(format!("unknown norm {other:?}; expected sup or lp"))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !SUITE_NAMES.contains(&self.suite.as_str()) {
            return Err(config_err(format!(
                "unknown suite {:?}; expected one of {}",
                self.suite,
                SUITE_NAMES.join(", ")
            )));
        }
        self.interval()?;
        self.norm_mode()?;
        if self.n == 0 {
            return Err(config_err("n must be at least 1"));
        }
        if self.n_max == 0 {
            return Err(config_err("n_max must be at least 1"));
        }
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return Err(config_err(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if self.suite == "norm-table" && self.k_max < self.n {
            return Err(config_err(format!("k_max {} is below n {}", self.k_max, self.n)));
        }
        if !matches!(self.operator.as_str(), "b" | "d") {
            return Err(config_err(format!("unknown operator {:?}; expected b or d", self.operator)));
        }
        if self.period == Some(0) || self.truncation == Some(0) {
            return Err(config_err("period and truncation must be at least 1"));
        }
        if let Some(t) = &self.targets {
            if t.is_empty() {
                return Err(config_err("targets must not be empty"));
            }
        }
        Ok(())
    }

    pub fn poly_or(&self, default: &[f64]) -> Result<ChebFun> {
        poly_from(self.interval()?, self.poly.as_deref().unwrap_or(default))
    }

    pub fn lambda_values(&self) -> Vec<C64> {
        match &self.lambdas {
            Some(l) => l.iter().map(|&[re, im]| C64::new(re, im)).collect(),
            None => vec![
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(-1.0, 0.0),
                C64::new(0.0, 2.0),
                C64::new(3.0, 4.0),
            ],
        }
    }
}

pub(crate) fn poly_from(interval: Interval, coeffs: &[f64]) -> Result<ChebFun> {
    if coeffs.is_empty() {
        return Err(config_err("polynomial needs at least one coefficient"));
    }
    ChebFun::from_real_power_coeffs(interval, coeffs).map_err(|e| config_err(e.to_string()))
}
