use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcspace::{ChebFun, NormMode};
use crate::operators::{derivative_power, volterra_power};

/// The operator whose orbit is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "order", rename_all = "snake_case")]
pub enum OperatorTag {
    /// `D^n`
    DerivativePower(usize),
    /// `V^n`, the n-th power of the Volterra operator
    VolterraPower(usize),
}

impl OperatorTag {
    pub fn order(&self) -> usize {
        match *self {
            OperatorTag::DerivativePower(n) | OperatorTag::VolterraPower(n) => n,
        }
    }

    pub fn apply(&self, f: &ChebFun) -> ChebFun {
        match *self {
            OperatorTag::DerivativePower(n) => derivative_power(f, n),
            OperatorTag::VolterraPower(n) => volterra_power(f, n),
        }
    }
}

/// `||A^j f||^(1/j)` for `j = 1..=horizon`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub operator: OperatorTag,
    pub horizon: usize,
    pub norm_mode: NormMode,
    /// `values[j - 1] = ||A^j f||^(1/j)`
    pub values: Vec<f64>,
    /// `norms[j - 1] = ||A^j f||`
    pub norms: Vec<f64>,
    /// Length of the trailing window the limsup estimate is taken over.
    pub window: usize,
    pub limsup_estimate: f64,
    /// First `j` with `A^j f = 0` exactly.
    pub zero_from: Option<usize>,
    /// Empirical `alpha` in `||A^j f|| <= c alpha^j`; equals the limsup estimate.
    pub alpha_hat: f64,
    /// Smallest `c` making the bound hold over the horizon, when `alpha_hat > 0`.
    pub c_hat: Option<f64>,
}

impl GrowthReport {
    /// `||A^j f||^(1/j)`, one-based.
    pub fn value(&self, j: usize) -> f64 {
        self.values[j - 1]
    }
}

pub fn growth_sequence(
    operator: OperatorTag,
    f: &ChebFun,
    horizon: usize,
    norm_mode: NormMode,
) -> Result<GrowthReport> {
    if horizon == 0 {
        return Err(Error::InvalidInput("growth horizon must be at least 1".into()));
    }
    if operator.order() == 0 {
        return Err(Error::InvalidInput("operator order must be at least 1".into()));
    }
    let mut norms = Vec::with_capacity(horizon);
    let mut zero_from = None;
    let mut iterate = f.clone();
    for j in 1..=horizon {
        if zero_from.is_some() {
            norms.push(0.0);
            continue;
        }
        iterate = operator.apply(&iterate);
        if iterate.is_zero() {
            zero_from = Some(j);
            norms.push(0.0);
        } else {
            norms.push(norm_mode.norm(&iterate));
        }
    }
    let values: Vec<f64> = norms
        .iter()
        .enumerate()
        .map(|(i, &v)| v.powf(1.0 / (i + 1) as f64))
        .collect();
    let window = horizon.div_ceil(4);
    let limsup_estimate = values[horizon - window..].iter().copied().fold(0.0, f64::max);
    let c_hat = (limsup_estimate > 0.0).then(|| {
        let ln_alpha = limsup_estimate.ln();
        norms
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.0)
            .map(|(i, &v)| v.ln() - (i + 1) as f64 * ln_alpha)
            .fold(f64::NEG_INFINITY, f64::max)
            .exp()
    });
    Ok(GrowthReport {
        operator,
        horizon,
        norm_mode,
        values,
        norms,
        window,
        limsup_estimate,
        zero_from,
        alpha_hat: limsup_estimate,
        c_hat,
    })
}
