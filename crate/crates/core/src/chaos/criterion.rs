use serde::{Deserialize, Serialize};

use super::growth::{growth_sequence, GrowthReport, OperatorTag};
use crate::error::{Error, Result};
use crate::funcspace::{ChebFun, NormMode};
use crate::operators::{derivative_power, volterra_power};

/// Tolerance on `||D^n V^n f - f||`, relative to `max(1, ||f||)`.
pub const RIGHT_INVERSE_TOLERANCE: f64 = 1e-12;

/// Both hypotheses of the sufficient condition for chaos, checked on one `f`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionCertificate {
    pub order: usize,
    pub right_inverse_residual: f64,
    /// Absolute tolerance the residual was compared against.
    pub tolerance: f64,
    pub growth_a: GrowthReport,
    pub growth_b: GrowthReport,
    pub pass: bool,
}

/// Requires `horizon >= degree(f) + 2` so that the `D^n` orbit is seen to die.
pub fn check_chaos_criterion(
    f: &ChebFun,
    n: usize,
    horizon: usize,
    norm_mode: NormMode,
) -> Result<CriterionCertificate> {
    if n == 0 {
        return Err(Error::InvalidInput("operator order must be at least 1".into()));
    }
    if horizon < f.degree() + 2 {
        return Err(Error::InvalidInput(format!(
            "horizon {horizon} is below degree + 2 = {}",
            f.degree() + 2
        )));
    }
    let back = derivative_power(&volterra_power(f, n), n);
    let right_inverse_residual = norm_mode.norm(&back.sub(f)?);
    let tolerance = RIGHT_INVERSE_TOLERANCE * norm_mode.norm(f).max(1.0);
    let growth_a = growth_sequence(OperatorTag::DerivativePower(n), f, horizon, norm_mode)?;
    let growth_b = growth_sequence(OperatorTag::VolterraPower(n), f, horizon, norm_mode)?;
    let pass = right_inverse_residual <= tolerance
        && growth_a.limsup_estimate < 1.0
        && growth_b.limsup_estimate < 1.0;
    Ok(CriterionCertificate {
        order: n,
        right_inverse_residual,
        tolerance,
        growth_a,
        growth_b,
        pass,
    })
}
