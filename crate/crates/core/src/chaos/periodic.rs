use serde::{Deserialize, Serialize};

use super::bounds::volterra_tail_bound;
use super::MAX_CONSTRUCTION_DEGREE;
use crate::error::{Error, Result};
use crate::funcspace::{ChebFun, NormMode};
use crate::operators::{derivative_power, volterra_power};

/// Tolerance on `||D^{nN} g - g||`, relative to `max(1, ||y||)`.
pub const PERIODIC_RESIDUAL_TOLERANCE: f64 = 1e-10;

/// Fraction of the residual tolerance the truncated tail may use.
const TAIL_SHARE: f64 = 0.01;

/// Hard stop for series summation.
const MAX_SERIES_TERMS: usize = 100_000;

/// A point `g` with `D^{nN} g = g` up to the truncated tail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicCertificate {
    pub point: ChebFun,
    pub period: usize,
    pub order: usize,
    pub truncation: usize,
    pub invariance_residual: f64,
    pub tolerance: f64,
    /// Upper bound on the distance from `y` to the untruncated periodic point.
    pub nearness_bound: f64,
    /// `||g - y||` measured directly.
    pub nearness_actual: f64,
    pub pass: bool,
}

/// `sum_{k >= 1} bound(k * step)`, summed until the terms are negligible.
fn tail_series(y: &ChebFun, step: usize, first: usize, mode: NormMode) -> f64 {
    let width = y.interval().width();
    let mut sum = 0.0;
    for k in first..first + MAX_SERIES_TERMS {
        let m = k * step;
        let term = volterra_tail_bound(y, m, mode);
        sum += term;
        // past the hump of width^m / m! the terms decay faster than geometrically
        if m as f64 > 2.0 * width && term <= 1e-20 * sum {
            break;
        }
        if sum == 0.0 {
            break;
        }
    }
    sum
}

/// `g = y + sum_{k>=1} D^{knN} y + sum_{k=1}^{K} V^{knN} y` for `A = D^n`.
pub fn periodic_point(
    y: &ChebFun,
    period: usize,
    n: usize,
    truncation: usize,
    norm_mode: NormMode,
) -> Result<PeriodicCertificate> {
    if period == 0 || n == 0 {
        return Err(Error::InvalidInput("period and order must be at least 1".into()));
    }
    if truncation == 0 {
        return Err(Error::InvalidInput("truncation must be at least 1".into()));
    }
    let y_norm = norm_mode.norm(y);
    let tolerance = PERIODIC_RESIDUAL_TOLERANCE * y_norm.max(1.0);
    if y.is_zero() {
        return Ok(PeriodicCertificate {
            point: y.clone(),
            period,
            order: n,
            truncation,
            invariance_residual: 0.0,
            tolerance,
            nearness_bound: 0.0,
            nearness_actual: 0.0,
            pass: true,
        });
    }
    let step = n * period;
    let fits = truncation
        .checked_mul(step)
        .and_then(|m| m.checked_add(y.len() - 1))
        .is_some_and(|d| d <= MAX_CONSTRUCTION_DEGREE);
    if !fits {
        return Err(Error::Capacity(format!(
            "period {period} with truncation {truncation} exceeds degree {MAX_CONSTRUCTION_DEGREE}"
        )));
    }

    let mut g = y.clone();
    let mut nearness_bound = 0.0;
    let mut k = 1;
    while k * step < y.len() {
        let term = derivative_power(y, k * step);
        nearness_bound += norm_mode.norm(&term);
        g = g.add(&term)?;
        k += 1;
    }
    let mut term = y.clone();
    for _ in 0..truncation {
        term = volterra_power(&term, step);
        nearness_bound += norm_mode.norm(&term);
        g = g.add(&term)?;
    }
    nearness_bound += tail_series(y, step, truncation + 1, norm_mode);

    let invariance_residual = norm_mode.norm(&derivative_power(&g, step).sub(&g)?);
    let nearness_actual = norm_mode.norm(&g.sub(y)?);
    Ok(PeriodicCertificate {
        point: g,
        period,
        order: n,
        truncation,
        invariance_residual,
        tolerance,
        nearness_bound,
        nearness_actual,
        pass: invariance_residual <= tolerance,
    })
}

/// Smallest period `N` with `nN >= len(y)` and analytic tail below `epsilon`,
/// truncated where the dropped term is far below the residual tolerance.
pub fn periodic_point_near(
    y: &ChebFun,
    epsilon: f64,
    n: usize,
    norm_mode: NormMode,
) -> Result<PeriodicCertificate> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidInput(format!("epsilon must be positive, got {epsilon}")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("operator order must be at least 1".into()));
    }
    if y.is_zero() {
        return periodic_point(y, 1, n, 1, norm_mode);
    }
    let capacity = || {
        Error::Capacity(format!(
            "no period within degree {MAX_CONSTRUCTION_DEGREE} reaches epsilon {epsilon:e}"
        ))
    };
    let mut period = y.len().div_ceil(n);
    loop {
        let step = n * period;
        if step + y.len() - 1 > MAX_CONSTRUCTION_DEGREE {
            return Err(capacity());
        }
        if tail_series(y, step, 1, norm_mode) < epsilon {
            break;
        }
        period += 1;
    }
    let step = n * period;
    let target = TAIL_SHARE * PERIODIC_RESIDUAL_TOLERANCE * norm_mode.norm(y).max(1.0);
    let mut truncation = 1;
    while volterra_tail_bound(y, truncation * step, norm_mode) > target {
        truncation += 1;
        if truncation * step + y.len() - 1 > MAX_CONSTRUCTION_DEGREE {
            return Err(capacity());
        }
    }
    periodic_point(y, period, n, truncation, norm_mode)
}
