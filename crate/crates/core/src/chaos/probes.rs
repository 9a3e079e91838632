use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcspace::{ChebFun, Interval, NormMode};
use crate::operators::{derivative_power, differentiate, monomial_lp, monomial_sup};

/// `||D^n e_k|| / ||e_k||` against its closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnboundednessRow {
    pub k: usize,
    pub measured: f64,
    pub expected: f64,
    /// `k (b - a)^{-n}`, which diverges in `k`.
    pub lower_bound: f64,
}

/// Rows for `k = n..=k_max`, with `e_k` normalised in the chosen norm.
pub fn unboundedness_table(
    interval: Interval,
    n: usize,
    k_max: usize,
    norm_mode: NormMode,
) -> Result<Vec<UnboundednessRow>> {
    if n == 0 {
        return Err(Error::InvalidInput("operator order must be at least 1".into()));
    }
    if k_max < n {
        return Err(Error::InvalidInput(format!("k_max {k_max} is below the order {n}")));
    }
    let scale = interval.width().powi(-(n as i32));
    Ok((n..=k_max)
        .map(|k| {
            let (e, shape) = match norm_mode {
                NormMode::Sup => (monomial_sup(interval, k), 1.0),
                NormMode::Lp { p } => {
                    let pv = p.value();
                    let ratio = (k as f64 * pv + 1.0) / ((k - n) as f64 * pv + 1.0);
                    (monomial_lp(interval, k, p), ratio.powf(1.0 / pv))
                }
            };
            let measured = norm_mode.norm(&derivative_power(&e, n)) / norm_mode.norm(&e);
            let falling: f64 = ((k - n + 1)..=k).map(|j| j as f64).product();
            UnboundednessRow {
                k,
                measured,
                expected: falling * scale * shape,
                lower_bound: k as f64 * scale,
            }
        })
        .collect())
}

/// `sum_{k=0}^{n} ||f^(k)|| / (||f|| + ||f^(n)||)` in the sup norm; 1 for `f = 0`.
pub fn norm_equivalence_ratio(f: &ChebFun, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidInput("order must be at least 1".into()));
    }
    let mut total = 0.0;
    let mut d = f.clone();
    let f_norm = f.sup_norm();
    let mut dn_norm = f_norm;
    for k in 0..=n {
        if k > 0 {
            d = differentiate(&d);
        }
        dn_norm = d.sup_norm();
        total += dn_norm;
    }
    let denom = f_norm + dn_norm;
    Ok(if denom == 0.0 { 1.0 } else { total / denom })
}
