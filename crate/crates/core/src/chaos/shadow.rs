use serde::{Deserialize, Serialize};

use super::bounds::volterra_tail_bound;
use super::MAX_CONSTRUCTION_DEGREE;
use crate::error::{Error, Result};
use crate::funcspace::{ChebFun, Field, NormMode};
use crate::operators::{derivative_power, volterra_power};

/// A single vector whose `D^n` orbit passes within `epsilon` of every target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShadowCertificate {
    pub vector: ChebFun,
    pub order: usize,
    /// Orbit indices `n_j`: target `j` is visited by `(D^n)^{n_j}`.
    pub exponents: Vec<usize>,
    /// `||D^{n n_j} f - y_j||`, computed directly.
    pub visit_errors: Vec<f64>,
    /// Analytic bound on each visit error.
    pub visit_bounds: Vec<f64>,
    pub epsilon: f64,
    pub pass: bool,
}

/// `f = sum_j V^{n n_j} y_j` with `n_j = (j - 1) G` for the smallest common gap
/// `G` such that `nG` kills every target and every visit's interference bound
/// is below `epsilon`.
pub fn orbit_shadow(
    targets: &[ChebFun],
    epsilon: f64,
    n: usize,
    norm_mode: NormMode,
) -> Result<ShadowCertificate> {
    if targets.is_empty() {
        return Err(Error::InvalidInput("at least one target is required".into()));
    }
    if !(epsilon > 0.0) {
        return Err(Error::InvalidInput(format!("epsilon must be positive, got {epsilon}")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("operator order must be at least 1".into()));
    }
    let interval = *targets[0].interval();
    if targets.iter().any(|t| *t.interval() != interval) {
        return Err(Error::Incompatible("targets live on different intervals".into()));
    }
    let mixed = targets.iter().any(|t| t.field() != targets[0].field());
    let targets: Vec<ChebFun> = if mixed {
        targets.iter().map(ChebFun::to_complex).collect()
    } else {
        targets.to_vec()
    };
    let m = targets.len();
    let max_len = targets.iter().map(ChebFun::len).max().unwrap_or(1);

    let bounds_for = |gap: usize| -> Vec<f64> {
        (0..m)
            .map(|j| {
                (j + 1..m)
                    .map(|i| volterra_tail_bound(&targets[i], n * (i - j) * gap, norm_mode))
                    .sum()
            })
            .collect()
    };
    let top_degree = |gap: usize| {
        (0..m).map(|j| targets[j].len() - 1 + n * j * gap).max().unwrap_or(0)
    };

    let mut gap = if m == 1 { 0 } else { max_len.div_ceil(n) };
    let visit_bounds = loop {
        if top_degree(gap) > MAX_CONSTRUCTION_DEGREE {
            return Err(Error::Capacity(format!(
                "shadowing {m} targets to {epsilon:e} exceeds degree {MAX_CONSTRUCTION_DEGREE}"
            )));
        }
        let b = bounds_for(gap);
        if b.iter().all(|&v| v < epsilon) {
            break b;
        }
        gap += 1;
    };
    let exponents: Vec<usize> = (0..m).map(|j| j * gap).collect();

    let field = targets[0].field();
    let mut vector = ChebFun::zero(interval);
    if field == Field::Complex {
        vector = vector.to_complex();
    }
    for (y, &e) in targets.iter().zip(&exponents) {
        vector = vector.add(&volterra_power(y, n * e))?;
    }
    let visit_errors = targets
        .iter()
        .zip(&exponents)
        .map(|(y, &e)| Ok(norm_mode.norm(&derivative_power(&vector, n * e).sub(y)?)))
        .collect::<Result<Vec<f64>>>()?;
    let pass = visit_errors.iter().all(|&v| v <= epsilon);
    Ok(ShadowCertificate { vector, order: n, exponents, visit_errors, visit_bounds, epsilon, pass })
}
