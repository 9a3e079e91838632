//! Eigenfunctions of `D^n`: for `lambda != 0` the exponentials `e^{mu x}`
//! over the distinct n-th roots `mu` of `lambda`; for `lambda = 0` the
//! monomials `x^{k-1}`.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::{derivative_power, ln_factorial};
use crate::error::{Error, Result};
use crate::funcspace::{ChebFun, GaussLegendre, Interval, C64};

/// Largest `|lambda|^(1/n) (b - a)` accepted by [`eigenfunction_basis`].
pub const EXP_REPRESENTABILITY_CEILING: f64 = 50.0;

/// Gram eigenvalues at or below this fraction of the largest do not count.
pub const GRAM_RANK_CUTOFF: f64 = 1e-10;

/// An eigenvalue of `D^n` together with the n-th roots that index its
/// eigenfunctions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenData {
    pub lambda: C64,
    pub order: usize,
    /// Principal root first, then counterclockwise. Empty when `lambda = 0`.
    pub roots: Vec<C64>,
}

impl EigenData {
    pub fn new(lambda: C64, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidInput("operator order must be at least 1".into()));
        }
        if !(lambda.re.is_finite() && lambda.im.is_finite()) {
            return Err(Error::InvalidInput("eigenvalue must be finite".into()));
        }
        Ok(EigenData { lambda, order, roots: nth_roots(lambda, order) })
    }
}

fn nth_roots(lambda: C64, n: usize) -> Vec<C64> {
    if lambda == C64::new(0.0, 0.0) {
        return Vec::new();
    }
    let (r, theta) = lambda.to_polar();
    let radius = r.powf(1.0 / n as f64);
    let snap = 4.0 * f64::EPSILON * radius;
    (0..n)
        .map(|j| {
            let arg = theta / n as f64 + 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            let mut z = C64::from_polar(radius, arg);
            if z.re.abs() < snap {
                z.re = 0.0;
            }
            if z.im.abs() < snap {
                z.im = 0.0;
            }
            z
        })
        .collect()
}

/// `e^{mu x}` on `interval`.
///
/// With `x = m + h t` the function is `e^{mu m} e^{rho t}`, `rho = mu h`,
/// whose Chebyshev coefficients are `I_0(rho), 2 I_k(rho)`. These are built
/// by the backward recurrence `I_{k-1} = I_{k+1} + (2k / rho) I_k`, which is
/// the coefficient form of `f' = rho f`, and normalized at the endpoint
/// where `|e^{rho t}|` is largest. Coefficients keep full relative accuracy
/// down the tail, so repeated differentiation does not amplify noise.
pub fn exp_chebfun(interval: Interval, mu: C64) -> Result<ChebFun> {
    let rho = mu * interval.half_width();
    let shift = (mu * interval.midpoint()).exp();
    if !(shift.re.is_finite() && shift.im.is_finite()) {
        return Err(Error::ApproximationFailure { degree: 0, residual: f64::INFINITY });
    }
    if rho.norm() == 0.0 {
        return Ok(ChebFun::constant(interval, shift));
    }
    let r = rho.norm();
    // smallest M past |rho| with the Bessel bound below 1e-25 of the sup
    let target = (1e-25f64).ln() - r.min(rho.re.abs());
    let mut m = (r.ceil() as usize).max(2);
    while (m as f64) * (r / 2.0).ln() - ln_factorial(m) + r * r / (4.0 * (m as f64 + 1.0)) > target
    {
        m += 1;
        if m > crate::funcspace::MAX_SAMPLE_DEGREE {
            return Err(Error::ApproximationFailure { degree: m, residual: f64::INFINITY });
        }
    }
    let start = m + 16;
    let mut a = vec![C64::new(0.0, 0.0); start + 2];
    a[start] = C64::new(1.0, 0.0);
    for k in (1..=start).rev() {
        a[k - 1] = a[k + 1] + (2.0 * k as f64 / rho) * a[k];
        if a[k - 1].norm() > 1e200 {
            for v in a[k - 1..].iter_mut() {
                *v *= 1e-200;
            }
        }
    }
    let mut coeffs: Vec<C64> = a[..=m]
        .iter()
        .enumerate()
        .map(|(k, &v)| if k == 0 { v } else { 2.0 * v })
        .collect();

    let t0 = if rho.re >= 0.0 { 1.0 } else { -1.0 };
    let series_at_end: C64 = coeffs
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 1 { c * t0 } else { c })
        .sum();
    let factor = (rho * t0).exp() / series_at_end * shift;
    for c in coeffs.iter_mut() {
        *c *= factor;
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() == 0.0) {
        coeffs.pop();
    }
    if mu.im == 0.0 {
        for c in coeffs.iter_mut() {
            c.im = 0.0;
        }
    }
    ChebFun::from_coeffs(interval, coeffs)
}

fn check_representable(interval: &Interval, lambda: C64, n: usize) -> Result<()> {
    let size = lambda.norm().powf(1.0 / n as f64) * interval.width();
    if size > EXP_REPRESENTABILITY_CEILING {
        return Err(Error::ApproximationFailure { degree: 0, residual: size });
    }
    Ok(())
}

fn raw_monomials(interval: Interval, n: usize) -> Vec<ChebFun> {
    (0..n)
        .map(|k| {
            let mut c = vec![0.0; k + 1];
            c[k] = 1.0;
            ChebFun::from_real_power_coeffs(interval, &c).expect("non-empty coefficients")
        })
        .collect()
}

/// `n` independent solutions of `D^n f = lambda f` on `interval`.
pub fn eigenfunction_basis(interval: Interval, lambda: C64, n: usize) -> Result<Vec<ChebFun>> {
    let data = EigenData::new(lambda, n)?;
    if data.roots.is_empty() {
        return Ok(raw_monomials(interval, n));
    }
    check_representable(&interval, lambda, n)?;
    data.roots.iter().map(|&mu| exp_chebfun(interval, mu)).collect()
}

/// Real-field basis for real `lambda`: `e^{mu x}` for real roots and the
/// real and imaginary parts of `e^{mu x}` for each root with `Im mu > 0`.
pub fn eigenfunction_basis_real(interval: Interval, lambda: f64, n: usize) -> Result<Vec<ChebFun>> {
    let data = EigenData::new(C64::new(lambda, 0.0), n)?;
    if data.roots.is_empty() {
        return Ok(raw_monomials(interval, n));
    }
    check_representable(&interval, data.lambda, n)?;
    let mut out = Vec::with_capacity(n);
    for &mu in &data.roots {
        if mu.im == 0.0 {
            out.push(exp_chebfun(interval, mu)?);
        } else if mu.im > 0.0 {
            let e = exp_chebfun(interval, mu)?;
            out.push(e.real_part());
            out.push(e.imag_part());
        }
    }
    Ok(out)
}

/// `||D^n f - lambda f||_sup / ||f||_sup`.
pub fn eigen_residual(f: &ChebFun, lambda: C64, n: usize) -> Result<f64> {
    let g = if lambda.im != 0.0 { f.to_complex() } else { f.clone() };
    let lhs = derivative_power(&g, n);
    let r = lhs.sub(&g.scale(lambda)?)?;
    let scale = g.sup_norm();
    Ok(if scale == 0.0 { r.sup_norm() } else { r.sup_norm() / scale })
}

/// Numerical rank of the `L_2` Gram matrix of `basis`.
pub fn eigenspace_rank(basis: &[ChebFun]) -> Result<usize> {
    let first = basis
        .first()
        .ok_or_else(|| Error::InvalidInput("empty basis".into()))?;
    let interval = *first.interval();
    if basis.iter().any(|f| *f.interval() != interval) {
        return Err(Error::Incompatible("basis functions live on different intervals".into()));
    }
    let longest = basis.iter().map(ChebFun::len).max().unwrap_or(1);
    let rule = GaussLegendre::cached((longest + 1).max(64));
    let values: Vec<Vec<C64>> = basis
        .iter()
        .map(|f| rule.nodes.iter().map(|&t| f.eval_reference(t)).collect())
        .collect();
    let k = basis.len();
    let h = interval.half_width();
    let gram = DMatrix::from_fn(k, k, |i, j| {
        values[i]
            .iter()
            .zip(&values[j])
            .zip(&rule.weights)
            .map(|((fi, fj), w)| fi * fj.conj() * (w * h))
            .sum::<C64>()
    });
    let eig = SymmetricEigen::new(gram).eigenvalues;
    let largest = eig.iter().copied().fold(0.0, f64::max);
    if largest <= 0.0 {
        return Ok(0);
    }
    Ok(eig.iter().filter(|&&e| e > GRAM_RANK_CUTOFF * largest).count())
}
