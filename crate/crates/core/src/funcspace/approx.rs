//! Adaptive construction from point samples.

use super::chebfun::{ChebFun, TRAILING_CUTOFF};
use super::dct::{cheb_points, values_to_coeffs};
use super::{Interval, C64};
use crate::error::{Error, Result};

/// Largest degree `from_samples` will try before giving up.
pub const MAX_SAMPLE_DEGREE: usize = 1 << 14;

impl ChebFun {
    /// Interpolates `sampler` on successively doubled Chebyshev grids until
    /// the tail coefficients fall below `tol` and the interpolant matches the
    /// sampler on the next finer grid to within `tol`.
    ///
    /// `tol` is relative to `max(1, max |samples|)`.
    pub fn from_samples<F>(interval: Interval, sampler: F, tol: f64) -> Result<ChebFun>
    where
        F: Fn(f64) -> C64,
    {
        if !(tol > 0.0) {
            return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
        }
        let sample = |t: f64| -> Result<C64> {
            let v = sampler(interval.from_reference(t));
            if v.re.is_finite() && v.im.is_finite() {
                Ok(v)
            } else {
                Err(Error::InvalidInput(format!(
                    "sampler returned a non-finite value at x = {}",
                    interval.from_reference(t)
                )))
            }
        };

        let mut n = 17;
        let mut last_residual = f64::INFINITY;
        while n <= MAX_SAMPLE_DEGREE + 1 {
            let pts = cheb_points(n);
            let values = pts.iter().map(|&t| sample(t)).collect::<Result<Vec<_>>>()?;
            let scale = values.iter().map(|v| v.norm()).fold(1.0, f64::max);
            let coeffs = values_to_coeffs(&values);

            let tail_start = n - (n / 4).max(2);
            let tail = coeffs[tail_start..].iter().map(|c| c.norm()).fold(0.0, f64::max);
            if tail <= 0.1 * tol * scale || tail <= 8.0 * f64::EPSILON * scale {
                // chop at the noise plateau, never above the trailing cutoff
                let max_c = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
                let plateau = (0.01 * tol * scale).max(4.0 * tail);
                let chop = plateau.min(TRAILING_CUTOFF * max_c);
                let keep = coeffs.iter().rposition(|c| c.norm() > chop).map_or(1, |d| d + 1);
                let f = ChebFun::from_coeffs(interval, coeffs[..keep].to_vec())?;

                // check on the next grid, whose odd points are new
                let fine = cheb_points(2 * n - 1);
                let mut residual: f64 = 0.0;
                for &t in fine.iter().skip(1).step_by(2) {
                    residual = residual.max((f.eval_reference(t) - sample(t)?).norm());
                }
                last_residual = residual;
                if residual <= tol * scale {
                    return Ok(f);
                }
            } else {
                last_residual = tail;
            }
            n = 2 * n - 1;
        }
        Err(Error::ApproximationFailure { degree: MAX_SAMPLE_DEGREE, residual: last_residual })
    }

    pub fn from_real_samples<F>(interval: Interval, sampler: F, tol: f64) -> Result<ChebFun>
    where
        F: Fn(f64) -> f64,
    {
        Self::from_samples(interval, |x| C64::new(sampler(x), 0.0), tol).map(|f| f.real_part())
    }
}
