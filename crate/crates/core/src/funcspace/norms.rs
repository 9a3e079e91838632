use super::chebfun::ChebFun;
use super::dct::{cheb_points, coeffs_to_values};
use super::quadrature::GaussLegendre;
use super::{Field, LpIndex};

/// Declared accuracy of [`ChebFun::sup_norm`].
pub const SUP_NORM_TOLERANCE: f64 = 1e-10;
/// Declared accuracy of [`ChebFun::lp_norm`] for non-polynomial integrands.
pub const LP_NORM_TOLERANCE: f64 = 1e-8;

const MIN_SUP_GRID: usize = 257;
const GOLDEN_WIDTH: f64 = 1e-13;
const MIN_GAUSS_NODES: usize = 64;

/// Maximizes `g` on `[lo, hi]` by golden-section search.
fn golden_max<F: Fn(f64) -> f64>(g: F, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut g1 = g(x1);
    let mut g2 = g(x2);
    let mut best = g1.max(g2);
    while hi - lo > GOLDEN_WIDTH {
        if g1 < g2 {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + inv_phi * (hi - lo);
            g2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - inv_phi * (hi - lo);
            g1 = g(x1);
        }
        best = best.max(g1).max(g2);
    }
    best
}

impl ChebFun {
    /// Grid of size `max(8 (len), 257)` on the Chebyshev extreme points.
    fn sup_grid(&self) -> (Vec<f64>, Vec<f64>) {
        let m = (8 * self.len()).max(MIN_SUP_GRID);
        let vals = coeffs_to_values(self.coeffs(), m);
        (cheb_points(m), vals.iter().map(|v| v.norm()).collect())
    }

    /// `max |f|` over `[a, b]`: Chebyshev grid scan followed by
    /// golden-section refinement of every competitive local maximum.
    pub fn sup_norm(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        if self.len() == 1 {
            return self.coeffs()[0].norm();
        }
        let (pts, vals) = self.sup_grid();
        let grid_max = vals.iter().copied().fold(0.0, f64::max);
        let mut best = grid_max;
        let m = vals.len();
        for i in 0..m {
            let left = if i > 0 { vals[i - 1] } else { f64::NEG_INFINITY };
            let right = if i + 1 < m { vals[i + 1] } else { f64::NEG_INFINITY };
            if vals[i] < left || vals[i] < right || vals[i] < 0.5 * grid_max {
                continue;
            }
            // points are descending in t
            let hi = if i > 0 { pts[i - 1] } else { pts[i] };
            let lo = if i + 1 < m { pts[i + 1] } else { pts[i] };
            if hi > lo {
                best = best.max(golden_max(|t| self.eval_reference(t).norm(), lo, hi));
            }
        }
        best
    }

    /// Breakpoints in reference coordinates: the ends plus interior sign
    /// changes of a real-valued function.
    fn sign_change_panels(&self) -> Vec<f64> {
        let mut breaks = vec![-1.0];
        let real_valued =
            self.field() == Field::Real || self.coeffs().iter().all(|c| c.im == 0.0);
        if real_valued && self.len() > 1 {
            let m = (8 * self.len()).max(MIN_SUP_GRID);
            let pts = cheb_points(m);
            let vals: Vec<f64> = coeffs_to_values(self.coeffs(), m).iter().map(|v| v.re).collect();
            // ascending order
            let pts: Vec<f64> = pts.into_iter().rev().collect();
            let vals: Vec<f64> = vals.into_iter().rev().collect();
            for j in 0..m - 1 {
                let (t0, t1) = (pts[j], pts[j + 1]);
                let (v0, v1) = (vals[j], vals[j + 1]);
                if v0 == 0.0 && j > 0 {
                    breaks.push(t0);
                } else if v0 * v1 < 0.0 {
                    breaks.push(self.bisect_root(t0, t1, v0));
                }
            }
        }
        breaks.push(1.0);
        breaks.dedup_by(|x, y| (*x - *y).abs() < 1e-15);
        breaks
    }

    fn bisect_root(&self, mut lo: f64, mut hi: f64, v_lo: f64) -> f64 {
        let sign_lo = v_lo.signum();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let v = self.eval_reference(mid).re;
            if v == 0.0 {
                return mid;
            }
            if v.signum() == sign_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// `(int_a^b |f|^p dx)^(1/p)` by Gauss-Legendre quadrature with
    /// `max(4 (len) ceil(p), 64)` nodes per panel. Panels split at sign
    /// changes unless `|f|^p` is already a polynomial.
    pub fn lp_norm(&self, p: LpIndex) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let pv = p.value();
        let nodes = (4 * self.len() * pv.ceil() as usize).max(MIN_GAUSS_NODES);
        let rule = GaussLegendre::cached(nodes);
        let breaks = if p.is_even_integer() { vec![-1.0, 1.0] } else { self.sign_change_panels() };

        let mut samples: Vec<(f64, f64)> = Vec::with_capacity(rule.len() * (breaks.len() - 1));
        for w in breaks.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let (m, h) = (0.5 * (lo + hi), 0.5 * (hi - lo));
            for (&x, &wt) in rule.nodes.iter().zip(&rule.weights) {
                samples.push((h * wt, self.eval_reference(m + h * x).norm()));
            }
        }
        let scale = samples.iter().map(|s| s.1).fold(0.0, f64::max);
        if scale == 0.0 {
            return 0.0;
        }
        let sum: f64 = samples.iter().map(|(w, v)| w * (v / scale).powf(pv)).sum();
        // reference measure dt = dx * 2 / (b - a)
        scale * (self.interval().half_width() * sum).powf(1.0 / pv)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{Interval, C64};
    use super::*;

    #[test]
    fn sup_of_simple_functions() {
        let i = Interval::unit();
        assert_eq!(ChebFun::zero(i).sup_norm(), 0.0);
        let e5 = ChebFun::from_real_monomials(i, &[0.0, 0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        assert!((e5.sup_norm() - 1.0).abs() < 1e-14);
        // interior maximum: 1 - (2x-1)^2 peaks at x = 1/2 with value 1
        let bump = ChebFun::from_real_coeffs(i, &[0.5, 0.0, -0.5]).unwrap();
        assert!((bump.sup_norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn interior_maximum_off_grid() {
        // f(x) = x (1-x) (x - 0.3) on [0,1], max |f| at a root of the derivative
        let i = Interval::unit();
        let f = ChebFun::from_real_power_coeffs(i, &[0.0, -0.3, 1.3, -1.0]).unwrap();
        let brute = (0..=2_000_000)
            .map(|j| {
                let x = j as f64 / 2e6;
                (x * (1.0 - x) * (x - 0.3)).abs()
            })
            .fold(0.0, f64::max);
        assert!((f.sup_norm() - brute).abs() < 1e-12);
    }

    #[test]
    fn lp_of_simple_functions() {
        let i = Interval::unit();
        let p2 = LpIndex::new(2.0).unwrap();
        let one = ChebFun::constant(i, C64::new(1.0, 0.0));
        assert!((one.lp_norm(p2) - 1.0).abs() < 1e-15);
        let x = ChebFun::from_real_monomials(i, &[0.0, 1.0]).unwrap();
        assert!((x.lp_norm(p2) - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn l1_splits_at_sign_changes() {
        // int_0^1 |2x - 1| dx = 1/2
        let f = ChebFun::from_real_coeffs(Interval::unit(), &[0.0, 1.0]).unwrap();
        let v = f.lp_norm(LpIndex::new(1.0).unwrap());
        assert!((v - 0.5).abs() < 1e-15);
        // |T_3| on [-1, 1], roots at 0 and +-sqrt(3)/2
        let t3 = ChebFun::from_real_coeffs(Interval::new(-1.0, 1.0).unwrap(), &[0.0, 0.0, 0.0, 1.0])
            .unwrap();
        let r = 3f64.sqrt() / 2.0;
        let anti = |x: f64| x.powi(4) - 1.5 * x * x; // antiderivative of 4x^3 - 3x
        let exact = 2.0 * ((anti(r) - anti(0.0)).abs() + (anti(1.0) - anti(r)).abs());
        assert!((t3.lp_norm(LpIndex::new(1.0).unwrap()) - exact).abs() < 1e-14);
    }

    #[test]
    fn complex_modulus() {
        let i = Interval::unit();
        let f = ChebFun::constant(i, C64::new(3.0, 4.0));
        assert_eq!(f.sup_norm(), 5.0);
        assert!((f.lp_norm(LpIndex::new(3.5).unwrap()) - 5.0).abs() < 1e-13);
    }

    #[test]
    fn tiny_functions_do_not_underflow() {
        let f = ChebFun::from_real_coeffs(Interval::unit(), &[1e-150, 1e-151]).unwrap();
        let v = f.lp_norm(LpIndex::new(3.5).unwrap());
        assert!(v > 0.9e-150 && v < 1.2e-150, "{v}");
    }
}
