//! The n-th derivative, the Volterra integration operator and their powers,
//! acting exactly on Chebyshev coefficients.

mod eigen;

pub use eigen::{
    eigen_residual, eigenfunction_basis, eigenfunction_basis_real, eigenspace_rank, exp_chebfun,
    EigenData, EXP_REPRESENTABILITY_CEILING, GRAM_RANK_CUTOFF,
};

use std::sync::OnceLock;

use crate::error::{Error, Result};
use twofloat::TwoFloat;

use crate::funcspace::{ChebFun, Field, Interval, LpIndex, C64};

const LN_FACTORIAL_TABLE: usize = 1 << 16;

/// `ln k!`, tabulated up to `2^16` and by Stirling's series beyond.
pub fn ln_factorial(k: usize) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(LN_FACTORIAL_TABLE);
        let mut acc = 0.0;
        t.push(0.0);
        for j in 1..LN_FACTORIAL_TABLE {
            acc += (j as f64).ln();
            t.push(acc);
        }
        t
    });
    if let Some(&v) = table.get(k) {
        return v;
    }
    let x = k as f64 + 1.0;
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + 1.0 / (12.0 * x)
        - 1.0 / (360.0 * x.powi(3))
}

// Powers run in double-double arithmetic: constant offsets introduced at
// each integration step otherwise grow like 2^m relative to V^m f.
type Dd = TwoFloat;

/// Chebyshev derivative recurrence, divided by `h` for the interval map.
fn diff_coeffs(c: &[Dd], h: f64) -> Vec<Dd> {
    let zero = Dd::from(0.0);
    let len = c.len();
    if len <= 1 {
        return vec![zero];
    }
    let d = len - 1;
    let mut out = vec![zero; d + 2];
    for k in (1..d).rev() {
        out[k] = out[k + 2] + c[k + 1] * (2.0 * (k + 1) as f64);
    }
    out[0] = out[2] * 0.5 + c[1];
    out.truncate(d);
    out.iter().map(|&v| v / h).collect()
}

/// Chebyshev integration recurrence with the constant fixed by `F(-1) = 0`,
/// scaled by `h`.
fn integrate_coeffs(c: &[Dd], h: f64) -> Vec<Dd> {
    let zero = Dd::from(0.0);
    let len = c.len();
    let at = |j: usize| c.get(j).copied().unwrap_or(zero);
    let mut out = vec![zero; len + 1];
    out[1] = at(0) - at(2) * 0.5;
    for k in 2..=len {
        out[k] = (at(k - 1) - at(k + 1)) / (2.0 * k as f64);
    }
    let mut c0 = zero;
    for (k, v) in out.iter_mut().enumerate().skip(1) {
        *v *= h;
        if k % 2 == 1 {
            c0 += *v;
        } else {
            c0 -= *v;
        }
    }
    out[0] = c0;
    out
}

/// Applies a real-linear coefficient map `times` times to the real and
/// imaginary parts separately.
fn iterate_linear(f: &ChebFun, times: usize, step: impl Fn(&[Dd]) -> Vec<Dd>) -> ChebFun {
    let run = |part: fn(&C64) -> f64| {
        let mut c: Vec<Dd> = f.coeffs().iter().map(|z| Dd::from(part(z))).collect();
        for _ in 0..times {
            c = step(&c);
        }
        c
    };
    let re = run(|z| z.re);
    let coeffs = if f.field() == Field::Complex {
        let im = run(|z| z.im);
        re.iter().zip(&im).map(|(&r, &i)| C64::new(r.into(), i.into())).collect()
    } else {
        re.iter().map(|&r| C64::new(r.into(), 0.0)).collect()
    };
    ChebFun::from_parts(*f.interval(), coeffs, f.field())
}

/// `f'`.
pub fn differentiate(f: &ChebFun) -> ChebFun {
    derivative_power(f, 1)
}

/// `f^(n)`; `n = 0` is the identity. Exactly zero once `n` reaches the
/// stored series length.
pub fn derivative_power(f: &ChebFun, n: usize) -> ChebFun {
    if n >= f.len() {
        return ChebFun::from_parts(*f.interval(), vec![C64::new(0.0, 0.0)], f.field());
    }
    if n == 0 {
        return f.clone();
    }
    let h = f.interval().half_width();
    iterate_linear(f, n, |c| diff_coeffs(c, h))
}

/// `[Bf](x) = int_a^x f(t) dt`.
pub fn volterra(f: &ChebFun) -> ChebFun {
    volterra_power(f, 1)
}

/// `B^n f`.
pub fn volterra_power(f: &ChebFun, n: usize) -> ChebFun {
    if f.is_zero() || n == 0 {
        return f.clone();
    }
    let h = f.interval().half_width();
    iterate_linear(f, n, |c| integrate_coeffs(c, h))
}

/// `e_k(x) = ((x - a) / (b - a))^k`, the unit sup-norm monomial.
pub fn monomial_sup(interval: Interval, k: usize) -> ChebFun {
    let mut coeffs = vec![0.0; k + 1];
    coeffs[k] = 1.0;
    ChebFun::from_real_monomials(interval, &coeffs).expect("non-empty coefficients")
}

/// `((kp + 1) / (b - a))^(1/p) e_k`, the unit `L_p`-norm monomial.
pub fn monomial_lp(interval: Interval, k: usize, p: LpIndex) -> ChebFun {
    let pv = p.value();
    let factor = ((k as f64 * pv + 1.0) / interval.width()).powf(1.0 / pv);
    monomial_sup(interval, k).scale_real(factor)
}

/// `D^n` with maximal domain. Every representable function is smooth, so
/// every `ChebFun` lies in the domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DerivativeOp {
    order: usize,
}

impl DerivativeOp {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidInput("derivative order must be at least 1".into()));
        }
        Ok(DerivativeOp { order })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn apply(&self, f: &ChebFun) -> ChebFun {
        derivative_power(f, self.order)
    }

    /// `(D^n)^m f`.
    pub fn power(&self, f: &ChebFun, m: usize) -> ChebFun {
        derivative_power(f, self.order * m)
    }
}

/// The Volterra operator on a fixed interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolterraOp {
    interval: Interval,
}

impl VolterraOp {
    pub fn new(interval: Interval) -> Self {
        VolterraOp { interval }
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    fn check(&self, f: &ChebFun) -> Result<()> {
        if *f.interval() != self.interval {
            return Err(Error::Incompatible("operand interval differs from operator's".into()));
        }
        Ok(())
    }

    pub fn apply(&self, f: &ChebFun) -> Result<ChebFun> {
        self.check(f)?;
        Ok(volterra(f))
    }

    pub fn power(&self, f: &ChebFun, n: usize) -> Result<ChebFun> {
        self.check(f)?;
        Ok(volterra_power(f, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Interval {
        Interval::unit()
    }

    fn factorial(n: u32) -> f64 {
        (1..=n).map(f64::from).product()
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let f = ChebFun::constant(unit(), C64::new(3.0, 0.0));
        assert!(differentiate(&f).is_zero());
    }

    #[test]
    fn derivative_of_e3() {
        let e3 = monomial_sup(unit(), 3);
        let d = differentiate(&e3);
        let e2 = monomial_sup(unit(), 2).scale_real(3.0);
        assert!(d.max_coeff_diff(&e2) < 1e-14);
        assert!((d.sup_norm() - 3.0).abs() < 1e-13);
    }

    #[test]
    fn derivative_of_sine_is_cosine() {
        let i = Interval::new(0.0, std::f64::consts::PI).unwrap();
        let s = ChebFun::from_real_samples(i, f64::sin, 1e-14).unwrap();
        let ds = differentiate(&s);
        let err = (0..256)
            .map(|j| {
                let x = i.a() + i.width() * j as f64 / 255.0;
                (ds.evaluate(x).unwrap().re - x.cos()).abs()
            })
            .fold(0.0, f64::max);
        assert!(err < 1e-11, "{err}");
    }

    #[test]
    fn derivative_power_examples() {
        let f = monomial_sup(unit(), 4);
        assert_eq!(derivative_power(&f, 0), f);
        let d2 = derivative_power(&monomial_sup(unit(), 2), 2);
        assert!((d2.sup_norm() - 2.0).abs() < 1e-13);

        let i = Interval::new(0.0, 2.0 * std::f64::consts::PI).unwrap();
        let s = ChebFun::from_real_samples(i, f64::sin, 1e-15).unwrap();
        let d4 = derivative_power(&s, 4);
        assert!(d4.sub(&s).unwrap().sup_norm() < 1e-9);
    }

    #[test]
    fn volterra_examples() {
        let z = ChebFun::zero(unit());
        assert!(volterra(&z).is_zero());
        let one = ChebFun::constant(unit(), C64::new(1.0, 0.0));
        let x = volterra(&one);
        assert!((x.evaluate(1.0).unwrap().re - 1.0).abs() < 1e-15);
        assert!(x.evaluate(0.0).unwrap().norm() < 1e-15);
        let b5 = volterra_power(&one, 5);
        assert!((b5.sup_norm() - 1.0 / 120.0).abs() < 1e-13);
        assert!(b5.evaluate(0.0).unwrap().norm() < 1e-13);
    }

    #[test]
    fn volterra_power_closed_forms() {
        let x = monomial_sup(unit(), 1);
        let b12 = volterra_power(&x, 12);
        let want = 1.0 / factorial(13);
        assert!(((b12.sup_norm() - want) / want).abs() < 1e-12);
        assert_eq!(volterra_power(&x, 0), x);

        let b3 = volterra_power(&monomial_sup(unit(), 2), 3);
        let x5_60 = monomial_sup(unit(), 5).scale_real(1.0 / 60.0);
        assert!(b3.max_coeff_diff(&x5_60) < 1e-15);
    }

    #[test]
    fn volterra_on_shifted_interval_starts_at_a() {
        let i = Interval::new(-2.0, 3.0).unwrap();
        let f = ChebFun::from_real_power_coeffs(i, &[1.0, -2.0, 0.5]).unwrap();
        let bf = volterra(&f);
        assert!(bf.evaluate(-2.0).unwrap().norm() < 1e-13);
        // int_{-2}^{3} (1 - 2t + t^2/2) dt = 5 - 5 + (27 + 8)/6
        assert!((bf.evaluate(3.0).unwrap().re - 35.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn monomials() {
        assert_eq!(monomial_sup(unit(), 0).coeffs(), &[C64::new(1.0, 0.0)]);
        assert!((monomial_sup(unit(), 3).evaluate(0.5).unwrap().re - 0.125).abs() < 1e-15);
        let e7 = monomial_sup(Interval::new(-2.0, 3.0).unwrap(), 7);
        assert!((e7.sup_norm() - 1.0).abs() < 1e-12);

        let p1 = LpIndex::new(1.0).unwrap();
        let p2 = LpIndex::new(2.0).unwrap();
        let m0 = monomial_lp(unit(), 0, p1);
        assert!((m0.lp_norm(p1) - 1.0).abs() < 1e-14);
        let m1 = monomial_lp(unit(), 1, p2);
        assert!((m1.evaluate(1.0).unwrap().re - 3f64.sqrt()).abs() < 1e-14);
        assert!((m1.lp_norm(p2) - 1.0).abs() < 1e-14);
        let de2 = differentiate(&monomial_lp(unit(), 2, p2));
        assert!((de2.lp_norm(p2) - 2.0 * (5.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn kernel_of_derivative_power() {
        let f = ChebFun::from_real_power_coeffs(unit(), &[1.0, -2.0, 3.0]).unwrap();
        assert_eq!(f.degree(), 2);
        assert!(!derivative_power(&f, 2).is_zero());
        assert!(derivative_power(&f, 3).is_zero());
        assert!(derivative_power(&f, 9).is_zero());
    }

    #[test]
    fn operator_types() {
        assert!(DerivativeOp::new(0).is_err());
        let d2 = DerivativeOp::new(2).unwrap();
        let e4 = monomial_sup(unit(), 4);
        assert!((d2.apply(&e4).sup_norm() - 12.0).abs() < 1e-12);
        assert!((d2.power(&e4, 2).sup_norm() - 24.0).abs() < 1e-11);
        let v = VolterraOp::new(Interval::new(0.0, 2.0).unwrap());
        assert!(matches!(v.apply(&e4), Err(Error::Incompatible(_))));
    }
}
