use serde::{Deserialize, Serialize};

use super::{Field, Interval, C64};
use crate::error::{Error, Result};

/// Coefficients at or below this fraction of the largest one form the tail.
pub const TRAILING_CUTOFF: f64 = 1e-14;

/// A function on `[a, b]` given by a finite Chebyshev series.
///
/// Coefficients are stored verbatim. [`ChebFun::degree`] reports the
/// cutoff degree, while the operators act on the full stored series so that
/// polynomial identities hold without truncation error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChebFun {
    interval: Interval,
    coeffs: Vec<C64>,
    field: Field,
}

fn detect_field(coeffs: &[C64]) -> Field {
    if coeffs.iter().all(|c| c.im == 0.0) {
        Field::Real
    } else {
        Field::Complex
    }
}

impl ChebFun {
    /// Builds a function from Chebyshev coefficients. The field is real when
    /// every imaginary part is exactly zero.
    pub fn from_coeffs(interval: Interval, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("empty coefficient list".into()));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite coefficient".into()));
        }
        let field = detect_field(&coeffs);
        Ok(ChebFun { interval, coeffs, field })
    }

    pub fn from_real_coeffs(interval: Interval, coeffs: &[f64]) -> Result<Self> {
        Self::from_coeffs(interval, coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    /// Internal constructor for results of exact coefficient recurrences.
    pub(crate) fn from_parts(interval: Interval, mut coeffs: Vec<C64>, field: Field) -> Self {
        if coeffs.is_empty() {
            coeffs.push(C64::new(0.0, 0.0));
        }
        if field == Field::Real {
            for c in coeffs.iter_mut() {
                c.im = 0.0;
            }
        }
        ChebFun { interval, coeffs, field }
    }

    pub fn zero(interval: Interval) -> Self {
        Self::from_parts(interval, vec![C64::new(0.0, 0.0)], Field::Real)
    }

    pub fn constant(interval: Interval, value: C64) -> Self {
        let field = detect_field(&[value]);
        Self::from_parts(interval, vec![value], field)
    }

    /// `sum_j c_j ((x - a) / (b - a))^j`.
    pub fn from_monomials(interval: Interval, coeffs: &[C64]) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("empty coefficient list".into()));
        }
        // Horner in the Chebyshev basis with u = (1 + t) / 2.
        let mut acc = vec![coeffs[coeffs.len() - 1]];
        for &c in coeffs.iter().rev().skip(1) {
            let tu = mul_by_t(&acc);
            let mut next: Vec<C64> = tu
                .iter()
                .enumerate()
                .map(|(k, v)| 0.5 * (v + acc.get(k).copied().unwrap_or_default()))
                .collect();
            next[0] += c;
            acc = next;
        }
        Self::from_coeffs(interval, acc)
    }

    pub fn from_real_monomials(interval: Interval, coeffs: &[f64]) -> Result<Self> {
        let c: Vec<C64> = coeffs.iter().map(|&v| C64::new(v, 0.0)).collect();
        Self::from_monomials(interval, &c)
    }

    /// `sum_j c_j x^j` in the raw variable `x`.
    pub fn from_power_coeffs(interval: Interval, coeffs: &[C64]) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("empty coefficient list".into()));
        }
        let (m, h) = (interval.midpoint(), interval.half_width());
        let mut acc = vec![coeffs[coeffs.len() - 1]];
        for &c in coeffs.iter().rev().skip(1) {
            let tx = mul_by_t(&acc);
            let mut next: Vec<C64> = tx
                .iter()
                .enumerate()
                .map(|(k, v)| h * v + m * acc.get(k).copied().unwrap_or_default())
                .collect();
            next[0] += c;
            acc = next;
        }
        Self::from_coeffs(interval, acc)
    }

    pub fn from_real_power_coeffs(interval: Interval, coeffs: &[f64]) -> Result<Self> {
        let c: Vec<C64> = coeffs.iter().map(|&v| C64::new(v, 0.0)).collect();
        Self::from_power_coeffs(interval, &c)
    }

    /// Coefficients in the normalized monomial basis `((x - a)/(b - a))^j`.
    ///
    /// Conditioning degrades with degree; intended for low-degree inputs.
    pub fn to_monomials(&self) -> Vec<C64> {
        let n = self.coeffs.len();
        let mut out = vec![C64::new(0.0, 0.0); n];
        // T_k as polynomials in u, with t = 2u - 1
        let mut prev: Vec<f64> = vec![1.0];
        let mut cur: Vec<f64> = vec![-1.0, 2.0];
        out[0] += self.coeffs[0];
        if n > 1 {
            for (j, v) in cur.iter().enumerate() {
                out[j] += self.coeffs[1] * v;
            }
        }
        for k in 2..n {
            // T_k = 2 t T_{k-1} - T_{k-2} = (4u - 2) T_{k-1} - T_{k-2}
            let mut next = vec![0.0; k + 1];
            for (j, v) in cur.iter().enumerate() {
                next[j + 1] += 4.0 * v;
                next[j] -= 2.0 * v;
            }
            for (j, v) in prev.iter().enumerate() {
                next[j] -= v;
            }
            for (j, v) in next.iter().enumerate() {
                out[j] += self.coeffs[k] * v;
            }
            prev = std::mem::replace(&mut cur, next);
        }
        out
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Number of stored coefficients.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Index of the last coefficient above the trailing cutoff.
    pub fn degree(&self) -> usize {
        let cutoff = TRAILING_CUTOFF * self.max_coeff_abs();
        self.coeffs
            .iter()
            .rposition(|c| c.norm() > cutoff)
            .unwrap_or(0)
    }

    /// Exactly zero, coefficient by coefficient.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    /// Relabels as a complex-field function.
    pub fn to_complex(&self) -> Self {
        ChebFun { field: Field::Complex, ..self.clone() }
    }

    /// Drops coefficients beyond [`ChebFun::degree`].
    pub fn chopped(&self) -> Self {
        let d = self.degree();
        Self::from_parts(self.interval, self.coeffs[..=d].to_vec(), self.field)
    }

    pub fn evaluate(&self, x: f64) -> Result<C64> {
        if !x.is_finite() || !self.interval.contains(x) {
            return Err(Error::Domain { x, a: self.interval.a(), b: self.interval.b() });
        }
        Ok(self.eval_reference(self.interval.to_reference(x)))
    }

    /// Clenshaw recurrence at the reference point `t` in `[-1, 1]`.
    pub fn eval_reference(&self, t: f64) -> C64 {
        clenshaw(&self.coeffs, t)
    }

    fn check_compatible(&self, other: &ChebFun) -> Result<()> {
        if self.interval != other.interval {
            return Err(Error::Incompatible(format!(
                "intervals differ: [{}, {}] vs [{}, {}]",
                self.interval.a(),
                self.interval.b(),
                other.interval.a(),
                other.interval.b()
            )));
        }
        if self.field != other.field {
            return Err(Error::Incompatible(format!(
                "fields differ: {:?} vs {:?}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &ChebFun) -> Result<ChebFun> {
        self.check_compatible(other)?;
        let n = self.len().max(other.len());
        let coeffs = (0..n)
            .map(|k| {
                self.coeffs.get(k).copied().unwrap_or_default()
                    + other.coeffs.get(k).copied().unwrap_or_default()
            })
            .collect();
        Ok(Self::from_parts(self.interval, coeffs, self.field))
    }

    pub fn sub(&self, other: &ChebFun) -> Result<ChebFun> {
        self.add(&other.scale(C64::new(-1.0, 0.0))?)
    }

    /// Multiplies by `c`. A real-field function accepts only real `c`.
    pub fn scale(&self, c: C64) -> Result<ChebFun> {
        if self.field == Field::Real && c.im != 0.0 {
            return Err(Error::Incompatible(
                "non-real scalar applied to a real-field function".into(),
            ));
        }
        let coeffs = self.coeffs.iter().map(|v| v * c).collect();
        Ok(Self::from_parts(self.interval, coeffs, self.field))
    }

    pub fn scale_real(&self, c: f64) -> ChebFun {
        let coeffs = self.coeffs.iter().map(|v| v * c).collect();
        Self::from_parts(self.interval, coeffs, self.field)
    }

    /// Real part as a real-field function.
    pub fn real_part(&self) -> ChebFun {
        let coeffs = self.coeffs.iter().map(|v| C64::new(v.re, 0.0)).collect();
        Self::from_parts(self.interval, coeffs, Field::Real)
    }

    /// Imaginary part as a real-field function.
    pub fn imag_part(&self) -> ChebFun {
        let coeffs = self.coeffs.iter().map(|v| C64::new(v.im, 0.0)).collect();
        Self::from_parts(self.interval, coeffs, Field::Real)
    }

    /// Largest coefficient difference against `other`, padding with zeros.
    pub fn max_coeff_diff(&self, other: &ChebFun) -> f64 {
        let n = self.len().max(other.len());
        (0..n)
            .map(|k| {
                (self.coeffs.get(k).copied().unwrap_or_default()
                    - other.coeffs.get(k).copied().unwrap_or_default())
                .norm()
            })
            .fold(0.0, f64::max)
    }
}

pub(crate) fn clenshaw(c: &[C64], t: f64) -> C64 {
    let n = c.len();
    if n == 0 {
        return C64::new(0.0, 0.0);
    }
    if n == 1 {
        return c[0];
    }
    let two_t = 2.0 * t;
    let mut b1 = C64::new(0.0, 0.0);
    let mut b2 = C64::new(0.0, 0.0);
    for k in (1..n).rev() {
        let b0 = two_t * b1 - b2 + c[k];
        b2 = b1;
        b1 = b0;
    }
    t * b1 - b2 + c[0]
}

/// Coefficients of `t * f(t)`.
pub(crate) fn mul_by_t(c: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); c.len() + 1];
    for (k, &ck) in c.iter().enumerate() {
        if k == 0 {
            out[1] += ck;
        } else {
            out[k + 1] += 0.5 * ck;
            out[k - 1] += 0.5 * ck;
        }
    }
    out
}
