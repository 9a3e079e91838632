//! Functions on a bounded interval represented as finite Chebyshev series.
//!
//! A [`ChebFun`] stores coefficients `c_0..c_d` of `sum c_k T_k(t)` where
//! `t = (2x - a - b) / (b - a)` maps `[a, b]` onto `[-1, 1]`. Coefficients are
//! complex; a [`Field::Real`] tag asserts that every imaginary part is zero.

mod approx;
mod chebfun;
mod dct;
mod norms;
mod quadrature;

pub use approx::MAX_SAMPLE_DEGREE;
pub use chebfun::{ChebFun, TRAILING_CUTOFF};
pub use norms::{LP_NORM_TOLERANCE, SUP_NORM_TOLERANCE};
pub use quadrature::GaussLegendre;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = num_complex::Complex64;

/// The closed interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(f64, f64)", into = "(f64, f64)")]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "interval endpoints must be finite, got [{a}, {b}]"
            )));
        }
        if a >= b {
            return Err(Error::InvalidInput(format!(
                "interval requires a < b, got [{a}, {b}]"
            )));
        }
        Ok(Interval { a, b })
    }

    /// `[0, 1]`.
    pub fn unit() -> Self {
        Interval { a: 0.0, b: 1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.b - self.a)
    }

    /// Maps `x` in `[a, b]` to `t` in `[-1, 1]`.
    pub fn to_reference(&self, x: f64) -> f64 {
        ((2.0 * x - self.a - self.b) / (self.b - self.a)).clamp(-1.0, 1.0)
    }

    /// Maps `t` in `[-1, 1]` to `x` in `[a, b]`.
    pub fn from_reference(&self, t: f64) -> f64 {
        if t <= -1.0 {
            self.a
        } else if t >= 1.0 {
            self.b
        } else {
            self.midpoint() + self.half_width() * t
        }
    }

    /// Membership with a rounding allowance of a few ulps of the width.
    pub fn contains(&self, x: f64) -> bool {
        let slack = 4.0 * f64::EPSILON * self.width().max(self.a.abs()).max(self.b.abs());
        x >= self.a - slack && x <= self.b + slack
    }
}

impl TryFrom<(f64, f64)> for Interval {
    type Error = Error;

    fn try_from((a, b): (f64, f64)) -> Result<Self> {
        Interval::new(a, b)
    }
}

impl From<Interval> for (f64, f64) {
    fn from(i: Interval) -> Self {
        (i.a, i.b)
    }
}

/// Scalar field of a function space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

/// Exponent `p >= 1` of an `L_p` norm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct LpIndex(f64);

impl LpIndex {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_finite() && p >= 1.0 {
            Ok(LpIndex(p))
        } else {
            Err(Error::InvalidInput(format!("L_p index needs 1 <= p < inf, got {p}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// True when `|f|^p` is a polynomial whenever `f` is.
    pub fn is_even_integer(self) -> bool {
        self.0.fract() == 0.0 && (self.0 as u64) % 2 == 0
    }
}

impl TryFrom<f64> for LpIndex {
    type Error = Error;

    fn try_from(p: f64) -> Result<Self> {
        LpIndex::new(p)
    }
}

impl From<LpIndex> for f64 {
    fn from(p: LpIndex) -> Self {
        p.0
    }
}

/// Which Banach-space norm a computation is measured in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "norm", rename_all = "lowercase")]
pub enum NormMode {
    Sup,
    Lp { p: LpIndex },
}

impl NormMode {
    pub fn lp(p: f64) -> Result<Self> {
        Ok(NormMode::Lp { p: LpIndex::new(p)? })
    }

    pub fn norm(&self, f: &ChebFun) -> f64 {
        match self {
            NormMode::Sup => f.sup_norm(),
            NormMode::Lp { p } => f.lp_norm(*p),
        }
    }

    /// Factor `K` with `||f||_mode <= K ||f||_sup` on `interval`.
    pub fn sup_domination(&self, interval: &Interval) -> f64 {
        match self {
            NormMode::Sup => 1.0,
            NormMode::Lp { p } => interval.width().powf(1.0 / p.value()),
        }
    }
}

impl std::fmt::Display for NormMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NormMode::Sup => write!(f, "sup"),
            NormMode::Lp { p } => write!(f, "L{}", p.value()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_rejects_degenerate() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
        let i = Interval::new(-2.0, 3.0).unwrap();
        assert_eq!(i.width(), 5.0);
        assert_eq!(i.to_reference(-2.0), -1.0);
        assert_eq!(i.to_reference(3.0), 1.0);
        assert_eq!(i.from_reference(0.0), 0.5);
    }

    #[test]
    fn lp_index_bounds() {
        assert!(LpIndex::new(0.5).is_err());
        assert!(LpIndex::new(f64::INFINITY).is_err());
        assert!(LpIndex::new(2.0).unwrap().is_even_integer());
        assert!(!LpIndex::new(3.5).unwrap().is_even_integer());
        assert!(!LpIndex::new(1.0).unwrap().is_even_integer());
    }

    #[test]
    fn norm_mode_serde_shape() {
        let s = serde_json::to_string(&NormMode::lp(2.0).unwrap()).unwrap();
        assert_eq!(s, r#"{"norm":"lp","p":2.0}"#);
        let m: NormMode = serde_json::from_str(r#"{"norm":"sup"}"#).unwrap();
        assert_eq!(m, NormMode::Sup);
        assert!(serde_json::from_str::<NormMode>(r#"{"norm":"lp","p":0.5}"#).is_err());
    }
}
