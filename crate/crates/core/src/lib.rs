//! Numerics for the n-th derivative and the Volterra integration operator on
//! a bounded interval, together with constructive witnesses of their linear
//! chaos: growth-rate estimates, periodic points with certified error bounds,
//! and finite orbit shadowing.

pub mod error;
pub mod funcspace;
pub mod operators;
pub mod chaos;
pub mod experiments;

pub use error::{Error, Result};
pub use funcspace::{ChebFun, Field, Interval, LpIndex, NormMode, C64};
