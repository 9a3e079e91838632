//! Quantitative chaos machinery for `A = D^n` with right inverse `B = V^n`
//! (`V` the Volterra operator) on the dense subspace of polynomials.
//!
//! Everything here is a finite witness: growth exponents over a finite
//! horizon, periodic points built from truncated series with an analytic
//! tail bound, and single vectors whose orbits visit finitely many targets.

mod bounds;
mod criterion;
mod growth;
mod periodic;
mod probes;
mod shadow;

pub use bounds::volterra_tail_bound;
pub use criterion::{check_chaos_criterion, CriterionCertificate, RIGHT_INVERSE_TOLERANCE};
pub use growth::{growth_sequence, GrowthReport, OperatorTag};
pub use periodic::{
    periodic_point, periodic_point_near, PeriodicCertificate, PERIODIC_RESIDUAL_TOLERANCE,
};
pub use probes::{norm_equivalence_ratio, unboundedness_table, UnboundednessRow};
pub use shadow::{orbit_shadow, ShadowCertificate};

/// Ceiling on the degree of any constructed polynomial.
pub const MAX_CONSTRUCTION_DEGREE: usize = 1 << 12;
