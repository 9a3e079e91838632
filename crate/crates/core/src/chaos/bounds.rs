use crate::funcspace::{ChebFun, NormMode};
use crate::operators::ln_factorial;

/// Outward rounding applied to analytic bounds.
const BOUND_SLACK: f64 = 1e-9;

/// Certified upper bound on `||V^m y||` from the closed form
/// `V^m (x - a)^j = j! (x - a)^{j+m} / (j + m)!`:
///
/// `||V^m y||_sup <= (b - a)^m sum_j |c_j| j! / (j + m)!`
///
/// where `c_j` are the coefficients of `y` in the basis `((x-a)/(b-a))^j`.
/// `L_p` norms pick up the factor `(b - a)^(1/p)`.
pub fn volterra_tail_bound(y: &ChebFun, m: usize, mode: NormMode) -> f64 {
    let interval = y.interval();
    let log_width = interval.width().ln();
    let mut sum = 0.0;
    for (j, c) in y.to_monomials().iter().enumerate() {
        let mag = c.norm();
        if mag == 0.0 {
            continue;
        }
        let ratio = ln_factorial(j) - ln_factorial(j + m);
        sum += mag * (m as f64 * log_width + ratio).exp();
    }
    sum * (1.0 + BOUND_SLACK) * mode.sup_domination(interval)
}
