//! Transforms between Chebyshev coefficients and values on the Chebyshev
//! extreme points `t_j = cos(pi j / (N - 1))`, `j = 0..N`.

use rustfft::FftPlanner;

use super::C64;

/// `w_k = v_0 + (-1)^k v_{N-1} + 2 sum_{j=1}^{N-2} v_j cos(pi j k / (N-1))`,
/// computed through an FFT of the even extension.
fn dct1(v: &[C64]) -> Vec<C64> {
    let n = v.len();
    match n {
        0 => return Vec::new(),
        1 => return vec![v[0]],
        _ => {}
    }
    let m = 2 * (n - 1);
    let mut buf: Vec<C64> = Vec::with_capacity(m);
    buf.extend_from_slice(v);
    buf.extend(v[1..n - 1].iter().rev());
    let fft = FftPlanner::<f64>::new().plan_fft_forward(m);
    fft.process(&mut buf);
    buf.truncate(n);
    buf
}

/// Chebyshev points of the second kind, ordered from `t = 1` down to `t = -1`.
pub(crate) fn cheb_points(n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.0];
    }
    let last = (n - 1) as f64;
    (0..n)
        .map(|j| {
            // sin form is symmetric and exact at the ends
            let theta = std::f64::consts::PI * (last - 2.0 * j as f64) / (2.0 * last);
            theta.sin()
        })
        .collect()
}

/// Interpolating coefficients from values at `cheb_points(values.len())`.
pub(crate) fn values_to_coeffs(values: &[C64]) -> Vec<C64> {
    let n = values.len();
    if n <= 1 {
        return values.to_vec();
    }
    let scale = 1.0 / (n - 1) as f64;
    let mut c = dct1(values);
    for ck in c.iter_mut() {
        *ck *= scale;
    }
    c[0] *= 0.5;
    c[n - 1] *= 0.5;
    c
}

/// Values at `cheb_points(n)` of the series `coeffs` (zero padded or
/// rejected if longer than `n`).
pub(crate) fn coeffs_to_values(coeffs: &[C64], n: usize) -> Vec<C64> {
    assert!(coeffs.len() <= n, "grid smaller than series length");
    if n == 1 {
        return vec![coeffs.first().copied().unwrap_or_default()];
    }
    let mut u = vec![C64::new(0.0, 0.0); n];
    u[..coeffs.len()].copy_from_slice(coeffs);
    u[0] *= 2.0;
    u[n - 1] *= 2.0;
    let mut w = dct1(&u);
    for wj in w.iter_mut() {
        *wj *= 0.5;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clenshaw_direct(c: &[C64], t: f64) -> C64 {
        c.iter()
            .enumerate()
            .map(|(k, ck)| ck * (k as f64 * t.acos()).cos())
            .sum()
    }

    #[test]
    fn values_round_trip_through_coeffs() {
        let c: Vec<C64> = (0..9)
            .map(|k| C64::new(1.0 / (k as f64 + 1.0), (k as f64).sin()))
            .collect();
        let vals = coeffs_to_values(&c, 17);
        let pts = cheb_points(17);
        for (v, t) in vals.iter().zip(&pts) {
            assert!((v - clenshaw_direct(&c, *t)).norm() < 1e-14);
        }
        let back = values_to_coeffs(&vals);
        for k in 0..17 {
            let expect = c.get(k).copied().unwrap_or_default();
            assert!((back[k] - expect).norm() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn points_hit_the_ends() {
        let p = cheb_points(5);
        assert_eq!(p[0], 1.0);
        assert_eq!(p[4], -1.0);
        assert_eq!(p[2], 0.0);
    }
}
