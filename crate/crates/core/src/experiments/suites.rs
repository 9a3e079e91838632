use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use super::config::{poly_from, SuiteConfig};
use super::report::Row;
use crate::chaos::{
    check_chaos_criterion, growth_sequence, norm_equivalence_ratio, orbit_shadow, periodic_point,
    periodic_point_near, unboundedness_table, GrowthReport, OperatorTag,
};
use crate::error::Result;
use crate::funcspace::{ChebFun, Interval, NormMode, C64};
use crate::operators::{eigen_residual, eigenfunction_basis, eigenspace_rank};

pub const EIGEN_RESIDUAL_TOLERANCE: f64 = 1e-8;
pub const RATIO_TOLERANCE: f64 = 1e-12;
const DEFAULT_TRUNCATION: usize = 25;

/// `count` polynomials of degree uniform in `0..=max_degree` with coefficients
/// uniform in `[-1, 1]` in the basis `((x - a)/(b - a))^j`.
pub fn random_polynomials(
    interval: Interval,
    count: usize,
    max_degree: usize,
    seed: u64,
) -> Vec<ChebFun> {
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let degree = rng.gen_range(0..=max_degree);
            let coeffs: Vec<f64> = (0..=degree).map(|_| rng.gen_range(-1.0..=1.0)).collect();
            ChebFun::from_real_monomials(interval, &coeffs).expect("non-empty coefficients")
        })
        .collect()
}

pub(crate) struct Output {
    pub rows: Vec<Row>,
    pub growth: Vec<GrowthReport>,
}

impl Output {
    fn rows(rows: Vec<Row>) -> Self {
        Output { rows, growth: Vec::new() }
    }
}

fn fmt_lambda(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

fn sample_polys(cfg: &SuiteConfig, interval: Interval, default_count: usize) -> Result<Vec<ChebFun>> {
    match &cfg.poly {
        Some(p) => Ok(vec![poly_from(interval, p)?]),
        None => Ok(random_polynomials(
            interval,
            cfg.samples.unwrap_or(default_count),
            cfg.max_degree,
            cfg.seed,
        )),
    }
}

pub(crate) fn norm_table(cfg: &SuiteConfig) -> Result<Output> {
    let mode = cfg.norm_mode()?;
    let rel = match mode {
        NormMode::Sup => 1e-10,
        NormMode::Lp { .. } => 1e-6,
    };
    let table = unboundedness_table(cfg.interval()?, cfg.n, cfg.k_max, mode)?;
    Ok(Output::rows(
        table
            .iter()
            .map(|r| Row::expect(format!("k={}", r.k), r.measured, r.expected, rel * r.expected))
            .collect(),
    ))
}

pub(crate) fn eigen(cfg: &SuiteConfig) -> Result<Output> {
    let interval = cfg.interval()?;
    let mut rows = Vec::new();
    for lambda in cfg.lambda_values() {
        let label = fmt_lambda(lambda);
        let basis = eigenfunction_basis(interval, lambda, cfg.n)?;
        let worst = basis
            .iter()
            .map(|f| eigen_residual(f, lambda, cfg.n))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        rows.push(Row::at_most(
            format!("lambda={label} residual"),
            worst,
            EIGEN_RESIDUAL_TOLERANCE,
            0.0,
        ));
        let rank = eigenspace_rank(&basis)?;
        rows.push(Row::expect(format!("lambda={label} rank"), rank as f64, cfg.n as f64, 0.0));
    }
    Ok(Output::rows(rows))
}

pub(crate) fn growth(cfg: &SuiteConfig) -> Result<Output> {
    let f = cfg.poly_or(&[1.0])?;
    let op = match cfg.operator.as_str() {
        "d" => OperatorTag::DerivativePower(cfg.n),
        _ => OperatorTag::VolterraPower(cfg.n),
    };
    let report = growth_sequence(op, &f, cfg.n_max, cfg.norm_mode()?)?;
    let mut rows = vec![Row::at_most("limsup_estimate", report.limsup_estimate, 1.0, 0.0)];
    if let OperatorTag::DerivativePower(n) = op {
        let expected = f.len().div_ceil(n);
        if expected <= cfg.n_max {
            let measured = report.zero_from.map_or(f64::NAN, |z| z as f64);
            rows.push(Row::expect("zero_from", measured, expected as f64, 0.0));
        }
    }
    rows.push(Row::info("alpha_hat", report.alpha_hat));
    if let Some(c) = report.c_hat {
        rows.push(Row::info("c_hat", c));
    }
    Ok(Output { rows, growth: vec![report] })
}

pub(crate) fn criterion(cfg: &SuiteConfig) -> Result<Output> {
    let interval = cfg.interval()?;
    let mode = cfg.norm_mode()?;
    let mut rows = Vec::new();
    for (i, f) in sample_polys(cfg, interval, 100)?.iter().enumerate() {
        let c = check_chaos_criterion(f, cfg.n, cfg.n_max, mode)?;
        rows.push(Row::at_most(
            format!("f{i} right_inverse_residual"),
            c.right_inverse_residual,
            c.tolerance,
            0.0,
        ));
        rows.push(Row::at_most(format!("f{i} limsup_a"), c.growth_a.limsup_estimate, 1.0, 0.0));
        rows.push(Row::at_most(format!("f{i} limsup_b"), c.growth_b.limsup_estimate, 1.0, 0.0));
    }
    Ok(Output::rows(rows))
}

pub(crate) fn periodic(cfg: &SuiteConfig) -> Result<Output> {
    let y = cfg.poly_or(&[1.0])?;
    let mode = cfg.norm_mode()?;
    let cert = match cfg.period {
        Some(period) => periodic_point(
            &y,
            period,
            cfg.n,
            cfg.truncation.unwrap_or(DEFAULT_TRUNCATION),
            mode,
        )?,
        None => periodic_point_near(&y, cfg.epsilon, cfg.n, mode)?,
    };
    let mut rows = vec![
        Row::info("N", cert.period as f64),
        Row::info("truncation", cert.truncation as f64),
        Row::at_most("invariance_residual", cert.invariance_residual, cert.tolerance, 0.0),
    ];
    if cfg.period.is_none() {
        rows.push(Row::at_most("nearness_bound", cert.nearness_bound, cfg.epsilon, 0.0));
    } else {
        rows.push(Row::info("nearness_bound", cert.nearness_bound));
    }
    rows.push(Row::at_most("nearness_actual", cert.nearness_actual, cert.nearness_bound, 1e-12));
    Ok(Output::rows(rows))
}

pub(crate) fn shadow(cfg: &SuiteConfig) -> Result<Output> {
    let interval = cfg.interval()?;
    let default = vec![vec![1.0], vec![0.0, 1.0]];
    let targets = cfg
        .targets
        .as_ref()
        .unwrap_or(&default)
        .iter()
        .map(|t| poly_from(interval, t))
        .collect::<Result<Vec<_>>>()?;
    let cert = orbit_shadow(&targets, cfg.epsilon, cfg.n, cfg.norm_mode()?)?;
    let mut rows = Vec::new();
    for (j, (&e, &err)) in cert.exponents.iter().zip(&cert.visit_errors).enumerate() {
        rows.push(Row::info(format!("exponent {j}"), e as f64));
        rows.push(Row::at_most(format!("visit {j}"), err, cfg.epsilon, 0.0));
    }
    Ok(Output::rows(rows))
}

pub(crate) fn norm_equivalence(cfg: &SuiteConfig) -> Result<Output> {
    let interval = cfg.interval()?;
    let mut rows = Vec::new();
    for (i, f) in sample_polys(cfg, interval, 20)?.iter().enumerate() {
        let ratio = norm_equivalence_ratio(f, cfg.n)?;
        rows.push(Row::info(format!("f{i} ratio"), ratio));
        rows.push(Row::at_most(format!("f{i} deficit"), 1.0 - ratio, RATIO_TOLERANCE, 0.0));
    }
    Ok(Output::rows(rows))
}
