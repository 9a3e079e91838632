//! Acceptance checks. Prints one PASS/FAIL line per check, with the failing
//! sub-cases indented beneath, and exits non-zero if any check fails.

use std::process::ExitCode;
use std::time::Instant;

use derivchaos::chaos::{
    check_chaos_criterion, growth_sequence, norm_equivalence_ratio, orbit_shadow, periodic_point,
    periodic_point_near, OperatorTag,
};
use derivchaos::experiments::{full_suite, random_polynomials, run_suites, serialize_reports, Format};
use derivchaos::operators::{
    derivative_power, differentiate, eigen_residual, eigenfunction_basis, eigenspace_rank,
    monomial_lp, monomial_sup, volterra, volterra_power,
};
use derivchaos::{ChebFun, Interval, LpIndex, NormMode, C64};

fn intervals() -> [Interval; 2] {
    [Interval::unit(), Interval::new(-2.0, 3.0).unwrap()]
}

fn label(i: &Interval) -> String {
    format!("[{}, {}]", i.a(), i.b())
}

fn falling_factorial(k: usize, n: usize) -> f64 {
    ((k - n + 1)..=k).map(|j| j as f64).product()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|j| j as f64).product()
}

/// Outcome of one check: a summary plus any failing sub-cases.
struct Outcome {
    summary: String,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { summary: String::new(), failures: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn sup_norm_identity() -> Outcome {
    let mut out = Outcome::new();
    let mut worst: f64 = 0.0;
    for i in intervals() {
        for n in 1..=5 {
            for k in n..=30 {
                let measured = derivative_power(&monomial_sup(i, k), n).sup_norm();
                let scale = i.width().powi(-(n as i32));
                let expected = falling_factorial(k, n) * scale;
                let rel = (measured - expected).abs() / expected;
                worst = worst.max(rel);
                out.require(rel <= 1e-10, || {
                    format!("{} n={n} k={k}: relative error {rel:.3e}", label(&i))
                });
                out.require(measured >= k as f64 * scale * (1.0 - 1e-10), || {
                    format!("{} n={n} k={k}: {measured} below k (b-a)^-n", label(&i))
                });
            }
        }
    }
    out.summary = format!("max relative error {worst:.2e} (tolerance 1e-10)");
    out
}

fn lp_identities() -> Outcome {
    let mut out = Outcome::new();
    let (mut worst_unit, mut worst_rel): (f64, f64) = (0.0, 0.0);
    for i in intervals() {
        for pv in [1.0, 2.0, 3.5] {
            let p = LpIndex::new(pv).unwrap();
            for k in 0..=20 {
                let e = monomial_lp(i, k, p);
                let unit = (e.lp_norm(p) - 1.0).abs();
                worst_unit = worst_unit.max(unit);
                out.require(unit <= 1e-8, || {
                    format!("{} p={pv} k={k}: ||e_k|| off by {unit:.3e}", label(&i))
                });
                for n in 1..=4.min(k) {
                    let measured = derivative_power(&e, n).lp_norm(p);
                    let shape = ((k as f64 * pv + 1.0) / ((k - n) as f64 * pv + 1.0)).powf(1.0 / pv);
                    let expected = shape * falling_factorial(k, n) * i.width().powi(-(n as i32));
                    let rel = (measured - expected).abs() / expected;
                    worst_rel = worst_rel.max(rel);
                    out.require(rel <= 1e-6, || {
                        format!("{} p={pv} n={n} k={k}: relative error {rel:.3e}", label(&i))
                    });
                }
            }
        }
    }
    out.summary = format!(
        "max | ||e_k|| - 1 | {worst_unit:.2e} (1e-8), max relative error {worst_rel:.2e} (1e-6)"
    );
    out
}

fn point_spectrum() -> Outcome {
    let mut out = Outcome::new();
    let mut worst: f64 = 0.0;
    let lambdas = [
        C64::new(0.0, 0.0),
        C64::new(1.0, 0.0),
        C64::new(-1.0, 0.0),
        C64::new(0.0, 2.0),
        C64::new(3.0, 4.0),
    ];
    for i in intervals() {
        for lambda in lambdas {
            for n in 1..=4 {
                let basis = match eigenfunction_basis(i, lambda, n) {
                    Ok(b) => b,
                    Err(e) => {
                        out.failures.push(format!("{} lambda={lambda} n={n}: {e}", label(&i)));
                        continue;
                    }
                };
                for f in &basis {
                    let r = eigen_residual(f, lambda, n).unwrap();
                    worst = worst.max(r);
                    out.require(r <= 1e-8, || {
                        format!("{} lambda={lambda} n={n}: residual {r:.3e}", label(&i))
                    });
                }
                let rank = eigenspace_rank(&basis).unwrap();
                out.require(rank == n, || {
                    format!("{} lambda={lambda} n={n}: rank {rank}", label(&i))
                });
            }
        }
    }
    out.summary = format!("max relative residual {worst:.2e} (1e-8), every rank equals n");
    out
}

fn right_inverse_and_criterion() -> Outcome {
    let mut out = Outcome::new();
    let mut worst_resid: f64 = 0.0;
    let mut worst_limsup: f64 = 0.0;
    for i in intervals() {
        let polys = random_polynomials(i, 100, 15, 20_240_601);
        for n in 1..=3 {
            let mut case_limsup: f64 = 0.0;
            let mut case_fail = 0;
            for f in &polys {
                let resid = derivative_power(&volterra_power(f, n), n).sub(f).unwrap().sup_norm();
                worst_resid = worst_resid.max(resid);
                let c = check_chaos_criterion(f, n, 25, NormMode::Sup).unwrap();
                case_limsup = case_limsup.max(c.growth_b.limsup_estimate);
                let ok = resid <= 1e-12
                    && c.pass
                    && c.growth_b.limsup_estimate <= 0.5
                    && c.growth_a.zero_from.is_some();
                if !ok {
                    case_fail += 1;
                }
            }
            worst_limsup = worst_limsup.max(case_limsup);
            out.require(case_fail == 0, || {
                format!(
                    "{} n={n}: {case_fail}/100 polynomials fail; largest V-growth limsup {case_limsup:.4}",
                    label(&i)
                )
            });
        }
    }
    out.summary = format!(
        "max residual {worst_resid:.2e} (1e-12), max V-growth limsup {worst_limsup:.4} (0.5)"
    );
    out
}

fn quasinilpotent_decay() -> Outcome {
    let mut out = Outcome::new();
    let one = ChebFun::constant(Interval::unit(), C64::new(1.0, 0.0));
    let r = growth_sequence(OperatorTag::VolterraPower(1), &one, 20, NormMode::Sup).unwrap();
    let want = (1.0 / factorial(10)).powf(0.1);
    let err = (r.value(10) - want).abs();
    out.require(err <= 1e-10, || format!("value 10 = {} vs {want}", r.value(10)));
    out.require(r.value(20) <= 0.14, || format!("value 20 = {}", r.value(20)));
    out.summary = format!("value 10 error {err:.2e} (1e-10), value 20 = {:.4} (0.14)", r.value(20));
    out
}

fn periodic_construction() -> Outcome {
    let mut out = Outcome::new();
    let i = Interval::unit();
    let one = ChebFun::from_real_power_coeffs(i, &[1.0]).unwrap();
    let near = periodic_point_near(&one, 1e-3, 1, NormMode::Sup).unwrap();
    let tail: f64 = (1..=20).map(|k| 1.0 / factorial(7 * k)).take_while(|t| *t > 0.0).sum();
    let near_err = (near.nearness_bound - tail).abs();
    out.require(near.period == 7, || format!("period {}", near.period));
    out.require(near_err <= 1e-8, || format!("nearness bound {} vs {tail}", near.nearness_bound));
    out.require(near.invariance_residual <= 1e-10, || {
        format!("invariance residual {:.3e}", near.invariance_residual)
    });

    let exp = periodic_point(&one, 1, 1, 25, NormMode::Sup).unwrap();
    let oracle = ChebFun::from_real_samples(i, f64::exp, 1e-14).unwrap();
    let exp_err = exp.point.sub(&oracle).unwrap().sup_norm();
    out.require(exp_err <= 1e-12, || format!("period-1 point differs from e^x by {exp_err:.3e}"));
    out.summary = format!(
        "N = {}, nearness {:.10e} (error {near_err:.1e}), residual {:.1e}, |g - e^x| {exp_err:.1e}",
        near.period, near.nearness_bound, near.invariance_residual
    );
    out
}

fn orbit_shadowing() -> Outcome {
    let mut out = Outcome::new();
    let mut worst: f64 = 0.0;
    for i in intervals() {
        let targets: Vec<_> = (0..3)
            .map(|k| {
                let mut c = vec![0.0; k + 1];
                c[k] = 1.0;
                ChebFun::from_real_power_coeffs(i, &c).unwrap()
            })
            .collect();
        match orbit_shadow(&targets, 1e-6, 1, NormMode::Sup) {
            Ok(c) => {
                for (j, &e) in c.visit_errors.iter().enumerate() {
                    worst = worst.max(e);
                    out.require(e <= 1e-6, || format!("{} visit {j}: {e:.3e}", label(&i)));
                }
                let last = *c.visit_errors.last().unwrap();
                out.require(last <= 1e-13, || format!("{} last visit {last:.3e}", label(&i)));
            }
            Err(e) => out.failures.push(format!("{}: {e}", label(&i))),
        }
    }
    let i = Interval::unit();
    let pair = [monomial_sup(i, 0), monomial_sup(i, 1)];
    let c = orbit_shadow(&pair, 1e-6, 1, NormMode::Sup).unwrap();
    let want = 1.0 / factorial(13);
    let first = c.visit_errors[0];
    out.require((first - want).abs() <= 1e-15, || {
        format!(
            "{{1, x}} on [0, 1]: first visit error {first:.6e} (exponents {:?}) vs 1!/13! = {want:.6e}",
            c.exponents
        )
    });
    out.summary = format!("max visit error {worst:.2e} (1e-6); {{1, x}} first error {first:.4e}");
    out
}

fn determinism() -> Outcome {
    let mut out = Outcome::new();
    let mut bytes = 0;
    for i in intervals() {
        let configs = full_suite(i.a(), i.b(), 7);
        let render = || {
            let reports: Vec<_> = run_suites(&configs).into_iter().map(Result::unwrap).collect();
            serialize_reports(&reports, Format::Json)
        };
        let (a, b) = (render(), render());
        bytes += a.len();
        out.require(a == b, || format!("{}: reports differ", label(&i)));
    }
    out.summary = format!("two runs byte-identical ({bytes} bytes)");
    out
}

fn fundamental_theorem_defect() -> Outcome {
    let mut out = Outcome::new();
    let mut worst: f64 = 0.0;
    for i in intervals() {
        for (k, f) in random_polynomials(i, 50, 30, 1_234_567).iter().enumerate() {
            let fa = f.evaluate(i.a()).unwrap();
            let want = f.sub(&ChebFun::constant(i, fa)).unwrap();
            let d = volterra(&differentiate(f)).max_coeff_diff(&want);
            worst = worst.max(d);
            out.require(d <= 1e-12, || format!("{} f{k}: coefficient error {d:.3e}", label(&i)));
        }
    }
    out.summary = format!("max coefficient error {worst:.2e} (1e-12)");
    out
}

fn norm_equivalence_probe() -> Outcome {
    let mut out = Outcome::new();
    let mut lowest = f64::INFINITY;
    let mut count = 0;
    for i in intervals() {
        let mut funcs = random_polynomials(i, 50, 15, 99);
        funcs.extend((0..=10).map(|k| monomial_sup(i, k)));
        for f in &funcs {
            for n in 1..=4 {
                let r = norm_equivalence_ratio(f, n).unwrap();
                lowest = lowest.min(r);
                count += 1;
                out.require(r >= 1.0 - 1e-12, || format!("{} n={n}: ratio {r}", label(&i)));
            }
        }
    }
    let x = monomial_sup(Interval::unit(), 1);
    let r = norm_equivalence_ratio(&x, 2).unwrap();
    out.require((r - 2.0).abs() <= 1e-12, || format!("x on [0, 1], n=2: ratio {r}"));
    out.summary = format!("{count} ratios, smallest {lowest:.15}; x with n=2 gives {r:.15}");
    out
}

fn main() -> ExitCode {
    type Check = (&'static str, fn() -> Outcome);
    let checks: [Check; 10] = [
        ("sup-norm identity", sup_norm_identity),
        ("L_p identities", lp_identities),
        ("point spectrum", point_spectrum),
        ("right inverse and chaos criterion", right_inverse_and_criterion),
        ("quasinilpotent decay", quasinilpotent_decay),
        ("periodic construction", periodic_construction),
        ("orbit shadowing", orbit_shadowing),
        ("determinism", determinism),
        ("fundamental theorem defect", fundamental_theorem_defect),
        ("norm-equivalence probe", norm_equivalence_probe),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, check)) in checks.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let verdict = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "{verdict} {:>2} {name}: {} [{:.1}s]",
            k + 1,
            outcome.summary,
            t.elapsed().as_secs_f64()
        );
        for f in &outcome.failures {
            println!("       {f}");
        }
        if !outcome.failures.is_empty() {
            failed += 1;
        }
    }
    println!(
        "{} of {} acceptance checks passed in {:.1}s",
        checks.len() - failed,
        checks.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
