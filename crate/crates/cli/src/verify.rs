//! Self-verification suites: aliasing identities, duality attainment,
//! and cross-formula agreement, all through the production evaluators.

use crate::output::{write_out, JsonMap};
use crate::CliError;
use fourlag::{
    aliased_coeffs, build_dual_kernel, fourier_lagrange_coeffs, gamma_fn, monte_carlo_sup, nodes,
    pointwise_error_general, pointwise_error_interp, poisson_pointwise, poisson_uniform,
    preset_row, sobolev_pointwise, sobolev_uniform, uniform_error_convex, verify_attainment,
    BetaSequence, MultiplierSet, Preset, PsiSequence, TrigPolynomial,
};
use std::f64::consts::PI;

struct Check {
    name: String,
    pass: bool,
    numbers: Vec<(&'static str, f64)>,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool) -> Self {
        Self {
            name: name.into(),
            pass,
            numbers: Vec::new(),
        }
    }

    fn with(mut self, key: &'static str, value: f64) -> Self {
        self.numbers.push((key, value));
        self
    }
}

/// Small deterministic xorshift for reproducible suite inputs.
struct Rng(u64);

impl Rng {
    fn new(seed: u64) -> Self {
        Self(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1)
    }
    fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
    fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }
    fn int(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.next_u64() % (hi - lo + 1)
    }
}

pub fn cmd_verify(suite: &str, seed: u64, out: Option<&str>) -> Result<(), CliError> {
    let mut checks = Vec::new();
    match suite {
        "aliasing" => aliasing_suite(seed, &mut checks)?,
        "duality" => duality_suite(seed, &mut checks)?,
        "crossform" => crossform_suite(seed, &mut checks)?,
        _ => {
            aliasing_suite(seed, &mut checks)?;
            duality_suite(seed, &mut checks)?;
            crossform_suite(seed, &mut checks)?;
        }
    }
    let all_pass = checks.iter().all(|c| c.pass);

    let mut body = String::new();
    for (i, check) in checks.iter().enumerate() {
        if i > 0 {
            body.push(',');
        }
        let mut map = JsonMap::new();
        map.push_str("name", &check.name);
        map.push_bool("pass", check.pass);
        for (key, value) in &check.numbers {
            map.push_f64(key, *value);
        }
        body.push_str(&map.finish());
    }
    let mut report = JsonMap::new();
    report.push_str("command", "verify");
    report.push_str("suite", suite);
    report.push_int("seed", seed as i64);
    report.push_raw("checks", &format!("[{body}]"));
    report.push_bool("pass", all_pass);
    write_out(out, &(report.finish() + "\n")).map_err(CliError::Usage)?;

    if all_pass {
        Ok(())
    } else {
        Err(CliError::Computation(format!(
            "verification suite {suite} failed"
        )))
    }
}

fn random_poly(rng: &mut Rng, degree: usize) -> TrigPolynomial {
    let mut p = TrigPolynomial::zero(degree);
    for k in 0..degree {
        p.cos_coeffs[k] = rng.range(-1.0, 1.0);
        p.sin_coeffs[k] = rng.range(-1.0, 1.0);
    }
    p
}

/// Folded-coefficient identities against direct sampling for random
/// band-limited functions.
fn aliasing_suite(seed: u64, checks: &mut Vec<Check>) -> Result<(), CliError> {
    let mut rng = Rng::new(seed ^ 0xa11a_5ed5);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.int(1, 6) as u32;
        let degree = rng.int(1, 10 * (2 * n as u64 + 1)) as usize;
        let p = random_poly(&mut rng, degree);
        let samples: Vec<f64> = nodes(n)?.iter().map(|&x| p.eval(x)).collect();
        let sampled = fourier_lagrange_coeffs(&samples, n)?;
        let folded = aliased_coeffs(&p, n, 1e-14)?;
        for k in 0..=n as usize {
            worst = worst.max((sampled.a[k] - folded.a[k]).abs());
            if k >= 1 {
                worst = worst.max((sampled.b[k - 1] - folded.b[k - 1]).abs());
            }
        }
    }
    checks.push(
        Check::new("aliasing: sampled vs folded coefficients", worst <= 1e-11)
            .with("max_deviation", worst),
    );

    // Band-limited reproduction: degree ≤ n functions interpolate exactly.
    let mut worst_repro: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.int(1, 8) as u32;
        let p = random_poly(&mut rng, n as usize);
        let samples: Vec<f64> = nodes(n)?.iter().map(|&x| p.eval(x)).collect();
        let coeffs = fourier_lagrange_coeffs(&samples, n)?;
        let x = rng.range(0.0, 2.0 * PI);
        worst_repro = worst_repro.max((fourlag::eval_interpolant(&coeffs, x) - p.eval(x)).abs());
    }
    checks.push(
        Check::new("aliasing: band-limited reproduction", worst_repro <= 1e-12)
            .with("max_deviation", worst_repro),
    );
    Ok(())
}

fn random_psi(rng: &mut Rng) -> PsiSequence {
    match rng.int(0, 3) {
        0 => PsiSequence::geometric(rng.range(0.2, 0.8)).unwrap(),
        1 => PsiSequence::geometric(rng.range(0.8, 0.95)).unwrap(),
        2 => PsiSequence::power(1.0 + rng.range(0.0, 1.0)).unwrap(),
        _ => PsiSequence::power(2.0).unwrap(),
    }
}

fn random_beta(rng: &mut Rng) -> BetaSequence {
    match rng.int(0, 2) {
        0 => BetaSequence::zero(),
        1 => BetaSequence::constant(rng.range(-2.0, 2.0)),
        _ => {
            let phase = rng.range(0.0, 1.0);
            BetaSequence::from_fn(move |k| phase * (k % 7) as f64)
        }
    }
}

/// Grows the kernel until its dropped-mass bound is ≤ 2e−3 of the kept
/// mass, which keeps the attainment gap near 1e−3 of the value.
fn adaptive_blocks(
    psi: &PsiSequence,
    beta: &BetaSequence,
    mults: &MultiplierSet,
    x: f64,
) -> Result<u64, CliError> {
    let mut blocks = 16u64;
    loop {
        let kernel = build_dual_kernel(psi, beta, mults, x, blocks)?;
        let mass = kernel.mass();
        if mass == 0.0 || kernel.tail_bound <= 2e-3 * mass || blocks >= 1 << 16 {
            return Ok(blocks);
        }
        blocks *= 2;
    }
}

/// Extremal-function attainment plus Monte-Carlo soundness.
fn duality_suite(seed: u64, checks: &mut Vec<Check>) -> Result<(), CliError> {
    let mut rng = Rng::new(seed ^ 0xd0a1_17f1);
    for i in 0..10 {
        let psi = random_psi(&mut rng);
        let beta = random_beta(&mut rng);
        let n = rng.int(1, 8) as u32;
        let preset = if rng.int(0, 1) == 0 {
            Preset::Interp
        } else {
            Preset::Zero
        };
        let mults = preset_row(preset, n)?;
        let x = rng.range(0.1, 2.0 * PI - 0.1);
        let blocks = adaptive_blocks(&psi, &beta, &mults, x)?;
        // 1e-6 keeps the slack three orders below typical values while
        // staying certifiable for k^{-r} tails within the term budget.
        let report = verify_attainment(&psi, &beta, &mults, x, blocks, 1e-6)?;
        let mc = monte_carlo_sup(&psi, &beta, &mults, x, 24, n + 6, seed ^ i)?;
        let sound = mc <= report.theoretical + report.delta + 1e-10;
        let attained =
            report.pass && report.achieved + report.delta >= (1.0 - 1e-6) * report.theoretical;
        checks.push(
            Check::new(format!("duality: attainment #{i}"), attained && sound)
                .with("theoretical", report.theoretical)
                .with("achieved", report.achieved)
                .with("mc_max", mc)
                .with("delta", report.delta),
        );
    }

    // The theoretical value takes no phase input; attainment must succeed
    // for any phase sequence against that bitwise-identical value.
    let psi = PsiSequence::geometric(0.55).unwrap();
    let mults = preset_row(Preset::Interp, 2)?;
    let x = 1.1;
    let reference = pointwise_error_general(&psi, &mults, x, 1e-9)?;
    let mut beta_ok = true;
    let mut worst_gap: f64 = 0.0;
    for _ in 0..5 {
        let beta = random_beta(&mut rng);
        let report = verify_attainment(&psi, &beta, &mults, x, 64, 1e-9)?;
        beta_ok &= report.pass && report.theoretical.to_bits() == reference.value.to_bits();
        worst_gap = worst_gap.max((report.achieved - reference.value).abs());
    }
    checks.push(
        Check::new("duality: phase invariance of the value", beta_ok)
            .with("theoretical", reference.value)
            .with("max_achieved_gap", worst_gap),
    );
    Ok(())
}

/// Series ↔ closed-form ↔ integral agreement, plus the Gamma anchors.
fn crossform_suite(seed: u64, checks: &mut Vec<Check>) -> Result<(), CliError> {
    let mut rng = Rng::new(seed ^ 0xc105_5f03);

    // Geometric: block series vs closed form, pointwise and uniform.
    let mut worst_rel: f64 = 0.0;
    for &q in &[0.3, 0.5, 0.9] {
        let psi = PsiSequence::geometric(q).unwrap();
        for _ in 0..10 {
            let n = rng.int(1, 10) as u32;
            let x = rng.range(0.0, 2.0 * PI);
            let series = pointwise_error_interp(&psi, n, x, 1e-13)?;
            let closed = poisson_pointwise(q, n, x)?;
            let gap = (series.value - closed).abs() - series.truncation_bound;
            if closed > 1e-12 {
                worst_rel = worst_rel.max(gap / closed);
            }
        }
    }
    checks.push(
        Check::new(
            "crossform: geometric series vs closed form (pointwise)",
            worst_rel <= 1e-10,
        )
        .with("max_rel_gap", worst_rel),
    );

    let mut worst_unif: f64 = 0.0;
    for (q, n) in [(0.3, 2u32), (0.5, 1), (0.9, 6)] {
        let psi = PsiSequence::geometric(q).unwrap();
        let series = uniform_error_convex(&psi, n, 1e-13)?;
        let closed = poisson_uniform(q, n)?;
        worst_unif =
            worst_unif.max(((series.value - closed).abs() - series.truncation_bound) / closed);
    }
    checks.push(
        Check::new(
            "crossform: geometric series vs closed form (uniform)",
            worst_unif <= 1e-10,
        )
        .with("max_rel_gap", worst_unif),
    );

    // Power: block series vs singular integral, with the series truncation
    // accounted (slow tails cannot reach 1e−7 on their own for r = 1).
    let mut power_ok = true;
    let mut worst_power: f64 = 0.0;
    for (r, n, tol) in [
        (1.0, 1u32, 1e-6),
        (1.0, 3, 1e-6),
        (2.0, 1, 1e-9),
        (2.0, 5, 1e-9),
    ] {
        let psi = PsiSequence::power(r).unwrap();
        for _ in 0..5 {
            let x = rng.range(0.1, 2.0 * PI - 0.1);
            let series = pointwise_error_interp(&psi, n, x, tol)?;
            let quadrature = sobolev_pointwise(r, n, x, 1e-10)?;
            let gap = (series.value - quadrature.value).abs()
                - series.truncation_bound
                - quadrature.truncation_bound;
            let rel = gap.max(0.0) / quadrature.value.max(1e-12);
            worst_power = worst_power.max(rel);
            power_ok &= rel <= 1e-7;
        }
        let s_unif = uniform_error_convex(&psi, n, tol)?;
        let q_unif = sobolev_uniform(r, n, 1e-10)?;
        let rel = ((s_unif.value - q_unif.value).abs()
            - s_unif.truncation_bound
            - q_unif.truncation_bound)
            .max(0.0)
            / q_unif.value;
        worst_power = worst_power.max(rel);
        power_ok &= rel <= 1e-7;
    }
    checks.push(
        Check::new("crossform: power series vs singular integral", power_ok)
            .with("max_rel_gap", worst_power),
    );

    // General method formula reduces to the interpolation series.
    let mut worst_reduce: f64 = 0.0;
    for &q in &[0.4, 0.85] {
        let psi = PsiSequence::geometric(q).unwrap();
        let n = rng.int(1, 6) as u32;
        let mults = preset_row(Preset::Interp, n)?;
        for _ in 0..10 {
            let x = rng.range(0.0, 2.0 * PI);
            let a = pointwise_error_general(&psi, &mults, x, 1e-13)?;
            let b = pointwise_error_interp(&psi, n, x, 1e-13)?;
            worst_reduce = worst_reduce.max(
                ((a.value - b.value).abs() - a.truncation_bound - b.truncation_bound).max(0.0),
            );
        }
    }
    checks.push(
        Check::new(
            "crossform: general formula reduces to interpolation series",
            worst_reduce <= 1e-12,
        )
        .with("max_gap", worst_reduce),
    );

    // Gamma anchors used by the singular integrals.
    let g15 = gamma_fn(1.5)?;
    let g2 = gamma_fn(2.0)?;
    let g4 = gamma_fn(4.0)?;
    let gamma_ok = (g2 - 1.0).abs() <= 1e-13
        && (g4 - 6.0).abs() <= 6.0 * 1e-13
        && (g15 - PI.sqrt() / 2.0).abs() <= 1e-13;
    checks.push(
        Check::new("crossform: gamma identities", gamma_ok)
            .with("gamma_1_5", g15)
            .with("gamma_2", g2)
            .with("gamma_4", g4),
    );
    Ok(())
}
