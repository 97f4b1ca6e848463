//! Reference oracles for the test suites.
//!
//! Everything here is computed from first principles — direct summation
//! with Euler–Maclaurin tail corrections, composite Simpson quadrature,
//! closed geometric sums — and deliberately shares no code with the
//! library under test. Each estimate comes with a rigorous error
//! envelope so assertions can account for what the oracle itself cannot
//! resolve.

use std::f64::consts::PI;

/// An oracle estimate with a rigorous bound on its own error.
#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: f64,
    pub error_bound: f64,
}

/// Tail Σ_{i≥0} (a + i)^{−s} − leading terms via Euler–Maclaurin:
/// Σ_{i≥0}(a+i)^{−s} ≈ a^{1−s}/(s−1) + a^{−s}/2 + s·a^{−s−1}/12
/// with remainder bounded by the next correction term (the summand is
/// completely monotone).
fn hurwitz_tail(s: f64, a: f64) -> Estimate {
    debug_assert!(s > 1.0 && a > 1.0);
    let value = a.powf(1.0 - s) / (s - 1.0) + 0.5 * a.powf(-s) + s * a.powf(-s - 1.0) / 12.0;
    let next_term = s * (s + 1.0) * (s + 2.0) * a.powf(-s - 3.0) / 720.0;
    Estimate {
        value,
        error_bound: next_term,
    }
}

/// Σ_{k∈block m} k^{−2r} for the frequency block [m(2n+1)−n, m(2n+1)+n].
fn power_block(r: f64, n: u32, m: u64) -> f64 {
    let center = m * (2 * n as u64 + 1);
    let mut sum = 0.0;
    for k in center - n as u64..=center + n as u64 {
        sum += (k as f64).powf(-2.0 * r);
    }
    sum
}

/// Reference uniform error for ψ(k) = k^{−r}:
/// (2/√π)·(Σ_{l odd} Σ_{k∈block l} k^{−2r})^{1/2}.
///
/// Direct summation over the first `direct_blocks` odd blocks, then an
/// Euler–Maclaurin tail per residue class (step 2(2n+1)).
pub fn power_uniform_reference(r: f64, n: u32) -> Estimate {
    let direct_blocks: u64 = 4000;
    let period = 2 * n as u64 + 1;
    let mut series = 0.0;
    let mut l = 1u64;
    let mut counted = 0u64;
    while counted < direct_blocks {
        series += power_block(r, n, l);
        l += 2;
        counted += 1;
    }
    // Remaining odd blocks: k = 2(2n+1)·i + (l(2n+1) + j), i ≥ 0, per
    // residue j ∈ [−n, n].
    let step = 2.0 * period as f64;
    let mut tail = 0.0;
    let mut tail_err = 0.0;
    for j in -(n as i64)..=n as i64 {
        let start = (l * period) as f64 + j as f64;
        let t = hurwitz_tail(2.0 * r, start / step);
        tail += step.powf(-2.0 * r) * t.value;
        tail_err += step.powf(-2.0 * r) * t.error_bound;
    }
    let total = series + tail;
    let value = 2.0 / PI.sqrt() * total.sqrt();
    // d/dS of 2√(S/π) = 1/√(πS).
    let error_bound = tail_err / (PI * total).sqrt() + 1e-14 * value;
    Estimate { value, error_bound }
}

/// Reference pointwise interpolation error for ψ(k) = k^{−r} at x:
/// (2/√π)·(Σ_m sin²((2n+1)mx/2)·P_m)^{1/2}.
///
/// Splits sin² = 1/2 − cos/2; the smooth half gets an Euler–Maclaurin
/// tail, the oscillatory half an Abel (Dirichlet-kernel) bound
/// |Σ_{m>M} cos(my)·P_m| ≤ P_{M+1}/|sin(y/2)|, valid because P_m is
/// decreasing.
pub fn power_pointwise_reference(r: f64, n: u32, x: f64) -> Estimate {
    let period = 2 * n as u64 + 1;
    let y = period as f64 * x;
    let half_sin = (y / 2.0).sin().abs();
    if half_sin == 0.0 {
        return Estimate {
            value: 0.0,
            error_bound: 0.0,
        };
    }
    let direct_blocks: u64 = 300_000;
    let mut series = 0.0;
    for m in 1..=direct_blocks {
        let s = (m as f64 * y / 2.0).sin();
        series += s * s * power_block(r, n, m);
    }
    // Smooth tail: (1/2)·Σ_{m>M} P_m via Euler–Maclaurin per residue.
    let step = period as f64;
    let mut smooth = 0.0;
    let mut err = 0.0;
    for j in -(n as i64)..=n as i64 {
        let start = ((direct_blocks + 1) * period) as f64 + j as f64;
        let t = hurwitz_tail(2.0 * r, start / step);
        smooth += 0.5 * step.powf(-2.0 * r) * t.value;
        err += 0.5 * step.powf(-2.0 * r) * t.error_bound;
    }
    // Oscillatory tail: bounded, not corrected.
    err += 0.5 * power_block(r, n, direct_blocks + 1) / half_sin;

    let total = series + smooth;
    let value = 2.0 / PI.sqrt() * total.sqrt();
    let error_bound = if total > 0.0 {
        err / (PI * total).sqrt() + 1e-13 * value
    } else {
        2.0 / PI.sqrt() * err.sqrt()
    };
    Estimate { value, error_bound }
}

/// Reference pointwise interpolation error for ψ(k) = q^k at x, from the
/// closed geometric block sums: the block mass is
/// q^{2(m(2n+1)−n)}(1−q^{2(2n+1)})/(1−q²) and the remaining series over m
/// is summed directly with a geometric tail bound.
pub fn geometric_pointwise_reference(q: f64, n: u32, x: f64) -> Estimate {
    let period = 2 * n as u64 + 1;
    let y = period as f64 * x;
    let q2 = q * q;
    let block_ratio = q2.powi(period as i32);
    let first_block = q2.powi(period as i32 - n as i32) * (1.0 - block_ratio) / (1.0 - q2);
    let mut series = 0.0;
    let mut block = first_block;
    let mut m = 1u64;
    let err;
    loop {
        let s = (m as f64 * y / 2.0).sin();
        series += s * s * block;
        // Dropped mass ≤ Σ_{i>m} block_i = block·ratio/(1−ratio).
        let rem = block * block_ratio / (1.0 - block_ratio);
        if rem < 1e-40 || m > 2_000_000 {
            err = rem;
            break;
        }
        block *= block_ratio;
        m += 1;
    }
    let value = 2.0 / PI.sqrt() * series.sqrt();
    let error_bound = if series > 0.0 {
        err / (PI * series).sqrt() + 1e-14 * value
    } else {
        2.0 / PI.sqrt() * err.sqrt()
    };
    Estimate { value, error_bound }
}

/// Composite-Simpson integral of f over [a, b] with `panels` panels
/// (panels must be even).
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    assert!(panels >= 2 && panels.is_multiple_of(2));
    let h = (b - a) / panels as f64;
    let mut sum = f(a) + f(b);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// Brute-force convolution (1/π)∫_{−π}^{π} phi(x−t)·kernel(t) dt by
/// composite Simpson; the reference for the coefficient-space synthesis.
pub fn convolution_reference(
    phi: impl Fn(f64) -> f64,
    kernel: impl Fn(f64) -> f64,
    x: f64,
    panels: usize,
) -> f64 {
    simpson(|t| phi(x - t) * kernel(t), -PI, PI, panels) / PI
}

/// Deterministic xorshift-based generator for test inputs. Not the one
/// the library uses; the suites only need reproducible variety.
pub struct TestRng {
    state: u64,
}

impl TestRng {
    pub fn new(seed: u64) -> Self {
        Self {
            state: seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.state = x;
        x
    }

    /// Uniform in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform integer in [lo, hi].
    pub fn int_range(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.next_u64() % (hi - lo + 1)
    }

    /// Standard normal via Box–Muller.
    pub fn normal(&mut self) -> f64 {
        let u1 = (self.uniform() + f64::MIN_POSITIVE).min(1.0 - f64::EPSILON);
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_integrates_cosine() {
        let v = simpson(|t| t.cos() * t.cos(), -PI, PI, 2000);
        assert!((v - PI).abs() < 1e-12);
    }

    #[test]
    fn uniform_reference_matches_frozen_values() {
        // Frozen from 30-digit Hurwitz-zeta evaluations.
        for (r, n, expected) in [
            (1.0, 1u32, 0.799_971_286_400_073),
            (0.75, 1, 1.167_677_149_646_286_3),
            (2.0, 5, 0.049_304_035_750_277_97),
            (0.75, 20, 0.612_768_700_559_061_4),
        ] {
            let est = power_uniform_reference(r, n);
            assert!(
                (est.value - expected).abs() <= est.error_bound + 1e-11,
                "r={r} n={n}: {} vs {expected} (bound {})",
                est.value,
                est.error_bound
            );
            assert!(
                est.error_bound < 1e-8,
                "oracle too loose: {}",
                est.error_bound
            );
        }
    }

    #[test]
    fn pointwise_reference_matches_frozen_value() {
        // r = 1, n = 1, x = π/6, frozen from a 30-digit evaluation.
        let est = power_pointwise_reference(1.0, 1, PI / 6.0);
        let expected = 0.676_122_898_260_228_4;
        assert!(
            (est.value - expected).abs() <= est.error_bound + 1e-10,
            "{} vs {expected} (bound {})",
            est.value,
            est.error_bound
        );
    }

    #[test]
    fn geometric_reference_midpoint() {
        // Midpoint value equals the closed form 2q^{n+1}/√(π(1−q²)(1+q^{2(2n+1)})).
        let q: f64 = 0.5;
        let est = geometric_pointwise_reference(q, 1, PI / 3.0);
        let closed = 2.0 * q.powi(2) / (PI * (1.0 - q * q) * (1.0 + q.powi(6))).sqrt();
        assert!((est.value - closed).abs() <= est.error_bound + 1e-13);
    }

    #[test]
    fn rng_reproducible() {
        let mut a = TestRng::new(9);
        let mut b = TestRng::new(9);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }
}
