//! Closed-form sharp errors for the geometric family ψ(k) = q^k
//! (classes of Poisson-type integrals). No truncation: these are exact
//! up to floating arithmetic.

use crate::error::{Error, Result};
use std::f64::consts::PI;

fn check_q(q: f64) -> Result<()> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "q must lie in (0,1), got {q}"
        )));
    }
    Ok(())
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".to_string()));
    }
    Ok(())
}

/// Sharp pointwise interpolation error for ψ(k) = q^k:
///
/// |sin((2n+1)x/2)| · 2q^{n+1}/√(π(1−q²)) ·
/// ((1+Q)/(1−2Q·cos(2n+1)x+Q²))^{1/2},   Q = q^{2(2n+1)}.
pub fn poisson_pointwise(q: f64, n: u32, x: f64) -> Result<f64> {
    check_q(q)?;
    check_n(n)?;
    if !x.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "x must be finite, got {x}"
        )));
    }
    let period = 2.0 * n as f64 + 1.0;
    let y = period * x;
    let big_q = q.powi(2 * (2 * n as i32 + 1));
    let denom = 1.0 - 2.0 * big_q * y.cos() + big_q * big_q;
    let value = (y / 2.0).sin().abs() * 2.0 * q.powi(n as i32 + 1) / (PI * (1.0 - q * q)).sqrt()
        * ((1.0 + big_q) / denom).sqrt();
    Ok(value)
}

/// Sharp uniform interpolation error for ψ(k) = q^k:
/// 2q^{n+1}/√(π(1−q²)(1+q^{2(2n+1)})), attained at x = π/(2n+1).
pub fn poisson_uniform(q: f64, n: u32) -> Result<f64> {
    check_q(q)?;
    check_n(n)?;
    let big_q = q.powi(2 * (2 * n as i32 + 1));
    Ok(2.0 * q.powi(n as i32 + 1) / (PI * (1.0 - q * q) * (1.0 + big_q)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishes_at_origin() {
        assert_eq!(poisson_pointwise(0.5, 1, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn midpoint_equals_uniform() {
        for (q, n) in [(0.5, 1u32), (0.3, 4), (0.9, 7)] {
            let mid = PI / (2.0 * n as f64 + 1.0);
            let p = poisson_pointwise(q, n, mid).unwrap();
            let u = poisson_uniform(q, n).unwrap();
            assert!((p - u).abs() <= 1e-14 * u, "q={q} n={n}: {p} vs {u}");
        }
    }

    #[test]
    fn uniform_spot_value() {
        // q = 0.5, n = 1: 0.5/sqrt(π·0.75·(1+2⁻⁶)), frozen from a 40-digit
        // evaluation.
        let u = poisson_uniform(0.5, 1).unwrap();
        let expected = 0.323_219_642_045_329_27;
        assert!((u - expected).abs() < 1e-15);
    }

    #[test]
    fn pointwise_spot_value() {
        // q = 0.5, n = 1, x = 1: frozen from a 40-digit evaluation of the
        // closed form (cross-checked there against the block series).
        let v = poisson_pointwise(0.5, 1, 1.0).unwrap();
        let expected = 0.322_458_858_707_792;
        assert!((v - expected).abs() < 1e-15);
    }

    #[test]
    fn decreasing_in_n() {
        let values: Vec<f64> = (1..=12).map(|n| poisson_uniform(0.6, n).unwrap()).collect();
        for w in values.windows(2) {
            assert!(w[1] < w[0]);
        }
    }

    #[test]
    fn small_q_small_error() {
        assert!(poisson_uniform(1e-6, 1).unwrap() < 1e-11);
        assert!(poisson_uniform(1e-3, 1).unwrap() < poisson_uniform(2e-3, 1).unwrap());
    }

    #[test]
    fn parameter_domain() {
        assert!(poisson_uniform(1.0, 1).is_err());
        assert!(poisson_uniform(0.0, 1).is_err());
        assert!(poisson_uniform(1.5, 1).is_err());
        assert!(poisson_uniform(0.5, 0).is_err());
        assert!(poisson_pointwise(0.5, 1, f64::INFINITY).is_err());
    }
}
