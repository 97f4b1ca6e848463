//! Linear polynomial methods built from multiplier rows (λ, μ) applied to
//! the discrete Fourier–Lagrange coefficients.

use crate::error::{Error, Result};
use crate::interp::DiscreteCoeffs;
use crate::trig::TrigPolynomial;

/// One validated multiplier row pair (λ₀..λ_n, μ₀..μ_n).
///
/// The structural conditions λ₀ = 1 and μ₀ = 0 are required exactly (they
/// force reproduction of constants); entries for k > n are implicitly
/// zero. The full matrix conditions also demand λ_k⁽ⁿ⁾ → 1 and μ_k⁽ⁿ⁾ → 0
/// as n → ∞; a single row cannot witness a limit, so that part is
/// documentation only, not validated here.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierSet {
    n: u32,
    lambda: Vec<f64>,
    mu: Vec<f64>,
}

impl MultiplierSet {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// λ_k for 0 ≤ k ≤ n (0 beyond).
    pub fn lambda(&self, k: u64) -> f64 {
        self.lambda.get(k as usize).copied().unwrap_or(0.0)
    }

    /// μ_k for 0 ≤ k ≤ n (0 beyond).
    pub fn mu(&self, k: u64) -> f64 {
        self.mu.get(k as usize).copied().unwrap_or(0.0)
    }

    pub fn lambda_row(&self) -> &[f64] {
        &self.lambda
    }

    pub fn mu_row(&self) -> &[f64] {
        &self.mu
    }

    /// max_k |λ_k| and max_k |μ_k|; used by the truncation bounds.
    pub fn row_sup(&self) -> (f64, f64) {
        let sup = |row: &[f64]| row.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        (sup(&self.lambda), sup(&self.mu))
    }

    /// True when this is the interpolation row (λ ≡ 1, μ ≡ 0).
    pub fn is_interpolation(&self) -> bool {
        self.lambda.iter().all(|&l| l == 1.0) && self.mu.iter().all(|&m| m == 0.0)
    }
}

/// Validates a multiplier row pair of length n+1.
pub fn validate_multipliers(lambda: &[f64], mu: &[f64], n: u32) -> Result<MultiplierSet> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".to_string()));
    }
    let expected = n as usize + 1;
    if lambda.len() != expected {
        return Err(Error::ShapeMismatch {
            what: "lambda row length",
            expected,
            actual: lambda.len(),
        });
    }
    if mu.len() != expected {
        return Err(Error::ShapeMismatch {
            what: "mu row length",
            expected,
            actual: mu.len(),
        });
    }
    if lambda[0] != 1.0 {
        return Err(Error::MultiplierCondition(format!(
            "λ_0 must equal 1, got {}",
            lambda[0]
        )));
    }
    if mu[0] != 0.0 {
        return Err(Error::MultiplierCondition(format!(
            "μ_0 must equal 0, got {}",
            mu[0]
        )));
    }
    if let Some(v) = lambda.iter().chain(mu.iter()).find(|v| !v.is_finite()) {
        return Err(Error::MultiplierCondition(format!(
            "all multiplier entries must be finite, got {v}"
        )));
    }
    Ok(MultiplierSet {
        n,
        lambda: lambda.to_vec(),
        mu: mu.to_vec(),
    })
}

/// Named preset rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// λ_k = 1 for 0 ≤ k ≤ n, μ ≡ 0: the method reduces to interpolation.
    Interp,
    /// λ₀ = 1, λ_k = 0 for k ≥ 1, μ ≡ 0: the method returns a₀⁽ⁿ⁾/2.
    Zero,
}

/// Builds a preset multiplier row of order n. `name` ∈ {"interp", "zero"}.
pub fn preset_multipliers(name: &str, n: u32) -> Result<MultiplierSet> {
    let preset = match name {
        "interp" => Preset::Interp,
        "zero" => Preset::Zero,
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown method preset: {other} (expected interp or zero)"
            )))
        }
    };
    preset_row(preset, n)
}

/// Typed variant of `preset_multipliers`.
pub fn preset_row(preset: Preset, n: u32) -> Result<MultiplierSet> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".to_string()));
    }
    let len = n as usize + 1;
    let lambda = match preset {
        Preset::Interp => vec![1.0; len],
        Preset::Zero => {
            let mut l = vec![0.0; len];
            l[0] = 1.0;
            l
        }
    };
    validate_multipliers(&lambda, &vec![0.0; len], n)
}

/// Evaluates the method polynomial at x:
/// a₀⁽ⁿ⁾/2 + Σ_k [λ_k(a_k cos kx + b_k sin kx) + μ_k(−b_k cos kx + a_k sin kx)].
pub fn apply_method(coeffs: &DiscreteCoeffs, mults: &MultiplierSet, x: f64) -> Result<f64> {
    if coeffs.n != mults.n {
        return Err(Error::ShapeMismatch {
            what: "coefficient order vs multiplier order",
            expected: mults.n as usize,
            actual: coeffs.n as usize,
        });
    }
    Ok(method_polynomial_unchecked(coeffs, mults).eval(x))
}

/// The method output as an explicit trig polynomial of degree n, with
/// A_k = λ_k a_k − μ_k b_k and B_k = λ_k b_k + μ_k a_k.
pub fn method_polynomial(coeffs: &DiscreteCoeffs, mults: &MultiplierSet) -> Result<TrigPolynomial> {
    if coeffs.n != mults.n {
        return Err(Error::ShapeMismatch {
            what: "coefficient order vs multiplier order",
            expected: mults.n as usize,
            actual: coeffs.n as usize,
        });
    }
    Ok(method_polynomial_unchecked(coeffs, mults))
}

fn method_polynomial_unchecked(coeffs: &DiscreteCoeffs, mults: &MultiplierSet) -> TrigPolynomial {
    let n = coeffs.n as usize;
    let mut p = TrigPolynomial::zero(n);
    p.a0 = coeffs.a[0];
    for k in 1..=n {
        let (l, m) = (mults.lambda(k as u64), mults.mu(k as u64));
        let (ak, bk) = (coeffs.a[k], coeffs.b[k - 1]);
        p.cos_coeffs[k - 1] = l * ak - m * bk;
        p.sin_coeffs[k - 1] = l * bk + m * ak;
    }
    p
}
