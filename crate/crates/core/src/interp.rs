//! Equispaced interpolation: nodes, discrete Fourier–Lagrange
//! coefficients, interpolant evaluation, aliasing identities, and
//! synthesis of class members from their generator.
//!
//! Everything here is anchored at the 2n+1 nodes x_k = 2kπ/(2n+1),
//! k = 0..2n. The discrete coefficients are computed by the direct
//! O(n²) sums; those sums are the normative semantics (bit-stable
//! reference behavior), not a performance statement.

use crate::error::{Error, Result};
use crate::kernel::{BetaSequence, PsiSequence};
use crate::trig::TrigPolynomial;
use std::f64::consts::PI;

/// Discrete Fourier–Lagrange coefficients of order n: `a` holds
/// a₀⁽ⁿ⁾..a_n⁽ⁿ⁾ (n+1 entries), `b` holds b₁⁽ⁿ⁾..b_n⁽ⁿ⁾ (n entries).
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteCoeffs {
    pub n: u32,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl DiscreteCoeffs {
    /// View as a trig polynomial of degree n (same evaluation semantics).
    pub fn to_polynomial(&self) -> TrigPolynomial {
        TrigPolynomial::new(self.a[0], self.a[1..].to_vec(), self.b.clone())
    }
}

/// The 2n+1 equispaced nodes x_k = 2kπ/(2n+1), k = 0..2n.
pub fn nodes(n: u32) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".to_string()));
    }
    let count = 2 * n as usize + 1;
    let step = 2.0 * PI / count as f64;
    Ok((0..count).map(|k| k as f64 * step).collect())
}

/// Discrete coefficients a_k⁽ⁿ⁾ = 2/(2n+1) Σ_i f(x_i)cos(k x_i),
/// b_k⁽ⁿ⁾ = 2/(2n+1) Σ_i f(x_i)sin(k x_i), from samples of f at `nodes(n)`
/// in order.
pub fn fourier_lagrange_coeffs(samples: &[f64], n: u32) -> Result<DiscreteCoeffs> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".to_string()));
    }
    let count = 2 * n as usize + 1;
    if samples.len() != count {
        return Err(Error::ShapeMismatch {
            what: "sample count",
            expected: count,
            actual: samples.len(),
        });
    }
    let xs = nodes(n)?;
    let scale = 2.0 / count as f64;
    let mut a = Vec::with_capacity(n as usize + 1);
    let mut b = Vec::with_capacity(n as usize);
    for k in 0..=n as usize {
        let mut sa = 0.0;
        let mut sb = 0.0;
        for (i, &fx) in samples.iter().enumerate() {
            let (s, c) = (k as f64 * xs[i]).sin_cos();
            sa += fx * c;
            sb += fx * s;
        }
        a.push(scale * sa);
        if k >= 1 {
            b.push(scale * sb);
        }
    }
    Ok(DiscreteCoeffs { n, a, b })
}

/// Evaluates the interpolation polynomial a₀⁽ⁿ⁾/2 + Σ(a_k⁽ⁿ⁾cos kx +
/// b_k⁽ⁿ⁾sin kx) at x. At every node the value reproduces the original
/// sample.
pub fn eval_interpolant(coeffs: &DiscreteCoeffs, x: f64) -> f64 {
    let mut acc = coeffs.a[0] / 2.0;
    for k in 1..=coeffs.n as usize {
        let (s, c) = (k as f64 * x).sin_cos();
        acc += coeffs.a[k] * c + coeffs.b[k - 1] * s;
    }
    acc
}

/// Source of true Fourier coefficients for `aliased_coeffs`.
///
/// `abs_tail(start)` must bound Σ_{k≥start} (|a_k| + |b_k|); it certifies
/// the truncation of the aliasing series.
pub trait FourierProvider {
    /// (a_k, b_k); k = 0 returns (a₀, 0).
    fn coeff(&self, k: u64) -> (f64, f64);
    /// Upper bound on Σ_{k≥start} (|a_k| + |b_k|).
    fn abs_tail(&self, start: u64) -> f64;
}

impl FourierProvider for TrigPolynomial {
    fn coeff(&self, k: u64) -> (f64, f64) {
        if k == 0 {
            (self.a0, 0.0)
        } else {
            (self.cos_coeff(k as usize), self.sin_coeff(k as usize))
        }
    }

    fn abs_tail(&self, start: u64) -> f64 {
        let mut sum = 0.0;
        for k in start.max(1)..=self.degree() as u64 {
            sum += self.cos_coeff(k as usize).abs() + self.sin_coeff(k as usize).abs();
        }
        if start == 0 {
            sum += self.a0.abs();
        }
        sum
    }
}

/// Folds true Fourier coefficients onto the discrete ones:
/// a_k⁽ⁿ⁾ = a_k + Σ_m (a_{m(2n+1)+k} + a_{m(2n+1)−k}) and
/// b_k⁽ⁿ⁾ = b_k + Σ_m (b_{m(2n+1)+k} − b_{m(2n+1)−k}).
///
/// The m-series stops once the provider certifies the dropped mass below
/// `tol`; if the budget runs out first, the achieved bound is reported in
/// the error.
pub fn aliased_coeffs<P: FourierProvider>(
    provider: &P,
    n: u32,
    tol: f64,
) -> Result<DiscreteCoeffs> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".to_string()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive".to_string()));
    }
    const MAX_BLOCKS: u64 = 1_000_000;

    let period = 2 * n as u64 + 1;
    let (a0, _) = provider.coeff(0);
    let mut a = vec![0.0; n as usize + 1];
    let mut b = vec![0.0; n as usize + 1];
    a[0] = a0;
    for k in 1..=n as u64 {
        let (ak, bk) = provider.coeff(k);
        a[k as usize] = ak;
        b[k as usize] = bk;
    }

    let mut m = 1u64;
    loop {
        let remainder = provider.abs_tail(m * period - n as u64);
        if remainder < tol {
            break;
        }
        if m > MAX_BLOCKS {
            return Err(Error::Truncation {
                requested: tol,
                achieved: remainder,
                terms: m * period,
            });
        }
        for k in 0..=n as u64 {
            let (ap, bp) = provider.coeff(m * period + k);
            let (am, bm) = provider.coeff(m * period - k);
            a[k as usize] += ap + am;
            b[k as usize] += bp - bm;
        }
        m += 1;
    }

    Ok(DiscreteCoeffs {
        n,
        a,
        b: b[1..].to_vec(),
    })
}

/// A member of the convolution class: f = a₀/2 + (φ ∗ kernel)/π, given by
/// its generator φ (zero mean, ‖φ‖₂ ≤ 1), the coefficient sequence ψ and
/// the phase sequence β.
#[derive(Debug, Clone)]
pub struct ClassMemberSpec {
    pub a0: f64,
    pub phi: TrigPolynomial,
    pub psi: PsiSequence,
    pub beta: BetaSequence,
}

/// Tolerance on the ‖φ‖₂ ≤ 1 membership check.
const MEMBERSHIP_TOL: f64 = 1e-12;

impl ClassMemberSpec {
    /// Validates zero mean and ‖φ‖₂ ≤ 1 (within 1e−12).
    pub fn new(a0: f64, phi: TrigPolynomial, psi: PsiSequence, beta: BetaSequence) -> Result<Self> {
        if phi.a0 != 0.0 {
            return Err(Error::InvalidParameter(
                "φ must have zero mean (a0 = 0)".to_string(),
            ));
        }
        let norm = phi.l2_norm();
        if norm > 1.0 + MEMBERSHIP_TOL {
            return Err(Error::ClassMembership { norm });
        }
        Ok(Self { a0, phi, psi, beta })
    }
}

/// Synthesizes f from its generator by convolution in coefficient space:
/// if φ has harmonics (c_k, d_k) and θ_k = β_kπ/2, then
/// a_k = ψ(k)(c_k cosθ_k − d_k sinθ_k) and
/// b_k = ψ(k)(c_k sinθ_k + d_k cosθ_k).
///
/// (The rotation direction is fixed by the convolution identity
/// (1/π)∫cos(k(x−t))cos(kt−θ)dt = cos(kx−θ), checked by brute-force
/// quadrature in the test suite.)
pub fn synthesize_f(spec: &ClassMemberSpec, truncation: usize) -> Result<TrigPolynomial> {
    if spec.phi.degree() > truncation {
        return Err(Error::ShapeMismatch {
            what: "φ degree exceeds the requested truncation",
            expected: truncation,
            actual: spec.phi.degree(),
        });
    }
    let degree = spec.phi.degree();
    let mut f = TrigPolynomial::zero(degree);
    f.a0 = spec.a0;
    for k in 1..=degree {
        let amp = spec.psi.eval(k as u64);
        let (sin_t, cos_t) = spec.beta.theta(k as u64).sin_cos();
        let c = spec.phi.cos_coeffs[k - 1];
        let d = spec.phi.sin_coeffs[k - 1];
        f.cos_coeffs[k - 1] = amp * (c * cos_t - d * sin_t);
        f.sin_coeffs[k - 1] = amp * (c * sin_t + d * cos_t);
    }
    Ok(f)
}
