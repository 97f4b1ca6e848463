//! Finite trigonometric polynomials.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// a₀/2 + Σ_{k=1}^{N} (a_k cos kx + b_k sin kx).
///
/// `cos_coeffs[k-1]` stores a_k and `sin_coeffs[k-1]` stores b_k, so both
/// vectors have exactly `degree` entries. The JSON form is
/// `{"a0": ..., "a": [...], "b": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigPolynomial {
    #[serde(rename = "a0")]
    pub a0: f64,
    #[serde(rename = "a")]
    pub cos_coeffs: Vec<f64>,
    #[serde(rename = "b")]
    pub sin_coeffs: Vec<f64>,
}

impl TrigPolynomial {
    /// The zero polynomial of the given degree.
    pub fn zero(degree: usize) -> Self {
        Self {
            a0: 0.0,
            cos_coeffs: vec![0.0; degree],
            sin_coeffs: vec![0.0; degree],
        }
    }

    /// The constant polynomial c (stored as a₀ = 2c).
    pub fn constant(c: f64) -> Self {
        Self {
            a0: 2.0 * c,
            cos_coeffs: Vec::new(),
            sin_coeffs: Vec::new(),
        }
    }

    /// Builds from coefficient vectors; panics if the lengths differ.
    pub fn new(a0: f64, cos_coeffs: Vec<f64>, sin_coeffs: Vec<f64>) -> Self {
        assert_eq!(
            cos_coeffs.len(),
            sin_coeffs.len(),
            "cosine and sine coefficient vectors must have equal length"
        );
        Self {
            a0,
            cos_coeffs,
            sin_coeffs,
        }
    }

    pub fn degree(&self) -> usize {
        self.cos_coeffs.len()
    }

    /// a_k for 1 ≤ k ≤ degree, 0 beyond.
    pub fn cos_coeff(&self, k: usize) -> f64 {
        if k == 0 {
            return self.a0;
        }
        self.cos_coeffs.get(k - 1).copied().unwrap_or(0.0)
    }

    /// b_k for 1 ≤ k ≤ degree, 0 beyond.
    pub fn sin_coeff(&self, k: usize) -> f64 {
        if k == 0 {
            return 0.0;
        }
        self.sin_coeffs.get(k - 1).copied().unwrap_or(0.0)
    }

    /// Evaluates the polynomial at x.
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = self.a0 / 2.0;
        for k in 1..=self.degree() {
            let (s, c) = (k as f64 * x).sin_cos();
            acc += self.cos_coeffs[k - 1] * c + self.sin_coeffs[k - 1] * s;
        }
        acc
    }

    /// Evaluates at many points.
    pub fn eval_many(&self, xs: &[f64]) -> Vec<f64> {
        xs.iter().map(|&x| self.eval(x)).collect()
    }

    /// L²([−π,π]) norm: sqrt(π(a₀²/2 + Σ(a_k² + b_k²))).
    pub fn l2_norm(&self) -> f64 {
        let mut sq = self.a0 * self.a0 / 2.0;
        for k in 0..self.degree() {
            sq += self.cos_coeffs[k] * self.cos_coeffs[k] + self.sin_coeffs[k] * self.sin_coeffs[k];
        }
        (PI * sq).sqrt()
    }

    /// αp + βq, coefficientwise, with the degree of the longer argument.
    pub fn linear_combination(alpha: f64, p: &Self, beta: f64, q: &Self) -> Self {
        let degree = p.degree().max(q.degree());
        let mut out = Self::zero(degree);
        out.a0 = alpha * p.a0 + beta * q.a0;
        for k in 1..=degree {
            out.cos_coeffs[k - 1] = alpha * p.cos_coeff(k) + beta * q.cos_coeff(k);
            out.sin_coeffs[k - 1] = alpha * p.sin_coeff(k) + beta * q.sin_coeff(k);
        }
        out
    }

    /// Scales every coefficient.
    pub fn scale(&self, factor: f64) -> Self {
        Self {
            a0: self.a0 * factor,
            cos_coeffs: self.cos_coeffs.iter().map(|c| c * factor).collect(),
            sin_coeffs: self.sin_coeffs.iter().map(|s| s * factor).collect(),
        }
    }

    /// The polynomial s ↦ p(shift − s).
    ///
    /// Used to turn the extremal function of the dual problem (which lives
    /// in "kernel time") into the generator of the worst-case class member
    /// at the evaluation point.
    pub fn reflect_shift(&self, shift: f64) -> Self {
        let mut out = Self::zero(self.degree());
        out.a0 = self.a0;
        for k in 1..=self.degree() {
            let (s, c) = (k as f64 * shift).sin_cos();
            let (ck, dk) = (self.cos_coeffs[k - 1], self.sin_coeffs[k - 1]);
            // cos(k(shift−s)) = cos(k·shift)cos(ks) + sin(k·shift)sin(ks)
            // sin(k(shift−s)) = sin(k·shift)cos(ks) − cos(k·shift)sin(ks)
            out.cos_coeffs[k - 1] = ck * c + dk * s;
            out.sin_coeffs[k - 1] = ck * s - dk * c;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_matches_hand_expansion() {
        // 1/2·a0 + 2cos x − sin 2x at x = 0.7
        let p = TrigPolynomial::new(3.0, vec![2.0, 0.0], vec![0.0, -1.0]);
        let x = 0.7_f64;
        let expected = 1.5 + 2.0 * x.cos() - (2.0 * x).sin();
        assert!((p.eval(x) - expected).abs() < 1e-15);
    }

    #[test]
    fn l2_norm_parseval() {
        // ‖cos kt/√π‖₂ = 1.
        let p = TrigPolynomial::new(0.0, vec![0.0, 1.0 / PI.sqrt()], vec![0.0, 0.0]);
        assert!((p.l2_norm() - 1.0).abs() < 1e-15);
        // Constant c = 1 has norm sqrt(2π).
        let c = TrigPolynomial::constant(1.0);
        assert!((c.l2_norm() - (2.0 * PI).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn reflect_shift_pointwise() {
        let p = TrigPolynomial::new(0.4, vec![1.0, -0.3, 0.0], vec![0.2, 0.0, 0.7]);
        let shift = 1.234;
        let q = p.reflect_shift(shift);
        for i in 0..20 {
            let s = -3.0 + 0.33 * i as f64;
            assert!((q.eval(s) - p.eval(shift - s)).abs() < 1e-13);
        }
    }

    #[test]
    fn json_round_trip() {
        let p = TrigPolynomial::new(1.5, vec![0.25, -2.0], vec![0.0, 1.0e-14]);
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.contains("\"a0\"") && json.contains("\"a\"") && json.contains("\"b\""));
        let back: TrigPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(p, back);
    }
}
