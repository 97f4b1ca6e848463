//! Kernel coefficient sequences ψ(k), phase sequences β_k, and certified
//! tail bounds on Σ ψ²(k).
//!
//! A convolution class is generated by a kernel whose Fourier series is
//! Σ_k ψ(k)·cos(kt − β_kπ/2). Square summability of ψ is what makes every
//! series evaluator in this crate converge, and each built-in family
//! carries a rigorous, cheaply computable upper bound for the squared
//! tails Σ_{k≥K} ψ²(k). Every infinite sum in the crate is truncated
//! against these bounds, never against a heuristic.

use crate::error::{Error, Result};
use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// ψ(k) evaluator for custom sequences.
pub type PsiFn = Arc<dyn Fn(u64) -> f64 + Send + Sync>;
/// Tail majorant for custom sequences: K ↦ upper bound on Σ_{k≥K} ψ²(k).
pub type TailFn = Arc<dyn Fn(u64) -> f64 + Send + Sync>;

/// Spot-check offsets used to vet custom tail majorants at construction.
const CUSTOM_SPOT_KS: [u64; 5] = [1, 2, 7, 33, 101];
const CUSTOM_SPOT_SPAN: u64 = 1000;

#[derive(Clone)]
enum Family {
    /// ψ(k) = q^k, 0 < q < 1.
    Geometric { q: f64 },
    /// ψ(k) = k^{−r}, r > 1/2.
    Power { r: f64 },
    /// Caller-supplied ψ and tail majorant.
    Custom { eval: PsiFn, tail: TailFn },
}

/// A kernel coefficient sequence ψ(k) together with a certified upper
/// bound for its squared tails.
///
/// The geometric tail is exact: Σ_{k≥K} q^{2k} = q^{2K}/(1−q²). The power
/// tail uses the integral test with one explicit leading term:
/// Σ_{k≥K} k^{−2r} ≤ K^{−2r} + K^{1−2r}/(2r−1). Custom sequences must
/// supply their own majorant; no safe generic bound exists, so the
/// constructor refuses to invent one and instead spot-checks the one it
/// is given against brute-force partial sums.
#[derive(Clone)]
pub struct PsiSequence {
    family: Family,
}

impl fmt::Debug for PsiSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Geometric { q } => write!(f, "PsiSequence::geometric(q = {q})"),
            Family::Power { r } => write!(f, "PsiSequence::power(r = {r})"),
            Family::Custom { .. } => write!(f, "PsiSequence::custom(..)"),
        }
    }
}

impl PsiSequence {
    /// ψ(k) = q^k. Requires q ∈ (0, 1).
    pub fn geometric(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "q must lie in (0,1), got {q}"
            )));
        }
        Ok(Self {
            family: Family::Geometric { q },
        })
    }

    /// ψ(k) = k^{−r}. Requires r > 1/2 so that Σ ψ²(k) < ∞.
    pub fn power(r: f64) -> Result<Self> {
        if !(r > 0.5) {
            return Err(Error::InvalidParameter(format!(
                "r must exceed 1/2, got {r}"
            )));
        }
        Ok(Self {
            family: Family::Power { r },
        })
    }

    /// Custom sequence. The caller supplies both ψ and a tail majorant
    /// `tail(K) ≥ Σ_{k≥K} ψ²(k)`; the majorant is spot-checked against
    /// brute-force partial sums over windows of 1000 terms and must be
    /// non-increasing on the checked points.
    pub fn custom(eval: PsiFn, tail: TailFn) -> Result<Self> {
        let mut prev: Option<f64> = None;
        for &k0 in &CUSTOM_SPOT_KS {
            let t = tail(k0);
            if !t.is_finite() {
                return Err(Error::CustomTailRejected(format!(
                    "tail({k0}) is not finite"
                )));
            }
            if let Some(p) = prev {
                if t > p {
                    return Err(Error::CustomTailRejected(format!(
                        "tail is increasing between spot checks (tail({k0}) = {t} > {p})"
                    )));
                }
            }
            let mut partial = 0.0;
            for k in k0..k0 + CUSTOM_SPOT_SPAN {
                let v = eval(k);
                partial += v * v;
            }
            if t < partial {
                return Err(Error::CustomTailRejected(format!(
                    "tail({k0}) = {t} is below the partial sum {partial} of the first {CUSTOM_SPOT_SPAN} squared terms"
                )));
            }
            prev = Some(t);
        }
        Ok(Self {
            family: Family::Custom { eval, tail },
        })
    }

    /// ψ(k). Defined for k ≥ 1.
    pub fn eval(&self, k: u64) -> f64 {
        debug_assert!(k >= 1);
        match &self.family {
            Family::Geometric { q } => q.powi(k as i32),
            Family::Power { r } => (k as f64).powf(-r),
            Family::Custom { eval, .. } => eval(k),
        }
    }

    /// ψ²(k).
    pub fn eval_sq(&self, k: u64) -> f64 {
        let v = self.eval(k);
        v * v
    }

    /// Certified upper bound on Σ_{k≥K} ψ²(k). Exact for the geometric
    /// family, integral-test bound for the power family, caller-supplied
    /// for custom sequences. Requires K ≥ 1.
    pub fn tail_bound(&self, k_start: u64) -> f64 {
        debug_assert!(k_start >= 1);
        match &self.family {
            Family::Geometric { q } => {
                let q2 = q * q;
                q2.powi(k_start as i32) / (1.0 - q2)
            }
            Family::Power { r } => {
                let kf = k_start as f64;
                kf.powf(-2.0 * r) + kf.powf(1.0 - 2.0 * r) / (2.0 * r - 1.0)
            }
            Family::Custom { tail, .. } => tail(k_start),
        }
    }

    /// True for the built-in geometric family (enables closed-form
    /// dispatch).
    pub fn as_geometric(&self) -> Option<f64> {
        match self.family {
            Family::Geometric { q } => Some(q),
            _ => None,
        }
    }

    /// True for the built-in power family (enables closed-form dispatch).
    pub fn as_power(&self) -> Option<f64> {
        match self.family {
            Family::Power { r } => Some(r),
            _ => None,
        }
    }
}

/// Constructs a built-in ψ family by tag, mirroring the CLI syntax.
pub fn make_psi(family: &str, param: f64) -> Result<PsiSequence> {
    match family {
        "geometric" => PsiSequence::geometric(param),
        "power" => PsiSequence::power(param),
        other => Err(Error::InvalidParameter(format!(
            "unknown ψ family: {other} (expected geometric or power)"
        ))),
    }
}

impl FromStr for PsiSequence {
    type Err = Error;

    /// Parses the CLI ψ-family syntax: `geometric:q=<real>` or
    /// `power:r=<real>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidParameter(format!(
                "cannot parse ψ spec {s:?}: expected geometric:q=<real> or power:r=<real>"
            ))
        };
        let (family, rest) = s.split_once(':').ok_or_else(bad)?;
        let (key, value) = rest.split_once('=').ok_or_else(bad)?;
        let param: f64 = value.parse().map_err(|_| bad())?;
        match (family, key) {
            ("geometric", "q") => PsiSequence::geometric(param),
            ("power", "r") => PsiSequence::power(param),
            _ => Err(bad()),
        }
    }
}

/// Phase sequence β_k of a kernel; total, defined for every k ≥ 1.
#[derive(Clone)]
pub struct BetaSequence {
    eval: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
}

impl fmt::Debug for BetaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BetaSequence(..)")
    }
}

impl BetaSequence {
    /// β_k ≡ β.
    pub fn constant(beta: f64) -> Self {
        Self {
            eval: Arc::new(move |_| beta),
        }
    }

    /// β_k ≡ 0 (cosine kernel).
    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    /// Arbitrary phase sequence.
    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(u64) -> f64 + Send + Sync + 'static,
    {
        Self { eval: Arc::new(f) }
    }

    /// β_k.
    pub fn eval(&self, k: u64) -> f64 {
        (self.eval)(k)
    }

    /// The phase angle θ_k = β_k·π/2 fed to the rotation formulas.
    pub fn theta(&self, k: u64) -> f64 {
        self.eval(k) * FRAC_PI_2
    }
}

/// One harmonic of the kernel: ψ(k)cos(kt − β_kπ/2) expanded into
/// cos kt / sin kt components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelHarmonic {
    pub k: u64,
    pub cos_coeff: f64,
    pub sin_coeff: f64,
}

/// Expands the k-th kernel harmonic: cos_coeff = ψ(k)cos(β_kπ/2),
/// sin_coeff = ψ(k)sin(β_kπ/2), so that cos_coeff² + sin_coeff² = ψ²(k).
pub fn kernel_harmonic(psi: &PsiSequence, beta: &BetaSequence, k: u64) -> KernelHarmonic {
    let amp = psi.eval(k);
    let theta = beta.theta(k);
    KernelHarmonic {
        k,
        cos_coeff: amp * theta.cos(),
        sin_coeff: amp * theta.sin(),
    }
}
