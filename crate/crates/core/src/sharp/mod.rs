//! Sharp worst-case approximation errors over convolution classes.
//!
//! Three routes to the same quantities, kept deliberately independent so
//! they can cross-check each other:
//!
//! * block-series evaluators for arbitrary square-summable ψ
//!   ([`pointwise_error_general`], [`pointwise_error_interp`],
//!   [`uniform_error_convex`]),
//! * closed forms for the geometric family ([`poisson_pointwise`],
//!   [`poisson_uniform`]),
//! * singular-integral forms for the power family ([`sobolev_pointwise`],
//!   [`sobolev_uniform`]).

mod poisson;
mod series;
mod weyl;

pub use poisson::{poisson_pointwise, poisson_uniform};
pub use series::{
    alpha_convexity_check, pointwise_error_general, pointwise_error_interp, uniform_error_convex,
};
pub use weyl::{sobolev_pointwise, sobolev_uniform};

/// A computed worst-case error value together with a rigorous bound on
/// the truncation of the underlying infinite series (or, for the
/// quadrature-backed evaluators, the standard error estimate plus the
/// analytic tail bound).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorResult {
    /// The (nonnegative) error value.
    pub value: f64,
    /// Bound on |reported − exact|.
    pub truncation_bound: f64,
    /// Number of series terms or integrand evaluations consumed.
    pub terms_used: u64,
}

/// Outcome of the finite-prefix convexity check on the block-mass
/// sequence α_m = m·Σ_{k in block m} ψ²(k).
///
/// A passing prefix is necessary evidence, not a certificate: the
/// hypothesis concerns the whole sequence and no finite computation can
/// certify it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlphaSequenceReport {
    /// α was computed for m = 1..=checked_up_to.
    pub checked_up_to: u64,
    /// True when every interior second difference was nonnegative (up to
    /// a 1e−15 relative rounding allowance).
    pub is_convex_on_prefix: bool,
    /// The first m with α_{m+1} − 2α_m + α_{m−1} < 0, if any.
    pub first_violation: Option<u64>,
}

/// Compensated (Kahan) accumulator. The series evaluators sum up to ~1e7
/// nonnegative terms and are compared across algebraic routes at 1e−12;
/// naive summation noise would not survive that comparison.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn add(&mut self, term: f64) {
        let y = term - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// sqrt(s + delta) − sqrt(s), computed stably; converts a bound on a
/// squared quantity into a bound on its square root.
pub(crate) fn sqrt_increment(s: f64, delta: f64) -> f64 {
    if delta <= 0.0 {
        return 0.0;
    }
    delta / ((s + delta).sqrt() + s.sqrt())
}
