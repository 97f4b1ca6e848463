//! Trigonometric interpolation on equispaced nodes, linear approximation
//! methods built from Fourier–Lagrange coefficients, and the sharp
//! (exact) pointwise and uniform worst-case errors of those methods over
//! convolution classes of 2π-periodic functions.
//!
//! A class is the set of functions f = a₀/2 + (φ ∗ Ψ)/π where the
//! generator φ runs over the unit ball of L₂ orthogonal to constants and
//! the kernel Ψ has Fourier series Σ ψ(k)cos(kt − β_kπ/2) with Σψ²(k) < ∞.
//! For every linear method that applies multiplier rows (λ, μ) to the
//! discrete coefficients sampled at the 2n+1 equispaced nodes, the
//! worst-case error over such a class has an explicit value; this crate
//! computes it three independent ways (block series, geometric closed
//! form, singular integral) and verifies attainment by synthesizing the
//! extremal function and pushing it through the actual sampling pipeline.
//!
//! Modules:
//! * [`kernel`] — ψ/β sequences and certified tail bounds;
//! * [`trig`] — finite trigonometric polynomials;
//! * [`interp`] — nodes, Fourier–Lagrange coefficients, aliasing,
//!   synthesis of class members;
//! * [`method`] — multiplier rows and the generalized method;
//! * [`sharp`] — the worst-case error evaluators;
//! * [`gamma`] — the Gamma function used by the singular integrals;
//! * [`quad`] — adaptive Gauss–Kronrod quadrature;
//! * [`oracle`] — duality-based attainment checks and Monte-Carlo bounds.

// Validation guards are written as `!(x > 0.0)` on purpose: the negated
// form rejects NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gamma;
pub mod interp;
pub mod kernel;
pub mod method;
pub mod oracle;
pub mod quad;
pub mod sharp;
pub mod trig;

pub use error::{Error, Result};
pub use gamma::gamma_fn;
pub use interp::{
    aliased_coeffs, eval_interpolant, fourier_lagrange_coeffs, nodes, synthesize_f,
    ClassMemberSpec, DiscreteCoeffs, FourierProvider,
};
pub use kernel::{kernel_harmonic, make_psi, BetaSequence, KernelHarmonic, PsiSequence};
pub use method::{
    apply_method, method_polynomial, preset_multipliers, preset_row, validate_multipliers,
    MultiplierSet, Preset,
};
pub use oracle::{
    build_dual_kernel, extremal_phi, monte_carlo_sup, verify_attainment, AttainmentReport,
    DualKernel,
};
pub use sharp::{
    alpha_convexity_check, pointwise_error_general, pointwise_error_interp, poisson_pointwise,
    poisson_uniform, sobolev_pointwise, sobolev_uniform, uniform_error_convex, AlphaSequenceReport,
    ErrorResult,
};
pub use trig::TrigPolynomial;
