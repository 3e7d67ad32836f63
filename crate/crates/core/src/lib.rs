//! Exact evaluation of the polynomial family
//!
//! ```text
//! T_n(z) = Σ_{m=0}^{n} C(n,m) (m+x)^m (n-m+z-x)^(n-m)      (any x)
//! ```
//!
//! together with the sequences it contains (factorials, derangement numbers
//! and three tree/function counting sequences) and its link to the upper
//! incomplete Gamma function, `T_n(z) = e^(z+n) Γ(n+1, z+n)`.
//!
//! All sequence values are exact big integers or reduced rationals; only the
//! [`gamma`] module works in floating point.

pub mod check;
pub mod exact;
pub mod gamma;
pub mod oeis;
pub mod polynomial;
pub mod sequences;

pub use exact::{binomial, parse_rational, pow_conv, ExactInteger, ExactRational};
pub use gamma::{
    gamma_recurrence_residual, upper_gamma_numeric, upper_gamma_scaled_exact, verify_tn_gamma,
    FloatApprox, GammaConfig, GammaError,
};
pub use oeis::{compare, emit_bfile, generate, parse_bfile, SequenceId, SequenceTable};
pub use polynomial::{expansion_coefficients_at, tn_polynomial, TnPolynomial};
pub use sequences::{
    egf_derangement_coefficients, factorial_via_tn, subfactorial, tn_at, tn_direct, tn_power_sum,
    tn_recurrence, tn_shifted_sum, DerangementCache, SubfactorialMethod,
};
