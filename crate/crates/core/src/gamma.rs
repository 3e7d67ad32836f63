//! Upper incomplete Gamma function `Γ(a, x) = ∫_x^∞ t^(a-1) e^(-t) dt`.
//!
//! For integer order the scaled value `e^x Γ(n+1, x)` is the polynomial
//! `Σ_k n!/k! x^k`, so `T_n(z) = e^(z+n) Γ(n+1, z+n)`. [`verify_tn_gamma`]
//! checks that identity against the floating-point evaluator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::ExactRational;
use crate::sequences::tn_power_sum;

/// Largest order accepted by [`upper_gamma_numeric`]; `Γ(171)` overflows f64.
pub const MAX_ORDER: f64 = 170.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GammaError {
    #[error("outside the domain: a = {a}, x = {x} (need 0 < a <= 170, x >= 0)")]
    Domain { a: f64, x: f64 },
    #[error("no convergence after {iterations} iterations at a = {a}, x = {x}")]
    NonConvergence { a: f64, x: f64, iterations: usize },
    #[error("{0} is not representable in double precision")]
    Overflow(String),
}

/// Stopping rule for the series and continued-fraction loops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaConfig {
    /// Stop once the relative change contributed by one step drops below this.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for GammaConfig {
    fn default() -> Self {
        GammaConfig {
            tolerance: 1e-15,
            max_iterations: 500,
        }
    }
}

/// A double together with an estimate of its relative error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloatApprox {
    pub value: f64,
    pub rel_err_bound: f64,
}

impl FloatApprox {
    pub fn rel_diff(&self, reference: f64) -> f64 {
        ((self.value - reference) / reference).abs()
    }
}

/// Lanczos coefficients for g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(1 + t) for t in [0, 1).
fn lanczos_unit(t: f64) -> f64 {
    let mut series = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        series += c / (t + i as f64);
    }
    let base = t + LANCZOS_G + 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * base.powf(t + 0.5) * (-base).exp() * series
}

/// Complete Gamma function for `0 < a <= 170`.
///
/// Integer orders are an exact factorial product; other orders reduce to
/// `Γ(1 + frac)` and climb back up with `Γ(a+1) = a Γ(a)`.
pub fn gamma_function(a: f64) -> f64 {
    debug_assert!(a > 0.0 && a <= MAX_ORDER + 1.0);
    if a.fract() == 0.0 {
        return (1..a as u32).fold(1.0, |acc, k| acc * k as f64);
    }
    if a < 1.0 {
        return lanczos_unit(a) / a;
    }
    let frac = a.fract();
    let mut value = lanczos_unit(frac);
    let mut k = 1.0 + frac;
    while k < a - 0.5 {
        value *= k;
        k += 1.0;
    }
    value
}

pub fn upper_gamma_numeric(a: f64, x: f64) -> Result<FloatApprox, GammaError> {
    upper_gamma_numeric_with(a, x, &GammaConfig::default())
}

/// `Γ(a, x)` by the lower-Gamma series below `x = a + 1` and Legendre's
/// continued fraction (modified Lentz) from there on.
pub fn upper_gamma_numeric_with(
    a: f64,
    x: f64,
    config: &GammaConfig,
) -> Result<FloatApprox, GammaError> {
    if !(a > 0.0 && a <= MAX_ORDER && x >= 0.0 && x.is_finite()) {
        return Err(GammaError::Domain { a, x });
    }
    let eps = f64::EPSILON;
    let complete = gamma_function(a);
    let gamma_err = if a.fract() == 0.0 {
        a * eps
    } else {
        (a + 16.0) * eps
    };
    if x == 0.0 {
        return Ok(FloatApprox {
            value: complete,
            rel_err_bound: gamma_err,
        });
    }

    let log_prefactor = a * x.ln() - x;
    let prefactor = log_prefactor.exp();
    let exponent_err = (a * x.ln()).abs().max(x) * eps;

    if x < a + 1.0 {
        let (sum, iterations) = lower_series(a, x, config)?;
        let lower = prefactor * sum;
        let value = complete - lower;
        let step_err = exponent_err + iterations as f64 * eps;
        let amplification = (complete / value).abs();
        Ok(FloatApprox {
            value,
            rel_err_bound: amplification * (gamma_err + step_err + config.tolerance),
        })
    } else {
        let (fraction, iterations) = legendre_fraction(a, x, config)?;
        Ok(FloatApprox {
            value: prefactor * fraction,
            rel_err_bound: exponent_err + 2.0 * iterations as f64 * eps + config.tolerance,
        })
    }
}

/// `Σ_k x^k / (a (a+1) ... (a+k))`, the series behind `γ(a, x) = x^a e^(-x) Σ`.
fn lower_series(a: f64, x: f64, config: &GammaConfig) -> Result<(f64, usize), GammaError> {
    let mut denom = a;
    let mut term = 1.0 / a;
    let mut sum = term;
    for iteration in 1..=config.max_iterations {
        denom += 1.0;
        term *= x / denom;
        sum += term;
        if term.abs() < sum.abs() * config.tolerance {
            return Ok((sum, iteration));
        }
    }
    Err(GammaError::NonConvergence {
        a,
        x,
        iterations: config.max_iterations,
    })
}

/// `1 / (x + 1 - a - 1(1-a)/(x + 3 - a - 2(2-a)/(x + 5 - a - ...)))`, so that
/// `Γ(a, x) = x^a e^(-x)` times the returned value.
fn legendre_fraction(a: f64, x: f64, config: &GammaConfig) -> Result<(f64, usize), GammaError> {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for iteration in 1..=config.max_iterations {
        let i = iteration as f64;
        let an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < config.tolerance {
            return Ok((h, iteration));
        }
    }
    Err(GammaError::NonConvergence {
        a,
        x,
        iterations: config.max_iterations,
    })
}

/// Exact `e^x Γ(n+1, x) = Σ_k n!/k! x^k`, valid for every rational `x`.
///
/// Evaluated with the integration-by-parts recurrence
/// `S_m = x^m + m S_{m-1}`, `S_0 = 1`, which also serves as the continuation
/// to `x <= 0`.
pub fn upper_gamma_scaled_exact(n: u32, x: &ExactRational) -> ExactRational {
    let mut value = BigRational::one();
    let mut power = BigRational::one();
    for m in 1..=n {
        power *= x;
        value = &power + value * BigRational::from_integer(BigInt::from(m));
    }
    value
}

/// `|Γ(a,x) - e^(-x) x^(a-1) - (a-1) Γ(a-1,x)| / Γ(a,x)` with every Gamma value
/// taken from [`upper_gamma_numeric`].
pub fn gamma_recurrence_residual(a: f64, x: f64) -> Result<f64, GammaError> {
    if !(a > 1.0 && x > 0.0) {
        return Err(GammaError::Domain { a, x });
    }
    let upper = upper_gamma_numeric(a, x)?.value;
    let lower_order = upper_gamma_numeric(a - 1.0, x)?.value;
    let boundary = ((a - 1.0) * x.ln() - x).exp();
    Ok(((upper - boundary - (a - 1.0) * lower_order) / upper).abs())
}

fn to_finite_f64(q: &ExactRational, what: &str) -> Result<f64, GammaError> {
    match q.to_f64() {
        Some(v) if v.is_finite() => Ok(v),
        _ => Err(GammaError::Overflow(what.to_string())),
    }
}

/// Relative discrepancy between `T_n(z)` and `e^(z+n) Γ(n+1, z+n)`.
///
/// For `z + n > 0` the right side comes from [`upper_gamma_numeric`]. For
/// `z + n <= 0` the integral is not defined, so the comparison falls back to
/// the exact scaled value and the result is `0.0` on agreement.
pub fn verify_tn_gamma(n: u32, z: &ExactRational) -> Result<f64, GammaError> {
    let exact = tn_power_sum(n, z);
    let shifted = z + BigRational::from_integer(BigInt::from(n));
    if shifted <= BigRational::zero() {
        let scaled = upper_gamma_scaled_exact(n, &shifted);
        if scaled == exact {
            return Ok(0.0);
        }
        let diff = to_finite_f64(&(&scaled - &exact), "T_n(z) discrepancy")?;
        let reference = to_finite_f64(&exact, "T_n(z)")?;
        return Ok((diff / reference).abs());
    }
    let x = to_finite_f64(&shifted, "z + n")?;
    let reference = to_finite_f64(&exact, "T_n(z)")?;
    let scale = x.exp();
    if !scale.is_finite() {
        return Err(GammaError::Overflow(format!("exp({x})")));
    }
    let numeric = scale * upper_gamma_numeric(n as f64 + 1.0, x)?.value;
    if !numeric.is_finite() {
        return Err(GammaError::Overflow("e^(z+n) Γ(n+1, z+n)".to_string()));
    }
    Ok(((numeric - reference) / reference).abs())
}
