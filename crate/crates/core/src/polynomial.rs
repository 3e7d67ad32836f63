//! Coefficient vectors of `T_n(z)` in a shifted power basis `(z - c)^k`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{binomial, falling_ratio, pow_int, ExactRational};

/// `T_n(z) = Σ_k coeffs[k] (z - basis_center)^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TnPolynomial {
    n: u32,
    basis_center: ExactRational,
    coeffs: Vec<ExactRational>,
}

impl TnPolynomial {
    /// Coefficients in powers of `(z + n)`: `coeffs[k] = n!/k!`.
    pub fn natural(n: u32) -> Self {
        let coeffs = (0..=n)
            .map(|k| BigRational::from_integer(falling_ratio(n, k)))
            .collect();
        TnPolynomial {
            n,
            basis_center: BigRational::from_integer(-BigInt::from(n)),
            coeffs,
        }
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn basis_center(&self) -> &ExactRational {
        &self.basis_center
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactRational> {
        self.coeffs
    }

    /// Horner evaluation at `z`.
    pub fn evaluate(&self, z: &ExactRational) -> ExactRational {
        let t = z - &self.basis_center;
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &t + c)
    }

    /// Re-expands about `center` by repeated synthetic division (Taylor shift).
    pub fn recentered(&self, center: &ExactRational) -> TnPolynomial {
        let shift = center - &self.basis_center;
        let mut coeffs = self.coeffs.clone();
        if !shift.is_zero() {
            // After pass i, coeffs[i] holds the i-th coefficient about the new center.
            let len = coeffs.len();
            for i in 0..len {
                for j in (i..len - 1).rev() {
                    let carry = &coeffs[j + 1] * &shift;
                    coeffs[j] += carry;
                }
            }
        }
        TnPolynomial {
            n: self.n,
            basis_center: center.clone(),
            coeffs,
        }
    }
}

/// `T_n` expanded in powers of `(z - basis_center)`.
pub fn tn_polynomial(n: u32, basis_center: &ExactRational) -> TnPolynomial {
    TnPolynomial::natural(n).recentered(basis_center)
}

/// Monomial coefficients of `T_n(z)` from the binomial theorem applied to
/// each `(z + n)^k` summand.
pub fn monomial_coefficients(n: u32) -> Vec<ExactRational> {
    let mut out = vec![BigInt::zero(); n as usize + 1];
    let n_big = BigInt::from(n);
    for k in 0..=n {
        let weight = falling_ratio(n, k);
        for j in 0..=k {
            out[j as usize] += &weight * binomial(k, j as i64) * pow_int(&n_big, k - j);
        }
    }
    out.into_iter().map(BigRational::from_integer).collect()
}

/// Taylor coefficients `p^(k)(center) / k!` of `T_n`, found by formally
/// differentiating the monomial form and evaluating each derivative.
///
/// This is a separate route from [`TnPolynomial::recentered`]; the two are
/// expected to agree exactly.
pub fn expansion_coefficients_at(n: u32, center: &ExactRational) -> Vec<ExactRational> {
    let mut derivative = monomial_coefficients(n);
    let mut k_factorial = BigInt::one();
    let mut out = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        if k > 0 {
            derivative = differentiate(&derivative);
            k_factorial *= k;
        }
        let at_center = derivative
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * center + c);
        out.push(at_center / BigRational::from_integer(k_factorial.clone()));
    }
    out
}

fn differentiate(coeffs: &[ExactRational]) -> Vec<ExactRational> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}
