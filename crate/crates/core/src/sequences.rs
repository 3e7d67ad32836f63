//! The polynomial family `T_n(z)` evaluated by four independent routes, plus
//! factorials and derangement numbers obtained from it.
//!
//! With `T_n(x, y) = Σ_m C(n,m) (m+x)^m (n-m+y)^(n-m)` the value only depends
//! on `z = x + y`, and
//!
//! ```text
//! T_n(z) = (z+n)^n + n T_{n-1}(z+1),                T_0(z) = 1
//!        = Σ_k n!/k! (z+n)^k
//!        = Σ_k C(n,k) d_{n-k} (z+n+1)^k
//! ```
//!
//! where `d_j` is the j-th derangement number. Every route here is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::{binomial, falling_ratio, pow_conv, pow_int, ExactInteger, ExactRational};

/// Which formula [`subfactorial`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubfactorialMethod {
    /// `d_n = Σ_k n!/k! (-1)^k`
    Sum,
    /// `d_n = n d_{n-1} + (-1)^n`
    RecurrenceSign,
    /// `d_n = (n-1)(d_{n-1} + d_{n-2})`
    RecurrencePair,
}

impl SubfactorialMethod {
    pub const ALL: [SubfactorialMethod; 3] = [
        SubfactorialMethod::Sum,
        SubfactorialMethod::RecurrenceSign,
        SubfactorialMethod::RecurrencePair,
    ];
}

/// Derangement numbers `d_0..=d_max`, built once and read many times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerangementCache {
    values: Vec<ExactInteger>,
}

impl DerangementCache {
    pub fn new(max_n: u32) -> Self {
        let mut values = Vec::with_capacity(max_n as usize + 1);
        values.push(BigInt::one());
        for n in 1..=max_n {
            let prev = &values[n as usize - 1];
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let next = prev * n + sign;
            values.push(next);
        }
        DerangementCache { values }
    }

    /// `d_k`. Panics if `k` exceeds the cached range.
    pub fn get(&self, k: u32) -> &ExactInteger {
        &self.values[k as usize]
    }

    pub fn max_n(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    pub fn values(&self) -> &[ExactInteger] {
        &self.values
    }
}

/// Splits `q` into `(numerator, denominator)` as owned integers.
fn parts(q: &ExactRational) -> (BigInt, BigInt) {
    (q.numer().clone(), q.denom().clone())
}

/// The defining two-variable sum `T_n(x, y)`, with `0^0 = 1`.
///
/// With `x = a/b` and `y = c/d` every summand is brought over the common
/// denominator `b^n d^n`, so the sum itself runs in integers.
pub fn tn_direct(n: u32, x: &ExactRational, y: &ExactRational) -> ExactRational {
    let (a, b) = parts(x);
    let (c, d) = parts(y);
    let mut total = BigInt::zero();
    for m in 0..=n {
        let left = pow_int(&(&b * m + &a), m) * pow_int(&b, n - m);
        let right = pow_int(&(&d * (n - m) + &c), n - m) * pow_int(&d, m);
        total += binomial(n, m as i64) * left * right;
    }
    let den = pow_int(&b, n) * pow_int(&d, n);
    BigRational::new(total, den)
}

/// `T_n(x, z - x)`. The result does not depend on `x`; callers may use that
/// as a check.
pub fn tn_at(n: u32, z: &ExactRational, x: &ExactRational) -> ExactRational {
    tn_direct(n, x, &(z - x))
}

/// `T_n(z)` by the descending recurrence `T_n(z) = (z+n)^n + n T_{n-1}(z+1)`.
///
/// The chain bottoms out at `T_0(z+n) = 1` and is unwound from the base case
/// upward: level `m` sits at argument `z + n - m`.
pub fn tn_recurrence(n: u32, z: &ExactRational) -> ExactRational {
    if z.is_integer() {
        let z = z.to_integer();
        let mut value = BigInt::one();
        for m in 1..=n {
            let arg = &z + (n - m);
            value = pow_int(&(arg + m), m) + value * m;
        }
        return BigRational::from_integer(value);
    }
    let mut value = BigRational::one();
    for m in 1..=n {
        let arg = z + BigRational::from_integer(BigInt::from(n - m));
        let base = arg + BigRational::from_integer(BigInt::from(m));
        value = pow_conv(&base, m) + value * BigRational::from_integer(m.into());
    }
    value
}

/// `T_n(z) = Σ_k n!/k! (z+n)^k` with `n!/k!` taken as a falling product.
pub fn tn_power_sum(n: u32, z: &ExactRational) -> ExactRational {
    let (p, q) = parts(z);
    let shifted = p + &q * n;
    let mut total = BigInt::zero();
    // n!/k! built downward from k = n
    let mut ratio = BigInt::one();
    for k in (0..=n).rev() {
        total += &ratio * pow_int(&shifted, k) * pow_int(&q, n - k);
        ratio *= k.max(1);
    }
    BigRational::new(total, pow_int(&q, n))
}

/// `T_n(z) = Σ_k C(n,k) d_{n-k} (z+n+1)^k`.
pub fn tn_shifted_sum(n: u32, z: &ExactRational) -> ExactRational {
    let cache = DerangementCache::new(n);
    tn_shifted_sum_with(n, z, &cache)
}

/// As [`tn_shifted_sum`], reading derangement numbers from a prebuilt cache.
/// Panics if the cache does not reach `d_n`.
pub fn tn_shifted_sum_with(n: u32, z: &ExactRational, cache: &DerangementCache) -> ExactRational {
    assert!(
        cache.max_n() >= n,
        "derangement cache too short for n = {n}"
    );
    let (p, q) = parts(z);
    let shifted = p + &q * (n + 1);
    let mut total = BigInt::zero();
    for k in 0..=n {
        let coeff = binomial(n, k as i64) * cache.get(n - k);
        if coeff.is_zero() {
            continue;
        }
        total += coeff * pow_int(&shifted, k) * pow_int(&q, n - k);
    }
    BigRational::new(total, pow_int(&q, n))
}

/// `n!` read off the family at `z = -n`.
pub fn factorial_via_tn(n: u32) -> ExactInteger {
    let z = BigRational::from_integer(-BigInt::from(n));
    let value = tn_power_sum(n, &z);
    debug_assert!(value.is_integer());
    value.to_integer()
}

pub fn subfactorial(n: u32, method: SubfactorialMethod) -> ExactInteger {
    match method {
        SubfactorialMethod::Sum => {
            let mut total = BigInt::zero();
            for k in 0..=n {
                let term = falling_ratio(n, k);
                if k % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
        SubfactorialMethod::RecurrenceSign => DerangementCache::new(n).get(n).clone(),
        SubfactorialMethod::RecurrencePair => {
            let (mut before, mut current) = (BigInt::one(), BigInt::zero());
            if n == 0 {
                return before;
            }
            for m in 2..=n {
                let next = (&current + &before) * (m - 1);
                before = std::mem::replace(&mut current, next);
            }
            current
        }
    }
}

/// First `count` derangement numbers read off the exponential generating
/// function `e^(-x) / (1 - x)`.
///
/// The coefficient of `x^n` in the Cauchy product of `Σ (-1)^k x^k / k!` with
/// `Σ x^k` is multiplied by `n!`. Returns an empty list for `count == 0`.
pub fn egf_derangement_coefficients(count: usize) -> Vec<ExactInteger> {
    let mut exp_neg = Vec::with_capacity(count);
    let mut inv_factorial = BigRational::one();
    for k in 0..count {
        if k > 0 {
            inv_factorial /= BigInt::from(k);
        }
        exp_neg.push(if k % 2 == 0 {
            inv_factorial.clone()
        } else {
            -inv_factorial.clone()
        });
    }
    let geometric = vec![BigRational::one(); count];

    let mut out = Vec::with_capacity(count);
    let mut n_factorial = BigInt::one();
    for n in 0..count {
        if n > 0 {
            n_factorial *= n;
        }
        let coeff: BigRational = (0..=n).map(|k| &exp_neg[k] * &geometric[n - k]).sum();
        let scaled = coeff * BigRational::from_integer(n_factorial.clone());
        debug_assert!(scaled.is_integer());
        debug_assert!(!scaled.is_negative());
        out.push(scaled.to_integer());
    }
    out
}
