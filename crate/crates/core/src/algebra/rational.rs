//! Exact rational scalars and the integer combinatorics used throughout.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always normalized (lowest terms, positive denominator).
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Nearest `f64` to `q`, correct even when numerator and denominator overflow `f64` separately.
pub fn to_f64(q: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // scale both sides down by a common power of two before dividing
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift_n = (nb - 1000).max(0) as usize;
    let shift_d = (db - 1000).max(0) as usize;
    let n = (q.numer() >> shift_n).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> shift_d).to_f64().unwrap_or(1.0);
    n / d * libm::exp2((shift_n as f64) - (shift_d as f64))
}

/// `n!! = n (n-2) ... 3 1` for odd positive `n`.
pub fn double_factorial(n: i64) -> Result<BigInt> {
    if n < 1 || n % 2 == 0 {
        return Err(Error::InvalidArgument("double factorial needs an odd positive integer"));
    }
    Ok(odd_double_factorial(n as u64))
}

/// `n!!` over odd factors; 1 for `n <= 1`.
pub(crate) fn odd_double_factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    acc
}

/// Standard Gaussian moment `E[G^k]`: `(k-1)!!` for even `k`, zero otherwise.
pub fn gaussian_moment_1d(k: u32) -> BigInt {
    if k % 2 == 1 {
        BigInt::zero()
    } else if k == 0 {
        BigInt::one()
    } else {
        odd_double_factorial(u64::from(k) - 1)
    }
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn is_nonnegative(q: &Rational) -> bool {
    !q.is_negative()
}

pub(crate) fn int(n: BigInt) -> Rational {
    Rational::from_integer(n)
}
