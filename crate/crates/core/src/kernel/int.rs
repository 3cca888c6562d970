//! Exact integer and rational helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type ExactInt = BigInt;
pub type ExactRat = BigRational;

pub fn int(v: i64) -> ExactInt {
    BigInt::from(v)
}

pub fn rat(num: i64, den: i64) -> ExactRat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: &ExactInt) -> ExactRat {
    BigRational::from_integer(v.clone())
}

/// `m (m-1) ... (m-s+1)`; the empty product is 1.
pub fn falling_factorial(m: &ExactInt, s: u32) -> ExactInt {
    let mut acc = BigInt::one();
    let mut f = m.clone();
    for _ in 0..s {
        if f.is_zero() {
            return BigInt::zero();
        }
        acc *= &f;
        f -= 1;
    }
    acc
}

/// Machine-integer shortcut for `falling_factorial`.
pub fn falling_factorial_i64(m: i64, s: u32) -> ExactInt {
    falling_factorial(&BigInt::from(m), s)
}

pub fn factorial(n: u64) -> ExactInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `C(n, k)` with the convention that out-of-range `k` gives 0.
pub fn binomial(n: u64, k: i64) -> ExactInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(top, k)` for any integer `top`, as `top^(k) / k!`. Zero for `k < 0`.
pub fn binomial_general(top: &ExactInt, k: i64) -> ExactInt {
    if k < 0 {
        return BigInt::zero();
    }
    if !top.is_negative() {
        if let Some(t) = num_traits::ToPrimitive::to_u64(top) {
            return binomial(t, k);
        }
    }
    falling_factorial(top, k as u32) / factorial(k as u64)
}

/// Divides exactly or reports which quantity failed to be integral.
pub fn exact_div(
    num: &ExactInt,
    den: &ExactInt,
    context: impl FnOnce() -> String,
) -> Result<ExactInt> {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::NonIntegral { context: context() })
    }
}

/// Returns the integer value of a rational, if it has one.
pub fn as_integer(q: &ExactRat) -> Option<ExactInt> {
    if q.is_integer() {
        Some(q.to_integer())
    } else {
        None
    }
}

pub fn rat_pow(base: &ExactRat, exp: u32) -> ExactRat {
    num_traits::pow(base.clone(), exp as usize)
}

pub fn to_f64(q: &ExactRat) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

pub fn int_to_f64(v: &ExactInt) -> f64 {
    num_traits::ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
}
