use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use super::{
    alternating_sum, bell, require_positive_n, shifted_falling_product, stirling, IdentityReport,
    OrderSignature,
};
use crate::error::Result;
use crate::kernel::int::{binomial, factorial, falling_factorial_i64, ExactInt};

/// Classical Stirling number of the second kind by the textbook alternating sum
/// `((-1)^k / k!) sum_{p=1}^{k} (-1)^p C(k,p) p^n`.
pub fn classical_stirling(n: u32, k: u32) -> ExactInt {
    let mut acc = BigInt::zero();
    for p in 1..=k {
        let term = binomial(k as u64, p as i64) * BigInt::from(p).pow(n);
        if (k - p).is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc / factorial(k as u64)
}

/// Diagonal alternating sum `((-1)^k/k!) sum_{p=r}^{k} (-1)^p C(k,p) (p^(r))^n`.
pub fn stirling_diag_sum(r: u32, n: u32, k: i64) -> Result<ExactInt> {
    require_positive_n(n, "stirling_diag_sum")?;
    if k < r as i64 {
        return Ok(BigInt::zero());
    }
    let k = k as u32;
    alternating_sum(
        k,
        r,
        |p| falling_factorial_i64(p as i64, r).pow(n),
        || format!("S({r}, {r})({n}, {k}) by diagonal sum"),
    )
}

/// Unsigned Lah number `n!/k! C(n-1, k-1)`.
pub fn lah(n: u32, k: u32) -> ExactInt {
    if k == 0 || k > n {
        return BigInt::zero();
    }
    factorial(n as u64) / factorial(k as u64) * binomial((n - 1) as u64, (k - 1) as i64)
}

/// `B_{2,2}(n)` from classical Bell numbers: `sum_{k=0}^{n-1} C(n-1,k) B(n+k)`.
pub fn bell22_from_classical(n: u32) -> ExactInt {
    assert!(n >= 1, "bell22_from_classical needs n >= 1");
    let classical = OrderSignature::of(1, 1);
    (0..n)
        .map(|k| binomial((n - 1) as u64, k as i64) * bell(classical, n + k))
        .sum()
}

/// Checks `prod_j (x + (j-1)(r-s))^(s) = sum_k S_{r,s}(n,k) x^(k)` at the
/// `ns + 1` points `x = 0..=ns`. Both sides have degree `ns`, so agreement
/// there proves the polynomial identity.
pub fn connection_identity_check(sig: OrderSignature, n: u32) -> Result<IdentityReport> {
    sig.require_canonical("connection_identity_check")?;
    require_positive_n(n, "connection_identity_check")?;
    let coeffs: Vec<ExactInt> = (0..=(n * sig.s) as i64)
        .map(|k| stirling(sig, n, k))
        .collect();
    let pairs = (0..=(n * sig.s) as i64).map(|x| {
        let lhs = shifted_falling_product(sig, n, x);
        let rhs: ExactInt = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * falling_factorial_i64(x, k as u32))
            .sum();
        (x, lhs, rhs)
    });
    Ok(IdentityReport::compare(pairs))
}
