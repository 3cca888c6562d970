//! Generating functions of the generalized Stirling and Bell numbers.
//!
//! Exponential generating functions are built as exact truncated series and
//! compared coefficient by coefficient; the coherent-state sums and the
//! hypergeometric closed forms are evaluated numerically.

mod hypergeometric;

use std::f64::consts::E;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::kernel::int::{
    binomial, factorial, falling_factorial_i64, int_to_f64, rat, rat_int, ExactInt, ExactRat,
};
use crate::kernel::numeric::{Approx, StoppingRule};
use crate::kernel::ExactSeries;
use crate::stirling::{bell, OrderSignature};

pub use hypergeometric::{
    b31_check, hgf_32, kummer_bell_check, laguerre_bell_check, HgfValue, LaguerreBellCheck,
    NumericBellCheck,
};

/// Coefficients of `x^n`, `n = 0..=order`, of the egf of column `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgfExtraction {
    pub k: u32,
    pub order: usize,
    pub coefficients: Vec<ExactRat>,
}

impl EgfExtraction {
    /// `n! * coeff[n]` for every `n`; errors if any of them is not an integer.
    pub fn scaled_coefficients(&self) -> Result<Vec<ExactInt>> {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(n, c)| {
                let v = c * rat_int(&factorial(n as u64));
                if v.is_integer() {
                    Ok(v.to_integer())
                } else {
                    Err(Error::NonIntegral {
                        context: format!("{n}! x coefficient {n} of egf column {}", self.k),
                    })
                }
            })
            .collect()
    }
}

/// Egf of column `k` of the diagonal triangle `S_{r,r}`:
/// `((-1)^k/k!) sum_{p=r}^{k} (-1)^p C(k,p) (e^{x p^(r)} - 1)`.
pub fn egf_diag(r: u32, k: u32, order: usize) -> Result<EgfExtraction> {
    if r == 0 || k < r {
        return Err(Error::InvalidArgument(format!(
            "egf_diag needs k >= r >= 1, got r = {r}, k = {k}"
        )));
    }
    let one = ExactSeries::one(order);
    let mut acc = ExactSeries::zero(order);
    for p in r..=k {
        let rate = rat_int(&falling_factorial_i64(p as i64, r));
        let term = &ExactSeries::linear(rate, order).exp()? - &one;
        let mut weight = rat_int(&binomial(k as u64, p as i64));
        if (k - p) % 2 == 1 {
            weight = -weight;
        }
        acc = &acc + &term.scale(&weight);
    }
    let acc = acc.scale(&(ExactRat::one() / rat_int(&factorial(k as u64))));
    Ok(EgfExtraction {
        k,
        order,
        coefficients: acc.coeffs().to_vec(),
    })
}

/// Egf of column `k` of `S_{r,1}`: `(1/k!) [(1 - (r-1)x)^{-1/(r-1)} - 1]^k`.
pub fn egf_r1(r: u32, k: u32, order: usize) -> Result<EgfExtraction> {
    if r < 2 || k == 0 {
        return Err(Error::InvalidArgument(format!(
            "egf_r1 needs r >= 2 and k >= 1, got r = {r}, k = {k}"
        )));
    }
    let m = (r - 1) as i64;
    let base = ExactSeries::new(vec![ExactRat::one(), rat(-m, 1)], order);
    let bracket = &base.binomial_pow(&rat(-1, m))? - &ExactSeries::one(order);
    let col = bracket
        .pow(k)
        .scale(&(ExactRat::one() / rat_int(&factorial(k as u64))));
    Ok(EgfExtraction {
        k,
        order,
        coefficients: col.coeffs().to_vec(),
    })
}

/// `<z| exp(λ (a†)^r a^r) |z>` at `|z| = 1` from the double sum
/// `1 + sum_{k>=r} ((-1)^k/k!) sum_{p=r}^{k} (-1)^p C(k,p) (e^{λ p^(r)} - 1)`.
///
/// For `r >= 2` the outer series is only asymptotic (the Bell numbers grow
/// too fast for the egf to converge), so it is truncated at its smallest
/// term when the requested `tol` is out of reach; `tol` in the result then
/// reports that term. `terms` counts the outer terms used.
pub fn egf_bell_diag_numeric(r: u32, lambda: f64, tol: f64) -> Result<Approx> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be >= 1".into()));
    }
    let rule = StoppingRule::new(r as usize + 16, tol);
    rule.sum_asymptotic(
        &format!("coherent egf for r = {r}, lambda = {lambda}"),
        |i| {
            if i == 0 {
                return 1.0;
            }
            let k = r + i as u32 - 1;
            let mut inner = 0.0f64;
            for p in r..=k {
                let rate = int_to_f64(&falling_factorial_i64(p as i64, r));
                let term = int_to_f64(&binomial(k as u64, p as i64)) * (lambda * rate).exp_m1();
                if (k - p).is_multiple_of(2) {
                    inner += term;
                } else {
                    inner -= term;
                }
            }
            inner / int_to_f64(&factorial(k as u64))
        },
    )
}

/// `sum_{n=0}^{n_max} B_{r,s}(n) λ^n / n!` with exact Bell numbers.
pub fn bell_egf_partial_sum(sig: OrderSignature, lambda: f64, n_max: u32) -> f64 {
    (0..=n_max)
        .map(|n| {
            let ratio = BigRational::new(bell(sig, n), factorial(n as u64));
            ratio.to_f64().unwrap_or(f64::NAN) * lambda.powi(n as i32)
        })
        .sum()
}

/// `exp(e^λ - 1)`, the egf of the classical Bell numbers.
pub fn egf_classical_numeric(lambda: f64) -> Approx {
    Approx {
        value: lambda.exp_m1().exp(),
        tol: 4.0 * f64::EPSILON,
        terms: 0,
    }
}

/// `e^{-1}`, shared by the closed forms below.
pub(crate) fn inv_e() -> f64 {
    1.0 / E
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::int::int;
    use crate::stirling::stirling;

    fn ints(v: &[i64]) -> Vec<ExactInt> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn egf_diag_examples() {
        let e = egf_diag(1, 2, 4).unwrap();
        assert_eq!(e.scaled_coefficients().unwrap(), ints(&[0, 0, 1, 3, 7]));
        let e = egf_diag(2, 3, 3).unwrap().scaled_coefficients().unwrap();
        assert_eq!((e[2].clone(), e[3].clone()), (int(4), int(32)));
        let e = egf_diag(1, 1, 3).unwrap().scaled_coefficients().unwrap();
        assert_eq!(e, ints(&[0, 1, 1, 1]));
        assert!(egf_diag(3, 2, 4).is_err());
    }

    #[test]
    fn egf_r1_examples() {
        let e = egf_r1(2, 1, 6).unwrap().scaled_coefficients().unwrap();
        assert_eq!(e, ints(&[0, 1, 2, 6, 24, 120, 720]));
        let e = egf_r1(2, 2, 4).unwrap().scaled_coefficients().unwrap();
        assert_eq!(e[4], int(36));
        let e = egf_r1(3, 1, 4).unwrap().scaled_coefficients().unwrap();
        for n in 1..=4 {
            assert_eq!(e[n], stirling(OrderSignature::of(3, 1), n as u32, 1));
        }
        assert!(egf_r1(1, 1, 3).is_err());
    }

    #[test]
    fn egf_bell_diag_examples() {
        let v = egf_bell_diag_numeric(1, 0.1, 1e-12).unwrap();
        assert!(v.rel_err(0.1f64.exp_m1().exp()) < 1e-11);
        let v = egf_bell_diag_numeric(2, 0.0, 1e-12).unwrap();
        assert_eq!(v.value, 1.0);
    }

    #[test]
    fn classical_egf_against_partial_sum() {
        // the n = 20 term alone is ~2e-5 at |λ| = 1, so that case needs more terms
        for (lambda, n_max) in [(-1.0, 40), (-0.5, 20), (0.0, 20), (0.5, 20), (1.0, 40)] {
            let partial = bell_egf_partial_sum(OrderSignature::of(1, 1), lambda, n_max);
            assert!(
                egf_classical_numeric(lambda).rel_err(partial) < 1e-10,
                "{lambda}"
            );
        }
        assert!(egf_classical_numeric(1.0).rel_err((E - 1.0).exp()) < 1e-15);
    }
}
