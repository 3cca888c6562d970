//! Dobinski-type series for generalized Bell numbers.

use std::f64::consts::E;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use super::{
    require_positive_n, shifted_falling_product, stirling, IdentityReport, OrderSignature,
};
use crate::error::{Error, Result};
use crate::kernel::int::{factorial, falling_factorial_i64, rat_int, ExactInt, ExactRat};
use crate::kernel::numeric::{log_gamma, Approx, StoppingRule};
use crate::kernel::ExactSeries;

/// Checks, as an exact power-series identity in `t` through `order`, that
/// `e^t sum_k S_{r,s}(n,k) t^k` has `t^k` coefficient
/// `(1/k!) prod_j (k + (j-1)(r-s))^(s)` for `k >= s` and 0 below.
///
/// The left-hand sum starts at `k = s`; lower terms would vanish anyway
/// because `k^(s) = 0` for `k < s`.
pub fn dobinski_series_identity(
    sig: OrderSignature,
    n: u32,
    order: usize,
) -> Result<IdentityReport> {
    sig.require_canonical("dobinski_series_identity")?;
    require_positive_n(n, "dobinski_series_identity")?;
    if order < (n * sig.s) as usize {
        return Err(Error::InvalidArgument(format!(
            "order {order} is below the polynomial degree {}",
            n * sig.s
        )));
    }
    let poly = ExactSeries::new(
        (0..=order as i64)
            .map(|k| rat_int(&stirling(sig, n, k)))
            .collect(),
        order,
    );
    let exp_t = ExactSeries::linear(ExactRat::one(), order).exp()?;
    let rhs = &exp_t * &poly;
    let lhs = (0..=order as i64).map(|k| {
        if k < sig.s as i64 {
            ExactRat::zero()
        } else {
            BigRational::new(shifted_falling_product(sig, n, k), factorial(k as u64))
        }
    });
    Ok(IdentityReport::compare(
        lhs.zip(rhs.coeffs().iter().cloned())
            .enumerate()
            .map(|(k, (l, r))| (k as i64, l, r)),
    ))
}

/// Which printed series is summed by [`dobinski_sum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DobinskiForm {
    /// `(1/e) sum_{k>=s} (1/k!) prod_j (k + (j-1)(r-s))^(s)`, any `r >= s`.
    FallingProduct,
    /// `(1/e) sum_{k>=0} (1/k!) [(k+r)!/k!]^(n-1)`, diagonal only.
    Diagonal,
    /// `(1/e) sum_{k>=0} [k(k+1)...(k+r-1)]^n / (k+r-1)!`, diagonal only.
    Rising,
    /// `(1/e) sum_{k>=0} k^n / k!`, only `r = s = 1`.
    Classical,
}

fn ratio_to_f64(num: ExactInt, den: ExactInt) -> f64 {
    BigRational::new(num, den).to_f64().unwrap_or(f64::NAN)
}

fn min_terms(sig: OrderSignature, n: u32) -> usize {
    (n * sig.s) as usize + 16
}

/// Truncated Dobinski-type sum in the requested form.
pub fn dobinski_sum(sig: OrderSignature, n: u32, form: DobinskiForm, tol: f64) -> Result<Approx> {
    let sig = sig.canonical();
    require_positive_n(n, "dobinski_sum")?;
    let r = sig.r;
    let needs = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "{form:?} form needs {what}, got {sig}"
            )))
        }
    };
    let rule = StoppingRule::new(min_terms(sig, n), tol);
    let context = format!("Dobinski sum for B{sig}({n})");
    let sum = match form {
        DobinskiForm::FallingProduct => rule.sum(&context, |i| {
            let k = i as i64 + sig.s as i64;
            ratio_to_f64(shifted_falling_product(sig, n, k), factorial(k as u64))
        })?,
        DobinskiForm::Diagonal => {
            needs(sig.is_diagonal(), "r = s")?;
            rule.sum(&context, |k| {
                let ratio = falling_factorial_i64((k + r as usize) as i64, r);
                ratio_to_f64(ratio.pow(n - 1), factorial(k as u64))
            })?
        }
        DobinskiForm::Rising => {
            needs(sig.is_diagonal(), "r = s")?;
            rule.sum(&context, |k| {
                let rising = falling_factorial_i64((k + r as usize - 1) as i64, r);
                ratio_to_f64(rising.pow(n), factorial((k + r as usize - 1) as u64))
            })?
        }
        DobinskiForm::Classical => {
            needs(sig.r == 1 && sig.s == 1, "r = s = 1")?;
            rule.sum(&context, |k| {
                ratio_to_f64(BigInt::from(k).pow(n), factorial(k as u64))
            })?
        }
    };
    Ok(sum.scaled(1.0 / E))
}

/// Numeric generalized Bell number from the falling-product series for
/// `r > s` and the diagonal series for `r = s`.
pub fn dobinski_bell_numeric(sig: OrderSignature, n: u32, tol: f64) -> Result<Approx> {
    let sig = sig.canonical();
    let form = if sig.is_diagonal() {
        DobinskiForm::Diagonal
    } else {
        DobinskiForm::FallingProduct
    };
    dobinski_sum(sig, n, form, tol)
}

/// Gamma-function form of `B_{r,s}(n)` for `r > s`:
/// `(r-s)^{s(n-1)}/e sum_k (1/k!) prod_{j=1}^{s} Γ(n + (k+j)/(r-s)) / Γ(1 + (k+j)/(r-s))`.
pub fn gamma_form_bell_numeric(sig: OrderSignature, n: u32, tol: f64) -> Result<Approx> {
    require_positive_n(n, "gamma_form_bell_numeric")?;
    if sig.r <= sig.s {
        return Err(Error::InvalidArgument(format!(
            "gamma form needs r > s, got {sig}"
        )));
    }
    let d = (sig.r - sig.s) as f64;
    let rule = StoppingRule::new(min_terms(sig, n), tol);
    let mut failure = None;
    let sum = rule.sum(&format!("gamma form for B{sig}({n})"), |k| {
        let mut log_term = -match log_gamma(k as f64 + 1.0) {
            Ok(v) => v.value,
            Err(e) => {
                failure.get_or_insert(e);
                return f64::NAN;
            }
        };
        for j in 1..=sig.s {
            let y = (k as f64 + j as f64) / d;
            match (log_gamma(n as f64 + y), log_gamma(1.0 + y)) {
                (Ok(a), Ok(b)) => log_term += a.value - b.value,
                (Err(e), _) | (_, Err(e)) => {
                    failure.get_or_insert(e);
                    return f64::NAN;
                }
            }
        }
        log_term.exp()
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let prefactor = d.powi((sig.s * (n - 1)) as i32) / E;
    Ok(sum?.scaled(prefactor))
}
