//! Hypergeometric closed forms for non-diagonal Bell numbers and the
//! hypergeometric generating function of `B_{3,2}`.

use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::inv_e;
use crate::error::{Error, Result};
use crate::kernel::int::{factorial, int_to_f64, rat, rat_int, ExactInt, ExactRat};
use crate::kernel::laguerre_assoc;
use crate::kernel::numeric::{log_gamma, pfq_truncated, Approx, StoppingRule, PFQ_MIN_TERMS};
use crate::stirling::{bell, OrderSignature};

/// A numeric closed form next to the exact Bell number it should reproduce.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericBellCheck {
    pub exact: ExactInt,
    pub approx: Approx,
}

impl NumericBellCheck {
    pub fn rel_err(&self) -> f64 {
        self.approx.rel_err(int_to_f64(&self.exact))
    }

    pub fn within(&self, tol: f64) -> bool {
        self.rel_err() <= tol
    }
}

/// Both printed forms of `B_{2,1}(n)`: `n!/e 1F1(n+1; 2; 1)` and
/// `(n-1)! L_{n-1}^{(1)}(-1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaguerreBellCheck {
    pub n: u32,
    pub exact: ExactInt,
    pub kummer: Approx,
    /// `(n-1)! L_{n-1}^{(1)}(-1)`, exact.
    pub laguerre: ExactRat,
}

impl LaguerreBellCheck {
    /// The Laguerre form as printed (no `1/e`) equals the Bell number.
    pub fn laguerre_matches(&self) -> bool {
        self.laguerre == rat_int(&self.exact)
    }

    /// The Laguerre form with an extra `1/e` prefactor equals the Bell number.
    pub fn laguerre_over_e_matches(&self, tol: f64) -> bool {
        let v = self.laguerre.to_f64().unwrap_or(f64::NAN) * inv_e();
        let exact = int_to_f64(&self.exact);
        ((v - exact) / exact).abs() <= tol
    }

    pub fn kummer_rel_err(&self) -> f64 {
        self.kummer.rel_err(int_to_f64(&self.exact))
    }
}

pub fn laguerre_bell_check(n: u32, tol: f64) -> Result<LaguerreBellCheck> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "laguerre_bell_check needs n >= 1".into(),
        ));
    }
    let exact = bell(OrderSignature::of(2, 1), n);
    let f11 = pfq_truncated(&[rat(n as i64 + 1, 1)], &[rat(2, 1)], &rat(1, 1), tol)?;
    let kummer = f11.scaled(int_to_f64(&factorial(n as u64)) * inv_e());
    let laguerre = rat_int(&factorial((n - 1) as u64)) * laguerre_assoc(n - 1, 1, &rat(-1, 1));
    Ok(LaguerreBellCheck {
        n,
        exact,
        kummer,
        laguerre,
    })
}

/// `B_{2r,r}(n) = (rn)! / (e r!) 1F1(rn+1; r+1; 1)`.
pub fn kummer_bell_check(r: u32, n: u32, tol: f64) -> Result<NumericBellCheck> {
    if r == 0 || n == 0 {
        return Err(Error::InvalidArgument(
            "kummer_bell_check needs r, n >= 1".into(),
        ));
    }
    let rn = (r * n) as i64;
    let f11 = pfq_truncated(&[rat(rn + 1, 1)], &[rat(r as i64 + 1, 1)], &rat(1, 1), tol)?;
    let prefactor = BigRational::new(factorial(rn as u64), factorial(r as u64))
        .to_f64()
        .unwrap_or(f64::NAN)
        * inv_e();
    Ok(NumericBellCheck {
        exact: bell(OrderSignature::of(2 * r, r), n),
        approx: f11.scaled(prefactor),
    })
}

/// `B_{3,1}(n)` as the two-term `1F2` combination at `x = 1/4`:
/// `2^{n-1}/e [2 Γ(n+1/2)/√π 1F2(n+1/2; 1/2, 3/2; 1/4) + n! 1F2(n+1; 3/2, 2; 1/4)]`.
pub fn b31_check(n: u32, tol: f64) -> Result<NumericBellCheck> {
    if n == 0 {
        return Err(Error::InvalidArgument("b31_check needs n >= 1".into()));
    }
    let quarter = rat(1, 4);
    let half_n = rat(2 * n as i64 + 1, 2);
    let first = pfq_truncated(&[half_n], &[rat(1, 2), rat(3, 2)], &quarter, tol / 4.0)?;
    let second = pfq_truncated(
        &[rat(n as i64 + 1, 1)],
        &[rat(3, 2), rat(2, 1)],
        &quarter,
        tol / 4.0,
    )?;
    let gamma_ratio = 2.0 * (log_gamma(n as f64 + 0.5)?.value).exp() / PI.sqrt();
    let nfact = int_to_f64(&factorial(n as u64));
    let value =
        2f64.powi(n as i32 - 1) * inv_e() * (gamma_ratio * first.value + nfact * second.value);
    Ok(NumericBellCheck {
        exact: bell(OrderSignature::of(3, 1), n),
        approx: Approx {
            value,
            tol: first.tol.max(second.tol) + 1e-12,
            terms: first.terms + second.terms,
        },
    })
}

/// The hypergeometric generating function `sum_n [B_{3,2}(n)/n!] λ^n/n!`,
/// evaluated two ways.
///
/// `pfq_form` is `(1/e) sum_k 2F1(k+2, k+1; 1; λ) / (k+2)!`. Its `n = 0`
/// coefficient is `(e-2)/e`, the value of the `B_{3,2}` series at `n = 0`,
/// not the conventional `B_{3,2}(0) = 1`. Both partial sums are therefore
/// reported: `partial_series_reading` uses `(e-2)/e` for the constant term,
/// `partial_convention` uses 1. They differ by exactly `2/e` at every λ.
#[derive(Debug, Clone, PartialEq)]
pub struct HgfValue {
    pub lambda: f64,
    pub pfq_form: Approx,
    pub partial_convention: Approx,
    pub partial_series_reading: Approx,
}

impl HgfValue {
    /// Relative gap between the pFq form and the matching partial sum.
    pub fn dual_rel_err(&self) -> f64 {
        self.pfq_form.rel_err(self.partial_series_reading.value)
    }

    /// `pfq_form - partial_convention`; `-2/e` when both are accurate.
    pub fn normalization_offset(&self) -> f64 {
        self.pfq_form.value - self.partial_convention.value
    }
}

/// Largest `n` used by the `B_{3,2}` partial sum before giving up.
const HGF_MAX_N: usize = 160;

pub fn hgf_32(lambda: f64, tol: f64) -> Result<HgfValue> {
    if !(lambda.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "hgf_32 needs |lambda| < 1, got {lambda}"
        )));
    }
    let x = BigRational::from_float(lambda)
        .ok_or_else(|| Error::Domain(format!("lambda {lambda} is not finite")))?;

    let mut failure = None;
    let outer_rule = StoppingRule::new(PFQ_MIN_TERMS, tol / 4.0);
    let outer = outer_rule.sum("outer sum of the hgf pFq form", |k| {
        let k = k as i64;
        let f21 = pfq_truncated(&[rat(k + 2, 1), rat(k + 1, 1)], &[rat(1, 1)], &x, tol / 4.0);
        match f21 {
            Ok(v) => v.value / int_to_f64(&factorial(k as u64 + 2)),
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let pfq_form = outer?.scaled(inv_e());

    let sig = OrderSignature::of(3, 2);
    let mut rule = StoppingRule::new(PFQ_MIN_TERMS, tol / 4.0);
    rule.max_terms = HGF_MAX_N;
    let tail = rule.sum("B(3,2) partial hgf", |i| {
        let n = i as u32 + 1;
        let nf = factorial(n as u64);
        let ratio = BigRational::new(bell(sig, n), &nf * &nf);
        ratio.to_f64().unwrap_or(f64::NAN) * lambda.powi(n as i32)
    })?;
    let series_constant = 1.0 - 2.0 * inv_e();
    Ok(HgfValue {
        lambda,
        pfq_form,
        partial_convention: Approx {
            value: 1.0 + tail.value,
            ..tail
        },
        partial_series_reading: Approx {
            value: series_constant + tail.value,
            ..tail
        },
    })
}
