//! Floating-point evaluators. Everything here returns [`Approx`] and nothing
//! here feeds back into the exact layers.

use num_traits::{One, Signed, Zero};

use super::int::{binomial_general, factorial, rat_int, rat_pow, to_f64, ExactInt, ExactRat};
use crate::error::{Error, Result};

/// A floating-point value together with its estimated relative error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Approx {
    pub value: f64,
    pub tol: f64,
    /// Number of series terms summed to produce `value` (0 for closed forms).
    pub terms: usize,
}

impl Approx {
    pub fn exact(value: f64) -> Self {
        Approx {
            value,
            tol: 0.0,
            terms: 0,
        }
    }

    pub fn rel_err(&self, reference: f64) -> f64 {
        if reference == 0.0 {
            self.value.abs()
        } else {
            ((self.value - reference) / reference).abs()
        }
    }

    /// Multiplies by a constant, keeping the relative error.
    pub fn scaled(self, factor: f64) -> Self {
        Approx {
            value: self.value * factor,
            ..self
        }
    }
}

/// Iteration budget shared by every truncated sum.
pub const MAX_SERIES_TERMS: usize = 200_000;

/// Stopping rule for series whose terms eventually decay faster than geometrically.
///
/// Summation stops after term `t_k` once all of the following hold:
/// at least `min_terms` terms are in, the ratio `rho = |t_k / t_{k-1}|` is
/// below 1, and the geometric tail bound `|t_k| * max(1, rho / (1 - rho))`
/// is below `tol * |S| / 2`. For `rho < 1/2` this is the plain rule
/// `rho < 1/2` and `|t_k| < tol |S| / 2`.
#[derive(Debug, Clone, Copy)]
pub struct StoppingRule {
    pub min_terms: usize,
    pub tol: f64,
    pub max_terms: usize,
}

impl StoppingRule {
    pub fn new(min_terms: usize, tol: f64) -> Self {
        StoppingRule {
            min_terms,
            tol,
            max_terms: MAX_SERIES_TERMS,
        }
    }

    /// Sums `term(0), term(1), ...` under this rule.
    pub fn sum(&self, context: &str, term: impl FnMut(usize) -> f64) -> Result<Approx> {
        self.run(context, term, false)
    }

    /// Like [`StoppingRule::sum`], but for asymptotic series: if the terms
    /// keep growing after `min_terms` (or overflow), the sum is truncated just
    /// before its smallest term, and that term is the error estimate.
    pub fn sum_asymptotic(&self, context: &str, term: impl FnMut(usize) -> f64) -> Result<Approx> {
        self.run(context, term, true)
    }

    fn run(
        &self,
        context: &str,
        mut term: impl FnMut(usize) -> f64,
        asymptotic: bool,
    ) -> Result<Approx> {
        // (index, |t|, sum of the terms before it)
        let mut smallest: Option<(usize, f64, f64)> = None;
        let mut growth_run = 0usize;
        let truncated = |(k, mag, before): (usize, f64, f64)| Approx {
            value: before,
            tol: if before == 0.0 {
                mag
            } else {
                mag / before.abs()
            },
            terms: k,
        };
        let mut total = 0.0f64;
        let mut prev: Option<f64> = None;
        for k in 0..self.max_terms {
            let t = term(k);
            if !t.is_finite() {
                if let (true, true, Some(best)) = (asymptotic, k >= self.min_terms, smallest) {
                    return Ok(truncated(best));
                }
                return Err(Error::Convergence {
                    terms: k,
                    context: format!("{context}: non-finite term"),
                });
            }
            if k > 0 && smallest.is_none_or(|(_, m, _)| t.abs() < m) {
                smallest = Some((k, t.abs(), total));
            }
            total += t;
            let taken = k + 1;
            let rho = match prev {
                None => f64::INFINITY,
                Some(p) if p == 0.0 => {
                    if t == 0.0 {
                        0.0
                    } else {
                        f64::INFINITY
                    }
                }
                Some(p) => (t / p).abs(),
            };
            prev = Some(t);
            growth_run = if rho > 1.0 { growth_run + 1 } else { 0 };
            if taken < self.min_terms {
                continue;
            }
            if asymptotic && growth_run >= ASYMPTOTIC_GROWTH_RUN {
                return Ok(truncated(smallest.expect("k > 0 has been seen")));
            }
            if rho >= 1.0 {
                continue;
            }
            let tail = t.abs() * (rho / (1.0 - rho)).max(1.0);
            if tail < self.tol * total.abs() / 2.0 || (t == 0.0 && total == 0.0) {
                let estimate = if total == 0.0 {
                    0.0
                } else {
                    tail / total.abs()
                };
                return Ok(Approx {
                    value: total,
                    tol: estimate,
                    terms: taken,
                });
            }
        }
        Err(Error::Convergence {
            terms: self.max_terms,
            context: context.to_string(),
        })
    }
}

/// Consecutive growing terms after which an asymptotic series is truncated.
const ASYMPTOTIC_GROWTH_RUN: usize = 8;

/// `ln Γ(y)` for `y > 0`.
pub fn log_gamma(y: f64) -> Result<Approx> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("log_gamma needs y > 0, got {y}")));
    }
    Ok(Approx {
        value: statrs::function::gamma::ln_gamma(y),
        tol: 1e-12,
        terms: 0,
    })
}

fn is_non_positive_integer(q: &ExactRat) -> bool {
    q.is_integer() && !q.is_positive()
}

/// Minimum number of terms for a bare pFq evaluation.
pub const PFQ_MIN_TERMS: usize = 16;

/// Truncated `pFq(a; b; x)`.
pub fn pfq_truncated(a: &[ExactRat], b: &[ExactRat], x: &ExactRat, tol: f64) -> Result<Approx> {
    pfq_truncated_with(a, b, x, StoppingRule::new(PFQ_MIN_TERMS, tol))
}

pub fn pfq_truncated_with(
    a: &[ExactRat],
    b: &[ExactRat],
    x: &ExactRat,
    rule: StoppingRule,
) -> Result<Approx> {
    if let Some(bad) = b.iter().find(|q| is_non_positive_integer(q)) {
        return Err(Error::Domain(format!(
            "lower parameter {bad} is a non-positive integer"
        )));
    }
    if x.is_zero() {
        return Ok(Approx {
            value: 1.0,
            tol: 0.0,
            terms: 1,
        });
    }
    let terminating = a.iter().any(is_non_positive_integer);
    if !terminating {
        let (p, q) = (a.len(), b.len());
        if p > q + 1 {
            return Err(Error::Divergent(format!(
                "{p}F{q} has zero radius of convergence"
            )));
        }
        if p == q + 1 && x.abs() >= ExactRat::one() {
            return Err(Error::Divergent(format!(
                "{p}F{q} needs |x| < 1, got x = {x}"
            )));
        }
    }
    let a: Vec<f64> = a.iter().map(to_f64).collect();
    let b: Vec<f64> = b.iter().map(to_f64).collect();
    let xf = to_f64(x);
    let mut t = 1.0f64;
    let label = format!("pFq at x = {x}");
    rule.sum(&label, |k| {
        if k > 0 {
            let m = (k - 1) as f64;
            let num: f64 = a.iter().map(|ai| ai + m).product();
            let den: f64 = b.iter().map(|bj| bj + m).product();
            t *= num / den * xf / k as f64;
        }
        t
    })
}

/// Associated Laguerre polynomial `L_m^(alpha)(y)`, exactly.
pub fn laguerre_assoc(m: u32, alpha: i64, y: &ExactRat) -> ExactRat {
    let top = ExactInt::from(m as i64 + alpha);
    let neg_y = -y;
    (0..=m)
        .map(|i| {
            let c = binomial_general(&top, (m - i) as i64);
            rat_int(&c) * rat_pow(&neg_y, i) / rat_int(&factorial(i as u64))
        })
        .fold(ExactRat::zero(), |acc, v| acc + v)
}
