use num_traits::Zero;

use super::NormalPolynomial;
use crate::kernel::int::{binomial, rat_int, rat_pow, ExactRat};
use crate::stirling::{stirling, stirling_sum_row, OrderSignature};

/// Normal form of `[(a†)^r a^s]^n` from the generalized Stirling numbers.
///
/// For `r >= s` this is `sum_k S_{r,s}(n,k) (a†)^{n(r-s)+k} a^k`; for `r < s`
/// the excess annihilators go to the right:
/// `sum_k S_{s,r}(n,k) (a†)^k a^{k+n(s-r)}`.
pub fn normal_order_power(sig: OrderSignature, n: u32) -> NormalPolynomial {
    if n == 0 {
        return NormalPolynomial::identity();
    }
    let canon = sig.canonical();
    let row = stirling_sum_row(canon, n).unwrap_or_else(|e| panic!("{e}"));
    let extra_create = n * sig.r.saturating_sub(sig.s);
    let extra_annihilate = n * sig.s.saturating_sub(sig.r);
    let mut out = NormalPolynomial::zero();
    for (offset, c) in row.iter().enumerate() {
        let k = canon.s + offset as u32;
        out.add_term(k + extra_create, k + extra_annihilate, rat_int(c));
    }
    out
}

/// Normal form of `[a^s (a†)^r]^n` from the anti-Stirling numbers
/// `S~(n,k) = S(n+1, k + min(r,s))`, `k = 0..=n min(r,s)`.
pub fn antinormal_power(sig: OrderSignature, n: u32) -> NormalPolynomial {
    let canon = sig.canonical();
    let extra_create = n * sig.r.saturating_sub(sig.s);
    let extra_annihilate = n * sig.s.saturating_sub(sig.r);
    let mut out = NormalPolynomial::zero();
    for k in 0..=n * canon.s {
        let c = stirling(canon, n + 1, (k + canon.s) as i64);
        out.add_term(k + extra_create, k + extra_annihilate, rat_int(&c));
    }
    out
}

/// A function given by its Taylor coefficients `c_k = F^(k)(x0) / k!`
/// around `center`, truncated after `coefficients.len() - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaylorSpec {
    pub center: ExactRat,
    pub coefficients: Vec<ExactRat>,
}

impl TaylorSpec {
    pub fn at_zero(coefficients: Vec<ExactRat>) -> Self {
        TaylorSpec {
            center: ExactRat::zero(),
            coefficients,
        }
    }

    pub fn cutoff(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }
}

/// Normal form of `sum_{k<=cutoff} c_k [(a†)^r a^s - x0]^k`.
///
/// Each `[X - x0]^k` is expanded binomially into powers of `X = (a†)^r a^s`,
/// whose normal forms come from [`normal_order_power`].
pub fn taylor_normal_order(spec: &TaylorSpec, sig: OrderSignature) -> NormalPolynomial {
    // weight of X^m, summed over every c_k that contributes to it
    let mut weights = vec![ExactRat::zero(); spec.coefficients.len()];
    let neg_center = -&spec.center;
    for (k, c) in spec.coefficients.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (m, w) in weights.iter_mut().enumerate().take(k + 1) {
            let b = rat_int(&binomial(k as u64, m as i64));
            *w += c * b * rat_pow(&neg_center, (k - m) as u32);
        }
    }
    let mut out = NormalPolynomial::zero();
    for (m, w) in weights.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        out = &out + &normal_order_power(sig, m as u32).scale(w);
    }
    out
}
