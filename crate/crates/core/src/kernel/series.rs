use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::int::{rat_int, ExactInt, ExactRat};
use crate::error::{Error, Result};

/// Truncated formal power series `c_0 + c_1 x + ... + c_order x^order`.
///
/// Every operation is exact through `order` and drops anything above it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSeries {
    coeffs: Vec<ExactRat>,
}

impl ExactSeries {
    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn new(mut coeffs: Vec<ExactRat>, order: usize) -> Self {
        coeffs.resize(order + 1, ExactRat::zero());
        ExactSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(ExactRat::one(), order)
    }

    pub fn constant(c: ExactRat, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// The series `c x`.
    pub fn linear(c: ExactRat, order: usize) -> Self {
        Self::new(vec![ExactRat::zero(), c], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactRat] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &ExactRat {
        &self.coeffs[n]
    }

    pub fn scale(&self, c: &ExactRat) -> Self {
        ExactSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `exp(self)`; requires a zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm {
                expected: "0",
                found: self.coeffs[0].to_string(),
            });
        }
        // f = exp(u) satisfies f' = u' f, so n f_n = sum_k k u_k f_{n-k}.
        let order = self.order();
        let mut f = vec![ExactRat::zero(); order + 1];
        f[0] = ExactRat::one();
        for n in 1..=order {
            let mut acc = ExactRat::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc += &self.coeffs[k] * &f[n - k] * ExactInt::from(k);
            }
            f[n] = acc / rat_int(&ExactInt::from(n));
        }
        Ok(ExactSeries { coeffs: f })
    }

    /// `self^alpha` by the generalized binomial series; requires constant term 1.
    pub fn binomial_pow(&self, alpha: &ExactRat) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTerm {
                expected: "1",
                found: self.coeffs[0].to_string(),
            });
        }
        // f = u^alpha satisfies u f' = alpha u' f, which with u_0 = 1 gives
        // n f_n = sum_{k=1}^{n} (alpha k - (n - k)) u_k f_{n-k}.
        let order = self.order();
        let mut f = vec![ExactRat::zero(); order + 1];
        f[0] = ExactRat::one();
        for n in 1..=order {
            let mut acc = ExactRat::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let weight = alpha * rat_int(&ExactInt::from(k)) - rat_int(&ExactInt::from(n - k));
                acc += weight * &self.coeffs[k] * &f[n - k];
            }
            f[n] = acc / rat_int(&ExactInt::from(n));
        }
        Ok(ExactSeries { coeffs: f })
    }

    fn assert_same_order(&self, rhs: &Self) {
        assert_eq!(
            self.order(),
            rhs.order(),
            "series of different orders cannot be combined"
        );
    }
}

impl Add for &ExactSeries {
    type Output = ExactSeries;

    fn add(self, rhs: &ExactSeries) -> ExactSeries {
        self.assert_same_order(rhs);
        ExactSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ExactSeries {
    type Output = ExactSeries;

    fn sub(self, rhs: &ExactSeries) -> ExactSeries {
        self.assert_same_order(rhs);
        ExactSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &ExactSeries {
    type Output = ExactSeries;

    fn neg(self) -> ExactSeries {
        ExactSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &ExactSeries {
    type Output = ExactSeries;

    fn mul(self, rhs: &ExactSeries) -> ExactSeries {
        self.assert_same_order(rhs);
        let order = self.order();
        let mut out = vec![ExactRat::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ExactSeries { coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::int::{binomial_general, factorial, rat};
    use proptest::prelude::*;

    fn s(c: &[(i64, i64)], order: usize) -> ExactSeries {
        ExactSeries::new(c.iter().map(|&(n, d)| rat(n, d)).collect(), order)
    }

    #[test]
    fn exp_examples() {
        assert_eq!(
            ExactSeries::linear(rat(1, 1), 3).exp().unwrap(),
            s(&[(1, 1), (1, 1), (1, 2), (1, 6)], 3)
        );
        assert_eq!(ExactSeries::zero(4).exp().unwrap(), ExactSeries::one(4));
        assert_eq!(
            ExactSeries::linear(rat(2, 1), 2).exp().unwrap(),
            s(&[(1, 1), (2, 1), (2, 1)], 2)
        );
    }

    #[test]
    fn exp_of_linear_matches_term_by_term_expansion() {
        // e^{cx} has coefficients c^n / n!
        let c = rat(-3, 2);
        let got = ExactSeries::linear(c.clone(), 10).exp().unwrap();
        for n in 0..=10u32 {
            let want = crate::kernel::int::rat_pow(&c, n) / rat_int(&factorial(n as u64));
            assert_eq!(got.coeff(n as usize), &want);
        }
    }

    #[test]
    fn exp_rejects_constant_term() {
        assert!(matches!(
            ExactSeries::one(2).exp(),
            Err(Error::ConstantTerm { expected: "0", .. })
        ));
    }

    #[test]
    fn binomial_pow_examples() {
        let geometric = s(&[(1, 1), (-1, 1)], 3).binomial_pow(&rat(-1, 1)).unwrap();
        assert_eq!(geometric, s(&[(1, 1), (1, 1), (1, 1), (1, 1)], 3));
        let half = s(&[(1, 1), (-2, 1)], 2).binomial_pow(&rat(-1, 2)).unwrap();
        assert_eq!(half, s(&[(1, 1), (1, 1), (3, 2)], 2));
        let zero = s(&[(1, 1), (5, 3), (7, 1)], 4)
            .binomial_pow(&rat(0, 1))
            .unwrap();
        assert_eq!(zero, ExactSeries::one(4));
        assert!(s(&[(2, 1)], 2).binomial_pow(&rat(1, 2)).is_err());
    }

    #[test]
    fn binomial_pow_matches_binomial_series() {
        // (1 + c x)^alpha = sum_k C(alpha, k) c^k x^k, with C(alpha,k) built
        // from the falling factorial of a rational top.
        let alpha = rat(-1, 2);
        let c = rat(-2, 1);
        let order = 8;
        let got = s(&[(1, 1), (-2, 1)], order).binomial_pow(&alpha).unwrap();
        let mut gen_binom = ExactRat::one();
        for k in 0..=order {
            if k > 0 {
                gen_binom = gen_binom * (&alpha - rat(k as i64 - 1, 1)) / rat(k as i64, 1);
            }
            let want = &gen_binom * crate::kernel::int::rat_pow(&c, k as u32);
            assert_eq!(got.coeff(k), &want, "k = {k}");
        }
        // integer exponents reduce to ordinary binomials
        let cube = s(&[(1, 1), (1, 1)], 5).binomial_pow(&rat(3, 1)).unwrap();
        for k in 0..=5 {
            assert_eq!(
                cube.coeff(k),
                &rat_int(&binomial_general(&3.into(), k as i64))
            );
        }
    }

    fn small_series(order: usize, zero_constant: bool) -> impl Strategy<Value = ExactSeries> {
        proptest::collection::vec((-6i64..6, 1i64..5), order + 1).prop_map(move |v| {
            let mut coeffs: Vec<ExactRat> = v.into_iter().map(|(n, d)| rat(n, d)).collect();
            if zero_constant {
                coeffs[0] = ExactRat::zero();
            } else {
                coeffs[0] = ExactRat::one();
            }
            ExactSeries::new(coeffs, order)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn exp_is_a_homomorphism(u in small_series(6, true), v in small_series(6, true)) {
            let lhs = (&u + &v).exp().unwrap();
            let rhs = &u.exp().unwrap() * &v.exp().unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn integer_binomial_pow_is_repeated_product(u in small_series(6, false), p in 0u32..5) {
            let lhs = u.binomial_pow(&rat(p as i64, 1)).unwrap();
            prop_assert_eq!(lhs, u.pow(p));
        }
    }
}
