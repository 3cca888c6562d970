use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use super::int::{falling_factorial_i64, rat_int, ExactRat};

/// Dense univariate polynomial with exact rational coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`. Trailing zeros are never stored,
/// so the zero polynomial has an empty coefficient list and degree -1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DensePoly {
    coeffs: Vec<ExactRat>,
}

impl DensePoly {
    pub fn new(mut coeffs: Vec<ExactRat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn constant(c: ExactRat) -> Self {
        Self::new(vec![c])
    }

    /// `c x^power`
    pub fn monomial(c: ExactRat, power: usize) -> Self {
        let mut coeffs = vec![ExactRat::zero(); power + 1];
        coeffs[power] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[ExactRat] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> ExactRat {
        self.coeffs
            .get(power)
            .cloned()
            .unwrap_or_else(ExactRat::zero)
    }

    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `s`-th derivative.
    pub fn derivative(&self, s: u32) -> Self {
        let s = s as usize;
        if self.coeffs.len() <= s {
            return Self::zero();
        }
        let coeffs = self.coeffs[s..]
            .iter()
            .enumerate()
            .map(|(i, c)| c * rat_int(&falling_factorial_i64((i + s) as i64, s as u32)))
            .collect();
        Self::new(coeffs)
    }

    /// Multiplies by `x^shift`.
    pub fn shift(&self, shift: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ExactRat::zero(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        DensePoly { coeffs }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &ExactRat) -> ExactRat {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRat::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::constant(ExactRat::one());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &DensePoly {
    type Output = DensePoly;

    fn add(self, rhs: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &DensePoly {
    type Output = DensePoly;

    fn sub(self, rhs: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &DensePoly {
    type Output = DensePoly;

    fn mul(self, rhs: &DensePoly) -> DensePoly {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![ExactRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        DensePoly::new(out)
    }
}
