use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Signed, Zero};

use super::OperatorWord;
use crate::kernel::int::{binomial, factorial, rat_int, ExactRat};

/// A normally ordered operator `sum c_ij (a†)^i a^j`.
///
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NormalPolynomial {
    terms: BTreeMap<(u32, u32), ExactRat>,
}

impl NormalPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::monomial(0, 0, ExactRat::one())
    }

    /// `c (a†)^i a^j`
    pub fn monomial(i: u32, j: u32, c: ExactRat) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: ExactRat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(ExactRat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> ExactRat {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(ExactRat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &ExactRat)> + '_ {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &ExactRat) -> Self {
        let mut out = Self::zero();
        for (&(i, j), v) in &self.terms {
            out.add_term(i, j, v * c);
        }
        out
    }

    /// Hermitian conjugate, assuming real coefficients.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), v) in &self.terms {
            out.add_term(j, i, v.clone());
        }
        out
    }

    /// The term list as `(coefficient, word)` pairs, `(a†)^i a^j` per term.
    pub fn to_words(&self) -> Vec<(ExactRat, OperatorWord)> {
        self.terms
            .iter()
            .map(|(&(i, j), c)| (c.clone(), OperatorWord::normal_monomial(i, j)))
            .collect()
    }
}

impl Add for &NormalPolynomial {
    type Output = NormalPolynomial;

    fn add(self, rhs: &NormalPolynomial) -> NormalPolynomial {
        let mut out = self.clone();
        for (&(i, j), v) in &rhs.terms {
            out.add_term(i, j, v.clone());
        }
        out
    }
}

impl Sub for &NormalPolynomial {
    type Output = NormalPolynomial;

    fn sub(self, rhs: &NormalPolynomial) -> NormalPolynomial {
        let mut out = self.clone();
        for (&(i, j), v) in &rhs.terms {
            out.add_term(i, j, -v);
        }
        out
    }
}

impl Mul for &NormalPolynomial {
    type Output = NormalPolynomial;

    /// Product of normal forms. The inner `a^j (a†)^k` is reordered with
    /// `a^j (a†)^k = sum_m m! C(j,m) C(k,m) (a†)^{k-m} a^{j-m}`.
    fn mul(self, rhs: &NormalPolynomial) -> NormalPolynomial {
        let mut out = NormalPolynomial::zero();
        for (&(i, j), x) in &self.terms {
            for (&(k, l), y) in &rhs.terms {
                let xy = x * y;
                for m in 0..=j.min(k) {
                    let weight = factorial(m as u64)
                        * binomial(j as u64, m as i64)
                        * binomial(k as u64, m as i64);
                    out.add_term(i + k - m, j + l - m, &xy * rat_int(&weight));
                }
            }
        }
        out
    }
}

impl fmt::Display for NormalPolynomial {
    /// Renders in the expression grammar, e.g. `1 + 3 ad^2 a^2 - 1/2 ad a`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (&(i, j), c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                parts.push(mag.to_string());
            }
            match i {
                0 => {}
                1 => parts.push("ad".into()),
                _ => parts.push(format!("ad^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("a".into()),
                _ => parts.push(format!("a^{j}")),
            }
            if negative && idx == 0 {
                f.write_str(" ")?;
            }
            f.write_str(&parts.join(" "))?;
        }
        Ok(())
    }
}
