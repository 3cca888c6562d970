//! Single-mode boson algebra with `[a, a†] = 1`.

mod coherent;
mod normal;
mod power;
mod rewrite;

use std::fmt;

pub use coherent::{coherent_expectation, coherent_expectation_exact, CoherentPoint};
pub use normal::NormalPolynomial;
pub use power::{antinormal_power, normal_order_power, taylor_normal_order, TaylorSpec};
pub use rewrite::{normal_order_terms, normal_order_word};

use crate::error::{Error, Result};
use crate::stirling::OrderSignature;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `a`
    Annihilate,
    /// `a†`
    Create,
}

impl Generator {
    pub fn adjoint(self) -> Self {
        match self {
            Generator::Annihilate => Generator::Create,
            Generator::Create => Generator::Annihilate,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Annihilate => f.write_str("a"),
            Generator::Create => f.write_str("ad"),
        }
    }
}

/// Maximum word length accepted by the rewriting oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordCap(pub usize);

impl WordCap {
    pub const DEFAULT: WordCap = WordCap(24);

    pub fn check(self, len: usize) -> Result<()> {
        if len > self.0 {
            Err(Error::WordCap { len, cap: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for WordCap {
    fn default() -> Self {
        WordCap::DEFAULT
    }
}

/// A product of generators, read left to right. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OperatorWord(pub Vec<Generator>);

impl OperatorWord {
    pub fn identity() -> Self {
        OperatorWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    /// `(a†)^i a^j`
    pub fn normal_monomial(i: u32, j: u32) -> Self {
        let mut w = vec![Generator::Create; i as usize];
        w.extend(std::iter::repeat_n(Generator::Annihilate, j as usize));
        OperatorWord(w)
    }

    /// `a^j (a†)^i`
    pub fn antinormal_monomial(j: u32, i: u32) -> Self {
        let mut w = vec![Generator::Annihilate; j as usize];
        w.extend(std::iter::repeat_n(Generator::Create, i as usize));
        OperatorWord(w)
    }

    pub fn concat(&self, other: &OperatorWord) -> Self {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        OperatorWord(w)
    }

    pub fn repeat(&self, times: u32) -> Self {
        OperatorWord(self.0.repeat(times as usize))
    }

    /// Hermitian conjugate: reverse and swap `a <-> a†`.
    pub fn adjoint(&self) -> Self {
        OperatorWord(self.0.iter().rev().map(|g| g.adjoint()).collect())
    }

    /// True when every `a†` stands left of every `a`.
    pub fn is_normal(&self) -> bool {
        self.0
            .windows(2)
            .all(|w| !(w[0] == Generator::Annihilate && w[1] == Generator::Create))
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// The letters of `[(a†)^r a^s]^n`.
pub fn word_from_power(sig: OrderSignature, n: u32, cap: WordCap) -> Result<OperatorWord> {
    cap.check((n * (sig.r + sig.s)) as usize)?;
    Ok(OperatorWord::normal_monomial(sig.r, sig.s).repeat(n))
}

/// The letters of `[a^s (a†)^r]^n`.
pub fn antinormal_word_from_power(
    sig: OrderSignature,
    n: u32,
    cap: WordCap,
) -> Result<OperatorWord> {
    cap.check((n * (sig.r + sig.s)) as usize)?;
    Ok(OperatorWord::antinormal_monomial(sig.s, sig.r).repeat(n))
}
