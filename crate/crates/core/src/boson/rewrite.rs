//! Brute-force normal ordering by commutator rewriting.
//!
//! The leftmost adjacent `a a†` is replaced by `a† a + 1` until no such pair
//! remains. Identical intermediate words are merged each round. This is slow
//! on purpose: it uses nothing but `[a, a†] = 1` and serves as the reference
//! the coefficient formulas are checked against.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Generator, NormalPolynomial, OperatorWord, WordCap};
use crate::error::Result;
use crate::kernel::int::{rat_int, ExactRat};

fn leftmost_inversion(word: &[Generator]) -> Option<usize> {
    word.windows(2)
        .position(|w| w[0] == Generator::Annihilate && w[1] == Generator::Create)
}

fn expand(word: &OperatorWord) -> HashMap<(u32, u32), BigInt> {
    let mut done: HashMap<(u32, u32), BigInt> = HashMap::new();
    let mut pending: HashMap<Vec<Generator>, BigInt> = HashMap::new();
    pending.insert(word.0.clone(), BigInt::one());
    while !pending.is_empty() {
        let mut next: HashMap<Vec<Generator>, BigInt> = HashMap::with_capacity(pending.len() * 2);
        for (w, c) in pending.drain() {
            match leftmost_inversion(&w) {
                None => {
                    let creates = w.iter().filter(|&&g| g == Generator::Create).count() as u32;
                    let annihilates = w.len() as u32 - creates;
                    *done
                        .entry((creates, annihilates))
                        .or_insert_with(BigInt::zero) += c;
                }
                Some(i) => {
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    *next.entry(swapped).or_insert_with(BigInt::zero) += &c;
                    let mut contracted = w;
                    contracted.drain(i..i + 2);
                    *next.entry(contracted).or_insert_with(BigInt::zero) += c;
                }
            }
        }
        pending = next;
    }
    done
}

/// Normal form of a single word.
pub fn normal_order_word(word: &OperatorWord, cap: WordCap) -> Result<NormalPolynomial> {
    normal_order_terms(&[(ExactRat::one(), word.clone())], cap)
}

/// Normal form of a weighted sum of words.
pub fn normal_order_terms(
    terms: &[(ExactRat, OperatorWord)],
    cap: WordCap,
) -> Result<NormalPolynomial> {
    let mut merged: HashMap<&OperatorWord, ExactRat> = HashMap::new();
    for (c, w) in terms {
        cap.check(w.len())?;
        *merged.entry(w).or_insert_with(ExactRat::zero) += c;
    }
    let mut out = NormalPolynomial::zero();
    for (w, c) in merged {
        if c.is_zero() {
            continue;
        }
        for ((i, j), v) in expand(w) {
            out.add_term(i, j, &c * rat_int(&v));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::kernel::int::rat;
    use Generator::{Annihilate as A, Create as C};

    fn poly(entries: &[(u32, u32, i64)]) -> NormalPolynomial {
        let mut p = NormalPolynomial::zero();
        for &(i, j, c) in entries {
            p.add_term(i, j, rat(c, 1));
        }
        p
    }

    #[test]
    fn single_commutation() {
        let got = normal_order_word(&OperatorWord(vec![A, C]), WordCap::DEFAULT).unwrap();
        assert_eq!(got, poly(&[(0, 0, 1), (1, 1, 1)]));
    }

    #[test]
    fn number_operator_squared() {
        let got = normal_order_word(&OperatorWord(vec![C, A, C, A]), WordCap::DEFAULT).unwrap();
        assert_eq!(got, poly(&[(1, 1, 1), (2, 2, 1)]));
    }

    #[test]
    fn two_one_squared() {
        let w = OperatorWord(vec![C, C, A, C, C, A]);
        let got = normal_order_word(&w, WordCap::DEFAULT).unwrap();
        assert_eq!(got, poly(&[(3, 1, 2), (4, 2, 1)]));
    }

    #[test]
    fn normal_words_are_fixed_points() {
        let w = OperatorWord::normal_monomial(3, 5);
        assert_eq!(
            normal_order_word(&w, WordCap::DEFAULT).unwrap(),
            poly(&[(3, 5, 1)])
        );
        assert_eq!(
            normal_order_word(&OperatorWord::identity(), WordCap::DEFAULT).unwrap(),
            NormalPolynomial::identity()
        );
    }

    #[test]
    fn weighted_terms_cancel() {
        let w = OperatorWord(vec![A, C]);
        let got = normal_order_terms(&[(rat(2, 1), w.clone()), (rat(-2, 1), w)], WordCap::DEFAULT)
            .unwrap();
        assert!(got.is_zero());
    }

    #[test]
    fn cap_is_enforced() {
        let w = OperatorWord(vec![A; 5]);
        assert_eq!(
            normal_order_word(&w, WordCap(4)),
            Err(Error::WordCap { len: 5, cap: 4 })
        );
    }
}
