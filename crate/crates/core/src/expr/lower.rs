use num_traits::One;

use super::parser::Ast;
use crate::boson::{OperatorWord, WordCap};
use crate::error::{Error, Result};
use crate::kernel::int::ExactRat;

/// Upper bound on the number of weighted words produced by one expansion.
pub const MAX_LOWERED_TERMS: usize = 1 << 18;

fn max_len(ast: &Ast) -> u128 {
    match ast {
        Ast::Sum(ts) => ts.iter().map(max_len).max().unwrap_or(0),
        Ast::Product(fs) => fs.iter().map(max_len).fold(0u128, u128::saturating_add),
        Ast::Power(b, e) => max_len(b).saturating_mul(*e as u128),
        Ast::Atom(_) => 1,
        Ast::Scalar(_) => 0,
    }
}

fn term_count(ast: &Ast) -> u128 {
    match ast {
        Ast::Sum(ts) => ts.iter().map(term_count).fold(0u128, u128::saturating_add),
        Ast::Product(fs) => fs.iter().map(term_count).fold(1u128, u128::saturating_mul),
        Ast::Power(b, e) => {
            let base = term_count(b);
            (0..*e).fold(1u128, |acc, _| acc.saturating_mul(base))
        }
        Ast::Atom(_) | Ast::Scalar(_) => 1,
    }
}

type Terms = Vec<(ExactRat, OperatorWord)>;

fn product(lhs: &Terms, rhs: &Terms) -> Terms {
    let mut out = Vec::with_capacity(lhs.len() * rhs.len());
    for (c1, w1) in lhs {
        for (c2, w2) in rhs {
            out.push((c1 * c2, w1.concat(w2)));
        }
    }
    out
}

fn expand(ast: &Ast) -> Terms {
    match ast {
        Ast::Scalar(c) => vec![(c.clone(), OperatorWord::identity())],
        Ast::Atom(g) => vec![(ExactRat::one(), OperatorWord(vec![*g]))],
        Ast::Sum(ts) => ts.iter().flat_map(expand).collect(),
        Ast::Product(fs) => fs.iter().fold(
            vec![(ExactRat::one(), OperatorWord::identity())],
            |acc, f| product(&acc, &expand(f)),
        ),
        Ast::Power(b, e) => {
            let base = expand(b);
            (0..*e).fold(
                vec![(ExactRat::one(), OperatorWord::identity())],
                |acc, _| product(&acc, &base),
            )
        }
    }
}

/// Expands `ast` into a list of weighted words without reordering or
/// merging anything. Both the word length and the number of words are
/// bounded before any expansion takes place.
pub fn lower(ast: &Ast, cap: WordCap) -> Result<Vec<(ExactRat, OperatorWord)>> {
    let len = max_len(ast);
    cap.check(usize::try_from(len).unwrap_or(usize::MAX))?;
    let count = term_count(ast);
    if count > MAX_LOWERED_TERMS as u128 {
        return Err(Error::TermCap {
            terms: count,
            cap: MAX_LOWERED_TERMS,
        });
    }
    Ok(expand(ast))
}
