//! Text front end for boson operator expressions.
//!
//! `ad`, `a^dag` and `a†` all denote the creation operator; `a` is the
//! annihilation operator. Numbers may be integers, fractions `p/q` or
//! decimals.

mod lexer;
mod lower;
mod parser;

use std::fmt::Write;

use num_traits::Signed;

pub use lexer::{tokenize, Token, TokenKind};
pub use lower::{lower, MAX_LOWERED_TERMS};
pub use parser::{parse, Ast};

use crate::boson::{Generator, OperatorWord, WordCap};
use crate::error::Result;
use crate::kernel::int::ExactRat;
use crate::stirling::OrderSignature;

pub fn parse_expression(src: &str) -> Result<Ast> {
    parse(&tokenize(src)?)
}

/// Parses and expands `src` into weighted words.
pub fn parse_terms(src: &str, cap: WordCap) -> Result<Vec<(ExactRat, OperatorWord)>> {
    lower(&parse_expression(src)?, cap)
}

/// Renders weighted words so that [`parse_terms`] gives them back unchanged,
/// e.g. `2 ad a - 1/2 a ad + 1`.
pub fn format_terms(terms: &[(ExactRat, OperatorWord)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, w)) in terms.iter().enumerate() {
        let sign = if c.is_negative() { "-" } else { "+" };
        match (i, c.is_negative()) {
            (0, false) => {}
            (0, true) => out.push_str("- "),
            _ => write!(out, " {sign} ").unwrap(),
        }
        write!(out, "{}", c.abs()).unwrap();
        if !w.is_empty() {
            write!(out, " {w}").unwrap();
        }
    }
    out
}

fn generator_power(ast: &Ast, g: Generator) -> Option<u32> {
    match ast {
        Ast::Atom(x) if *x == g => Some(1),
        Ast::Power(b, e) if matches!(**b, Ast::Atom(x) if x == g) => Some(*e),
        _ => None,
    }
}

/// Recognizes `((a†)^r a^s)^n` with `r, s, n >= 1`.
pub fn signature_power(ast: &Ast) -> Option<(OrderSignature, u32)> {
    let (inner, n) = match ast {
        Ast::Power(b, n) => (&**b, *n),
        other => (other, 1),
    };
    let Ast::Product(fs) = inner else {
        return None;
    };
    if fs.len() != 2 || n == 0 {
        return None;
    }
    let r = generator_power(&fs[0], Generator::Create)?;
    let s = generator_power(&fs[1], Generator::Annihilate)?;
    OrderSignature::new(r, s).ok().map(|sig| (sig, n))
}
