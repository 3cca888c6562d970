//! Recursive-descent parser for operator expressions.
//!
//! ```text
//! Sum     := ('+' | '-')? Product (('+' | '-') Product)*
//! Product := Factor ('*'? Factor)*
//! Factor  := (Scalar | Atom | '(' Sum ')') ('^' INT)?
//! ```
//!
//! Juxtaposition is the (non-commutative) operator product.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive};

use super::lexer::{Token, TokenKind};
use crate::boson::Generator;
use crate::error::{Error, Result};
use crate::kernel::int::{rat_int, ExactRat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ast {
    Sum(Vec<Ast>),
    Product(Vec<Ast>),
    Power(Box<Ast>, u32),
    Atom(Generator),
    Scalar(ExactRat),
}

fn is_minus_one(ast: &Ast) -> bool {
    matches!(ast, Ast::Scalar(c) if *c == -ExactRat::one())
}

fn write_factors(f: &mut fmt::Formatter<'_>, factors: &[Ast]) -> fmt::Result {
    for (i, x) in factors.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write_factor(f, x)?;
    }
    Ok(())
}

fn write_factor(f: &mut fmt::Formatter<'_>, ast: &Ast) -> fmt::Result {
    match ast {
        Ast::Scalar(c) if c.is_negative() => write!(f, "(- {})", c.abs()),
        Ast::Scalar(c) => write!(f, "{c}"),
        Ast::Atom(g) => write!(f, "{g}"),
        Ast::Power(base, e) => {
            match **base {
                Ast::Atom(_) => write_factor(f, base)?,
                Ast::Scalar(ref c) if !c.is_negative() => write_factor(f, base)?,
                _ => write!(f, "({base})")?,
            }
            write!(f, "^{e}")
        }
        Ast::Sum(_) | Ast::Product(_) => write!(f, "({ast})"),
    }
}

/// Prints in the input grammar; parsing the output gives back the same tree
/// for any tree produced by [`parse`].
impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = match self {
            Ast::Sum(ts) => ts.as_slice(),
            other => std::slice::from_ref(other),
        };
        for (i, t) in terms.iter().enumerate() {
            match t {
                Ast::Product(fs) if fs.len() >= 2 && is_minus_one(&fs[0]) => {
                    f.write_str(if i == 0 { "- " } else { " - " })?;
                    write_factors(f, &fs[1..])?;
                }
                other => {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    match other {
                        Ast::Product(fs) => write_factors(f, fs)?,
                        x => write_factor(f, x)?,
                    }
                }
            }
        }
        Ok(())
    }
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
}

impl<'t> Parser<'t> {
    fn peek(&self) -> &'t Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> &'t Token {
        let t = &self.tokens[self.pos];
        if t.kind != TokenKind::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> Error {
        let t = self.peek();
        Error::Parse {
            offset: t.position,
            expected: expected.to_string(),
            found: t.kind.describe(),
        }
    }

    fn starts_factor(kind: &TokenKind) -> bool {
        matches!(
            kind,
            TokenKind::Int(_)
                | TokenKind::Rat(_)
                | TokenKind::Annih
                | TokenKind::Create
                | TokenKind::LParen
        )
    }

    fn sum(&mut self) -> Result<Ast> {
        let mut terms = Vec::new();
        let mut negate = match self.peek().kind {
            TokenKind::Minus => {
                self.bump();
                true
            }
            TokenKind::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let p = self.product()?;
            terms.push(if negate { negated(p) } else { p });
            match self.peek().kind {
                TokenKind::Plus => negate = false,
                TokenKind::Minus => negate = true,
                _ => break,
            }
            self.bump();
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Ast::Sum(terms)
        })
    }

    fn product(&mut self) -> Result<Ast> {
        let mut factors = vec![self.factor()?];
        loop {
            let kind = &self.peek().kind;
            if *kind == TokenKind::Star {
                self.bump();
                factors.push(self.factor()?);
            } else if Self::starts_factor(kind) {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Ast::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<Ast> {
        let t = self.peek();
        let base = match &t.kind {
            TokenKind::Int(v) => {
                self.bump();
                Ast::Scalar(rat_int(v))
            }
            TokenKind::Rat(v) => {
                self.bump();
                Ast::Scalar(v.clone())
            }
            TokenKind::Annih => {
                self.bump();
                Ast::Atom(Generator::Annihilate)
            }
            TokenKind::Create => {
                self.bump();
                Ast::Atom(Generator::Create)
            }
            TokenKind::LParen => {
                self.bump();
                let inner = self.sum()?;
                if self.peek().kind != TokenKind::RParen {
                    return Err(self.error("')'"));
                }
                self.bump();
                inner
            }
            _ => return Err(self.error("a number, 'a', 'ad' or '('")),
        };
        if self.peek().kind != TokenKind::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.peek();
        match &t.kind {
            TokenKind::Int(v) => {
                let exp = v.to_u32().ok_or_else(|| Error::Parse {
                    offset: t.position,
                    expected: "an exponent that fits in 32 bits".into(),
                    found: v.to_string(),
                })?;
                self.bump();
                Ok(Ast::Power(Box::new(base), exp))
            }
            TokenKind::Minus => Err(self.error("non-negative integer exponent after '^'")),
            _ => Err(self.error("integer after '^'")),
        }
    }
}

fn negated(ast: Ast) -> Ast {
    let minus_one = Ast::Scalar(-ExactRat::one());
    match ast {
        Ast::Product(mut fs) => {
            fs.insert(0, minus_one);
            Ast::Product(fs)
        }
        other => Ast::Product(vec![minus_one, other]),
    }
}

/// Parses a token stream produced by [`super::tokenize`].
pub fn parse(tokens: &[Token]) -> Result<Ast> {
    if tokens.last().map(|t| &t.kind) != Some(&TokenKind::End) {
        return Err(Error::InvalidArgument(
            "token stream must end with End".into(),
        ));
    }
    let mut p = Parser { tokens, pos: 0 };
    let ast = p.sum()?;
    if p.peek().kind != TokenKind::End {
        return Err(p.error("'+', '-' or end of input"));
    }
    Ok(ast)
}
