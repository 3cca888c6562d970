use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::kernel::int::ExactRat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    /// `a`
    Annih,
    /// `ad`, `a^dag` or `a†`
    Create,
    Int(BigInt),
    /// `p/q` or a decimal literal such as `0.25`
    Rat(ExactRat),
    Caret,
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    End,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Annih => "'a'".into(),
            TokenKind::Create => "'ad'".into(),
            TokenKind::Int(v) => format!("integer {v}"),
            TokenKind::Rat(v) => format!("number {v}"),
            TokenKind::Caret => "'^'".into(),
            TokenKind::Plus => "'+'".into(),
            TokenKind::Minus => "'-'".into(),
            TokenKind::Star => "'*'".into(),
            TokenKind::LParen => "'('".into(),
            TokenKind::RParen => "')'".into(),
            TokenKind::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    /// Byte offset of the first character.
    pub position: usize,
}

fn digits_end(bytes: &[u8], start: usize) -> usize {
    let mut i = start;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    i
}

/// Splits `src` into tokens; whitespace is ignored. The stream ends with `End`.
pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = src[i..].chars().next().expect("char boundary");
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        let start = i;
        let kind = match c {
            '^' => {
                i += 1;
                TokenKind::Caret
            }
            '+' => {
                i += 1;
                TokenKind::Plus
            }
            '-' => {
                i += 1;
                TokenKind::Minus
            }
            '*' => {
                i += 1;
                TokenKind::Star
            }
            '(' => {
                i += 1;
                TokenKind::LParen
            }
            ')' => {
                i += 1;
                TokenKind::RParen
            }
            'a' => {
                let rest = &src[i + 1..];
                if rest.starts_with("^dag") {
                    i += 5;
                    TokenKind::Create
                } else if rest.starts_with('d') {
                    i += 2;
                    TokenKind::Create
                } else if rest.starts_with('†') {
                    i += 1 + '†'.len_utf8();
                    TokenKind::Create
                } else {
                    i += 1;
                    TokenKind::Annih
                }
            }
            '0'..='9' => lex_number(src, &mut i)?,
            other => {
                return Err(Error::Lex {
                    offset: i,
                    found: other,
                })
            }
        };
        out.push(Token {
            kind,
            text: src[start..i].to_string(),
            position: start,
        });
    }
    out.push(Token {
        kind: TokenKind::End,
        text: String::new(),
        position: src.len(),
    });
    Ok(out)
}

fn lex_number(src: &str, i: &mut usize) -> Result<TokenKind> {
    let bytes = src.as_bytes();
    let start = *i;
    let int_end = digits_end(bytes, start);
    let whole: BigInt = src[start..int_end].parse().expect("digits");
    let next_is_digit = |at: usize| bytes.get(at).is_some_and(u8::is_ascii_digit);
    match bytes.get(int_end) {
        Some(b'/') if next_is_digit(int_end + 1) => {
            let den_end = digits_end(bytes, int_end + 1);
            let den: BigInt = src[int_end + 1..den_end].parse().expect("digits");
            if den.is_zero() {
                return Err(Error::Parse {
                    offset: int_end + 1,
                    expected: "nonzero denominator".into(),
                    found: "0".into(),
                });
            }
            *i = den_end;
            Ok(TokenKind::Rat(BigRational::new(whole, den)))
        }
        Some(b'.') if next_is_digit(int_end + 1) => {
            let frac_end = digits_end(bytes, int_end + 1);
            let frac = &src[int_end + 1..frac_end];
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let num = whole * &scale + frac.parse::<BigInt>().expect("digits");
            *i = frac_end;
            Ok(TokenKind::Rat(BigRational::new(num, scale)))
        }
        _ => {
            *i = int_end;
            Ok(TokenKind::Int(whole))
        }
    }
}
