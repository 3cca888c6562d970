//! Parsing of the `--z` argument: `1`, `2/3`, `-0.5`, `0.3+0.4i`, `-i`, `1e-3-2i`.

use bosonorder::expr::{tokenize, TokenKind};
use bosonorder::kernel::int::rat_int;
use bosonorder::kernel::ExactRat;
use bosonorder::{Error, Result};
use num_traits::{ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq)]
pub enum Real {
    Exact(ExactRat),
    Float(f64),
}

impl Real {
    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Real::Float(x) => *x,
        }
    }

    fn is_exact_zero(&self) -> bool {
        matches!(self, Real::Exact(q) if q.is_zero())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexArg {
    pub re: Real,
    pub im: Real,
}

impl ComplexArg {
    /// The exact real value, when the imaginary part is exactly zero and the
    /// real part was written as an integer, fraction or decimal.
    pub fn exact_real(&self) -> Option<&ExactRat> {
        match (&self.re, self.im.is_exact_zero()) {
            (Real::Exact(q), true) => Some(q),
            _ => None,
        }
    }
}

fn invalid(text: &str) -> Error {
    Error::InvalidArgument(format!("cannot read {text:?} as a complex number"))
}

fn parse_real(text: &str, whole: &str) -> Result<Real> {
    let (negative, body) = match text.as_bytes().first() {
        Some(b'-') => (true, &text[1..]),
        Some(b'+') => (false, &text[1..]),
        _ => (false, text),
    };
    if body.is_empty() {
        return Err(invalid(whole));
    }
    if let Ok(tokens) = tokenize(body) {
        let exact = match tokens.as_slice() {
            [t, end] if end.kind == TokenKind::End => match &t.kind {
                TokenKind::Int(v) => Some(rat_int(v)),
                TokenKind::Rat(q) => Some(q.clone()),
                _ => None,
            },
            _ => None,
        };
        if let Some(q) = exact {
            return Ok(Real::Exact(if negative { -q } else { q }));
        }
    }
    let x: f64 = body.parse().map_err(|_| invalid(whole))?;
    if !x.is_finite() {
        return Err(invalid(whole));
    }
    Ok(Real::Float(if negative { -x } else { x }))
}

pub fn parse_complex(src: &str) -> Result<ComplexArg> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(invalid(src));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(ComplexArg {
            re: parse_real(&s, src)?,
            im: Real::Exact(ExactRat::zero()),
        });
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (parse_real(&body[..i], src)?, &body[i..]),
        None => (Real::Exact(ExactRat::zero()), body),
    };
    let im = match im {
        "" | "+" => Real::Exact(rat_int(&1.into())),
        "-" => Real::Exact(rat_int(&(-1).into())),
        other => parse_real(other, src)?,
    };
    Ok(ComplexArg { re, im })
}

#[cfg(test)]
mod tests {
    use super::*;
    use bosonorder::kernel::rat;

    #[test]
    fn parses_forms() {
        let z = parse_complex("1").unwrap();
        assert_eq!(z.exact_real(), Some(&rat(1, 1)));
        let z = parse_complex("1+0i").unwrap();
        assert_eq!(z.exact_real(), Some(&rat(1, 1)));
        let z = parse_complex("-2/3").unwrap();
        assert_eq!(z.exact_real(), Some(&rat(-2, 3)));
        let z = parse_complex("0.3+0.4i").unwrap();
        assert_eq!(z.re, Real::Exact(rat(3, 10)));
        assert_eq!(z.im, Real::Exact(rat(2, 5)));
        assert_eq!(z.exact_real(), None);
        let z = parse_complex("-i").unwrap();
        assert_eq!(z.im, Real::Exact(rat(-1, 1)));
        let z = parse_complex("1e-3-2i").unwrap();
        assert_eq!(z.re, Real::Float(1e-3));
        assert_eq!(z.im, Real::Exact(rat(-2, 1)));
        for bad in ["", "x", "1+", "i+i", "inf", "1/0"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }
}
