//! Polynomial expressions: a small recursive-descent parser and the
//! canonical formatter it inverts.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*')? factor)*     '*' may be omitted before 'x' or '('
//! unary   := ('+' | '-') unary | power
//! power   := atom ('^' integer)?
//! atom    := number | 'x' | '(' expr ')'
//! number  := integer ('/' integer)?
//! ```
//!
//! Division only appears inside numeric literals, and a literal `a/b` is
//! atomic: `3/2^2` is `(3/2)^2`.

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactalg::{ParseRatError, Poly, Rat};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at offset {offset}")]
pub struct ParseError {
    /// Byte offset into the source.
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("unexpected `{0}`")]
    UnexpectedToken(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("negative exponent")]
    NegativeExponent,
    #[error("exponent must be a nonnegative integer")]
    NonIntegerExponent,
    #[error("exponent exceeds {MAX_EXPONENT}")]
    ExponentTooLarge,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division is only allowed inside numeric literals")]
    Division,
    #[error("invalid coefficient: {0}")]
    Coefficient(ParseRatError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Int(n) => n.to_string(),
            Tok::X => "x".into(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Slash => "/".into(),
            Tok::Caret => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(src[start..i].parse().expect("digits"))));
                continue;
            }
            'x' | 'X' => Tok::X,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                let ch = src[start..].chars().next().expect("in bounds");
                let after_exponent =
                    matches!(out.as_slice(), [.., (_, Tok::Caret), (_, Tok::Int(_))]);
                let kind = if ch == '.' && after_exponent {
                    ParseErrorKind::NonIntegerExponent
                } else {
                    ParseErrorKind::UnexpectedChar(ch)
                };
                return Err(ParseError {
                    offset: start,
                    kind,
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            kind,
        })
    }

    fn unexpected<T>(&self) -> Result<T, ParseError> {
        match self.peek() {
            None => self.err(ParseErrorKind::UnexpectedEnd),
            Some(t) => self.err(ParseErrorKind::UnexpectedToken(t.text())),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::X) | Some(Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Slash) => return self.err(ParseErrorKind::Division),
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        match self.peek() {
            Some(Tok::Minus) => self.err(ParseErrorKind::NegativeExponent),
            Some(Tok::Int(n)) => {
                let n = n.clone();
                let at = self.offset();
                self.bump();
                if self.peek() == Some(&Tok::Slash) {
                    return self.err(ParseErrorKind::NonIntegerExponent);
                }
                let e = u32::try_from(&n)
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or(ParseError {
                        offset: at,
                        kind: ParseErrorKind::ExponentTooLarge,
                    })?;
                Ok(base.pow(e))
            }
            Some(_) => self.err(ParseErrorKind::NonIntegerExponent),
            None => self.unexpected(),
        }
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(Tok::X) => {
                self.bump();
                Ok(Poly::x())
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.unexpected();
                }
                self.bump();
                Ok(inner)
            }
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.bump();
                if self.peek() != Some(&Tok::Slash) {
                    return Ok(Poly::constant(Rat::from(n)));
                }
                self.bump();
                match self.peek() {
                    Some(Tok::Int(d)) => {
                        let d = d.clone();
                        let r = Rat::new(n, d);
                        match r {
                            Some(r) => {
                                self.bump();
                                Ok(Poly::constant(r))
                            }
                            None => self.err(ParseErrorKind::ZeroDenominator),
                        }
                    }
                    _ => self.err(ParseErrorKind::Division),
                }
            }
            _ => self.unexpected(),
        }
    }
}

/// Parses an expression in `x` with rational coefficients.
pub fn parse_poly(src: &str) -> Result<Poly, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    let poly = p.expr()?;
    if p.peek().is_some() {
        return p.unexpected();
    }
    Ok(poly)
}

/// Parses a comma-separated list of ascending coefficients, e.g. `-2,0,1`.
pub fn parse_coeffs(src: &str) -> Result<Poly, ParseError> {
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for part in src.split(',') {
        let r = part.parse::<Rat>().map_err(|e| ParseError {
            offset: offset + (part.len() - part.trim_start().len()),
            kind: ParseErrorKind::Coefficient(e),
        })?;
        coeffs.push(r);
        offset += part.len() + 1;
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// Descending-power rendering, e.g. `x^2 - 2` or `1/2*x + 1/3`. Inverse of
/// [`parse_poly`].
pub fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let a = c.abs();
        let var = match k {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        };
        if k == 0 {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&var);
        } else {
            out.push_str(&format!("{a}*{var}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn parse_examples() {
        assert_eq!(parse_poly("x^2 - 2").unwrap(), Poly::from_i64s(&[-2, 0, 1]));
        assert_eq!(
            parse_poly("(x+2)*x^2*(x-2)").unwrap(),
            Poly::from_i64s(&[0, 0, -4, 0, 1])
        );
        assert_eq!(
            parse_poly("1/2*x + 1/3").unwrap(),
            Poly::from_coeffs(vec![rat(1, 3), rat(1, 2)])
        );
    }

    #[test]
    fn parse_conveniences() {
        assert_eq!(parse_poly("3x^2-2x").unwrap(), Poly::from_i64s(&[0, -2, 3]));
        assert_eq!(
            parse_poly(" - x ^ 2 ").unwrap(),
            Poly::from_i64s(&[0, 0, -1])
        );
        assert_eq!(parse_poly("2(x+1)").unwrap(), Poly::from_i64s(&[2, 2]));
        assert_eq!(parse_poly("3/2^2").unwrap(), Poly::constant(rat(9, 4)));
        assert_eq!(parse_poly("x^0").unwrap(), Poly::one());
        assert_eq!(parse_poly("0*x").unwrap(), Poly::zero());
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let e = parse_poly("x^-2").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NegativeExponent);
        assert_eq!(e.offset, 2);
        assert_eq!(
            parse_poly("x^1/2").unwrap_err().kind,
            ParseErrorKind::NonIntegerExponent
        );
        assert_eq!(
            parse_poly("x^(2)").unwrap_err().kind,
            ParseErrorKind::NonIntegerExponent
        );
        assert_eq!(
            parse_poly("x^2.5").unwrap_err().kind,
            ParseErrorKind::NonIntegerExponent
        );
        let e = parse_poly("x + y").unwrap_err();
        assert_eq!(
            e,
            ParseError {
                offset: 4,
                kind: ParseErrorKind::UnexpectedChar('y')
            }
        );
        assert_eq!(
            parse_poly("x/2").unwrap_err().kind,
            ParseErrorKind::Division
        );
        assert_eq!(
            parse_poly("1/0").unwrap_err().kind,
            ParseErrorKind::ZeroDenominator
        );
        assert_eq!(
            parse_poly("(x+1").unwrap_err().kind,
            ParseErrorKind::UnexpectedEnd
        );
        assert_eq!(
            parse_poly("").unwrap_err().kind,
            ParseErrorKind::UnexpectedEnd
        );
        assert_eq!(
            parse_poly("x^100001").unwrap_err().kind,
            ParseErrorKind::ExponentTooLarge
        );
        assert!(matches!(
            parse_poly("x )").unwrap_err().kind,
            ParseErrorKind::UnexpectedToken(_)
        ));
    }

    #[test]
    fn coefficient_lists() {
        assert_eq!(
            parse_coeffs("-2,0,1").unwrap(),
            Poly::from_i64s(&[-2, 0, 1])
        );
        assert_eq!(
            parse_coeffs(" 1/3 , 1/2 ").unwrap(),
            Poly::from_coeffs(vec![rat(1, 3), rat(1, 2)])
        );
        let e = parse_coeffs("1,x").unwrap_err();
        assert_eq!(e.offset, 2);
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_poly(&Poly::from_i64s(&[-2, 0, 1])), "x^2 - 2");
        assert_eq!(format_poly(&Poly::zero()), "0");
        assert_eq!(
            format_poly(&Poly::from_coeffs(vec![rat(1, 3), rat(1, 2)])),
            "1/2*x + 1/3"
        );
        assert_eq!(format_poly(&Poly::from_i64s(&[0, -1, 0, -3])), "-3*x^3 - x");
        assert_eq!(
            format_poly(&Poly::from_coeffs(vec![rat(-5, 7), rat(-1, 2)])),
            "-1/2*x - 5/7"
        );
    }
}
