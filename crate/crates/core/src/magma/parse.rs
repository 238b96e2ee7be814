//! Recursive-descent parser for the identity grammar.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::MagmaPoly;
use crate::scalar::Rational;

/// Syntax error at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Parses an identity such as `X^2*X^2 - 2*X^3 + X^2`.
pub fn parse_poly(text: &str) -> Result<MagmaPoly, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let poly = p.poly()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error_here(match p.src[p.pos] {
            b'*' => "products must be parenthesized: '*' is binary and nonassociative",
            b')' => "unbalanced ')'",
            _ => "unexpected character",
        }));
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error_here(&self, message: &str) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.error_here(&format!("expected '{}'", b as char)))
        }
    }

    fn poly(&mut self) -> Result<MagmaPoly, ParseError> {
        let mut acc = MagmaPoly::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -Rational::one()
            }
            Some(b'+') => {
                self.pos += 1;
                Rational::one()
            }
            _ => Rational::one(),
        };
        loop {
            let t = self.term()?;
            acc = acc.add(&t.scale(&sign));
            sign = match self.peek() {
                Some(b'+') => Rational::one(),
                Some(b'-') => -Rational::one(),
                _ => return Ok(acc),
            };
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<MagmaPoly, ParseError> {
        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let start = self.pos;
            let c = self.rational()?;
            if self.eat(b'*') {
                return Ok(self.factor()?.scale(&c));
            }
            if !c.is_zero() {
                return Err(ParseError {
                    position: start,
                    message: "nonzero constant terms are not polynomials in X".to_string(),
                });
            }
            return Ok(MagmaPoly::zero());
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<MagmaPoly, ParseError> {
        let a = self.atom()?;
        if !self.eat(b'*') {
            return Ok(a);
        }
        let b = self.atom()?;
        if self.peek() == Some(b'*') {
            return Err(self.error_here(
                "products must be parenthesized: '*' is binary and nonassociative",
            ));
        }
        Ok(a.mul(&b))
    }

    fn atom(&mut self) -> Result<MagmaPoly, ParseError> {
        match self.peek() {
            Some(b'X') => {
                self.pos += 1;
                if !self.eat(b'^') {
                    return Ok(MagmaPoly::x());
                }
                if self.eat(b'[') {
                    let k = self.exponent()?;
                    self.expect(b']')?;
                    Ok(MagmaPoly::plenary_power(k))
                } else {
                    let k = self.exponent()?;
                    Ok(MagmaPoly::principal_power(k))
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.poly()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(_) => Err(self.error_here("expected 'X' or '('")),
            None => Err(self.error_here("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error_here("expected a digit"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("ascii digits"))
    }

    fn exponent(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        let n = self.digits()?;
        match usize::try_from(&n) {
            Ok(k) if (1..=64).contains(&k) => Ok(k),
            _ => Err(ParseError {
                position: start,
                message: "exponent must be an integer between 1 and 64".to_string(),
            }),
        }
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let num = self.digits()?;
        // a '/' is only a fraction bar directly after the numerator
        if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(ParseError {
                    position: at,
                    message: "zero denominator".to_string(),
                });
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }
}
