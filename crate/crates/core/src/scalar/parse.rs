//! Recursive-descent reader for polynomial expressions.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := uint | uint '/' uint | ident | '(' expr ')' | '-' atom
//! ident  := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Whitespace is insignificant. Unary minus applies to the atom that follows
//! it, so `-x^2` reads as `(-x)^2`.

use num_bigint::BigInt;
use thiserror::Error;

use super::{PolyScalar, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("negative exponent at offset {position}")]
    NegativeExponent { position: usize },
    #[error("zero denominator at offset {position}")]
    ZeroDenominator { position: usize },
    #[error("exponent too large at offset {position}")]
    ExponentTooLarge { position: usize },
}

/// Parses an expression into canonical form.
pub fn parse_expr(text: &str) -> Result<PolyScalar, ParseError> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0 };
    let value = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.expected("operator or end of input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expected(&self, what: &str) -> ParseError {
        ParseError::Syntax { position: self.pos, expected: what.to_string() }
    }

    fn expr(&mut self) -> Result<PolyScalar, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                let rhs = self.term()?;
                acc = acc + rhs;
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                acc = acc - rhs;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<PolyScalar, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let rhs = self.factor()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PolyScalar, ParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        if self.peek() == Some(b'-') {
            return Err(ParseError::NegativeExponent { position: self.pos });
        }
        let start = self.pos;
        let digits = self.uint().ok_or_else(|| self.expected("exponent"))?;
        let exp: u32 = digits
            .try_into()
            .map_err(|_| ParseError::ExponentTooLarge { position: start })?;
        Ok(base.pow(exp))
    }

    fn atom(&mut self) -> Result<PolyScalar, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.atom()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.expected("')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let numerator = self.uint().expect("digit present");
                if !self.eat(b'/') {
                    return Ok(PolyScalar::constant(Rational::from(numerator)));
                }
                let at = self.pos;
                let denominator = self.uint().ok_or_else(|| self.expected("denominator"))?;
                let value = Rational::new(numerator, denominator)
                    .ok_or(ParseError::ZeroDenominator { position: at })?;
                Ok(PolyScalar::constant(value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .src
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(PolyScalar::var(name))
            }
            _ => Err(self.expected("number, identifier, '(' or '-'")),
        }
    }

    fn uint(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        digits.parse().ok()
    }
}

impl std::str::FromStr for PolyScalar {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expr(s)
    }
}
