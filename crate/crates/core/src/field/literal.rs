//! Text form of exact scalars.
//!
//! ```text
//! R    ::= TERM (("+" | "-") TERM)*
//! TERM ::= RAT | RAT "*sqrt(" UINT ")" | "sqrt(" UINT ")"
//! RAT  ::= ["-"] UINT ["/" UINT]
//! ```
//!
//! Whitespace is ignored. `1/2 + 3*sqrt(7)` and `1*sqrt(56)` are both valid;
//! radicands are folded to their squarefree part.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{FieldError, Rational, RealQuad};

struct Cursor<'a> {
    src: &'a str,
    bytes: Vec<u8>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        let bytes = src.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        Self { src, bytes, pos: 0 }
    }

    fn err(&self, reason: impl Into<String>) -> FieldError {
        FieldError::Parse { input: self.src.to_string(), reason: reason.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        if self.bytes[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn at_end(&self) -> bool {
        self.pos == self.bytes.len()
    }

    fn uint(&mut self) -> Result<BigInt, FieldError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(format!("expected digits at offset {start}")));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn rational(&mut self) -> Result<Rational, FieldError> {
        let negative = self.eat(b'-');
        let num = self.uint()?;
        let den = if self.eat(b'/') { self.uint()? } else { BigInt::one() };
        if den.is_zero() {
            return Err(self.err("zero denominator"));
        }
        let r = Rational::new(num, den);
        Ok(if negative { -r } else { r })
    }

    fn sqrt_arg(&mut self) -> Result<u64, FieldError> {
        let n = self.uint()?;
        if !self.eat(b')') {
            return Err(self.err("expected ')' after radicand"));
        }
        u64::try_from(n).map_err(|_| self.err("radicand too large"))
    }

    fn term(&mut self) -> Result<RealQuad, FieldError> {
        if self.eat_str("sqrt(") {
            return Ok(RealQuad::sqrt(self.sqrt_arg()?));
        }
        let negative_sqrt = self.bytes[self.pos..].starts_with(b"-sqrt(");
        if negative_sqrt {
            self.pos += "-sqrt(".len();
            return Ok(-RealQuad::sqrt(self.sqrt_arg()?));
        }
        let coeff = self.rational()?;
        if self.eat_str("*sqrt(") {
            let n = self.sqrt_arg()?;
            Ok(RealQuad::new(Rational::zero(), coeff, n))
        } else {
            Ok(RealQuad::from_rational(coeff))
        }
    }
}

/// Parses a `RealQuad` literal such as `1/2 + 3*sqrt(7)`.
pub fn parse_real_quad(src: &str) -> Result<RealQuad, FieldError> {
    let mut cur = Cursor::new(src);
    if cur.at_end() {
        return Err(cur.err("empty literal"));
    }
    let mut acc = cur.term()?;
    while !cur.at_end() {
        let t = if cur.eat(b'+') {
            cur.term()?
        } else if cur.eat(b'-') {
            -cur.term()?
        } else {
            return Err(cur.err(format!("unexpected character at offset {}", cur.pos)));
        };
        acc = acc.checked_add(&t).map_err(|e| cur.err(e.to_string()))?;
    }
    Ok(acc)
}

/// Parses a plain rational `["-"] UINT ["/" UINT]`.
pub fn parse_rational(src: &str) -> Result<Rational, FieldError> {
    let mut cur = Cursor::new(src);
    let r = cur.rational()?;
    if !cur.at_end() {
        return Err(cur.err("trailing input"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn grammar_examples() {
        let x = parse_real_quad("1/2 + 3*sqrt(7)").unwrap();
        assert_eq!(x, RealQuad::new(rat(1, 2), rat(3, 1), 7));
        assert_eq!(parse_real_quad("-1*sqrt(7)").unwrap(), RealQuad::new(rat(0, 1), rat(-1, 1), 7));
        assert_eq!(parse_real_quad("sqrt(7)").unwrap(), RealQuad::sqrt(7));
        assert_eq!(parse_real_quad("-3/4").unwrap(), RealQuad::from_rational(rat(-3, 4)));
        assert_eq!(parse_real_quad(" 2 - 1 * sqrt( 2 ) ").unwrap(), RealQuad::new(rat(2, 1), rat(-1, 1), 2));
    }

    #[test]
    fn radicand_is_folded() {
        let x = parse_real_quad("1*sqrt(56)").unwrap();
        assert_eq!(x.radicand(), 14);
        assert_eq!(x.irr(), &rat(2, 1));
    }

    #[test]
    fn malformed_literals() {
        for bad in ["", "1/0", "abc", "1 +", "sqrt(2", "1*sqrt(x)", "sqrt(2)+sqrt(3)"] {
            assert!(parse_real_quad(bad).is_err(), "{bad:?} should not parse");
        }
        assert!(parse_rational("1/2x").is_err());
        assert_eq!(parse_rational("5/9").unwrap(), rat(5, 9));
    }
}
