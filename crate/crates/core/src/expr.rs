//! Text syntax for elements of K.
//!
//! ```text
//! expr   := term { ("+" | "-") term }
//! term   := factor { ("*" | "/") factor }
//! factor := atom { "^" nat }
//! atom   := "t" | "#x" hexdigits | nat | "(" expr ")"
//! ```
//!
//! A decimal literal `n` denotes `n * 1`, i.e. its parity. Printing is
//! canonical: terms by descending degree joined by `" + "`, constants as
//! `#x..` in lowercase hex, and a denominator only when it is not 1.
//! Parsing a printed string and printing again is the identity.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{AlgebraError, FieldSpec, Place, Poly, RatFunc};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        Self { offset, message: message.into() }
    }

    /// 1-based column, counting characters.
    pub fn column(&self, input: &str) -> usize {
        input.get(..self.offset).map_or(self.offset, |s| s.chars().count()) + 1
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.offset, self.message)
    }
}

impl core::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: FieldSpec,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.term()?;
        while let Some(b'+' | b'-') = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = &acc + &rhs;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = &acc * &rhs;
                }
                Some(b'/') => {
                    let at = self.pos;
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = acc.try_div(&rhs).map_err(|_| ParseError::new(at, "division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFunc, ParseError> {
        let mut base = self.atom()?;
        while let Some(b'^') = self.peek() {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let k = self.nat()?;
            if k > MAX_EXPONENT {
                return Err(ParseError::new(at, format!("exponent exceeds {MAX_EXPONENT}")));
            }
            base = base.pow(k);
        }
        Ok(base)
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(start, "expected a natural number"));
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
        digits.parse().map_err(|_| ParseError::new(start, "number too large"))
    }

    fn atom(&mut self) -> Result<RatFunc, ParseError> {
        let at = match self.peek() {
            None => return Err(ParseError::new(self.pos, "unexpected end of input")),
            Some(_) => self.pos,
        };
        match self.src[at] {
            b't' => {
                self.pos += 1;
                if self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric()) {
                    return Err(ParseError::new(at, "unknown identifier"));
                }
                Ok(RatFunc::t(self.field))
            }
            b'#' => {
                if self.src.get(at + 1) != Some(&b'x') {
                    return Err(ParseError::new(at, "expected '#x' before hex digits"));
                }
                self.pos = at + 2;
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_hexdigit() {
                    self.pos += 1;
                }
                if start == self.pos {
                    return Err(ParseError::new(start, "expected hex digits"));
                }
                let hex = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let bits = u64::from_str_radix(hex, 16)
                    .map_err(|_| ParseError::new(start, "constant too large"))?;
                let c = self
                    .field
                    .elem(bits)
                    .map_err(|e| ParseError::new(at, e.to_string()))?;
                Ok(RatFunc::constant(c))
            }
            b'0'..=b'9' => {
                let n = self.nat()?;
                Ok(if n % 2 == 0 { RatFunc::zero(self.field) } else { RatFunc::one(self.field) })
            }
            b'(' => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(ParseError::new(self.pos, "expected ')'")),
                }
            }
            c => Err(ParseError::new(at, format!("unexpected character '{}'", c as char))),
        }
    }
}

/// Parses an element of GF(2^m)(t).
pub fn parse(input: &str, field: FieldSpec) -> Result<RatFunc, ParseError> {
    let mut p = Parser { src: input.as_bytes(), pos: 0, field };
    let value = p.expr()?;
    match p.peek() {
        None => Ok(value),
        Some(c) => Err(ParseError::new(p.pos, format!("unexpected '{}'", c as char))),
    }
}

/// Parses a place: `inf`, or an expression that evaluates to a monic
/// irreducible polynomial.
pub fn parse_place(input: &str, field: FieldSpec) -> Result<Place, ParseError> {
    let trimmed = input.trim();
    if trimmed == "inf" || trimmed == "infinity" {
        return Ok(Place::Infinite);
    }
    let f = parse(input, field)?;
    if !f.denom().is_one() {
        return Err(ParseError::new(0, "a finite place must be a polynomial"));
    }
    Place::finite(f.numer().clone())
        .map_err(|e: AlgebraError| ParseError::new(0, e.to_string()))
}

/// Canonical text of a polynomial.
pub fn poly_to_string(p: &Poly) -> String {
    if p.is_zero() {
        return "#x0".into();
    }
    let mut terms: Vec<String> = Vec::new();
    for (k, c) in p.coeffs().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let var = match k {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{k}"),
        };
        terms.push(match (k, c.is_one()) {
            (0, _) => format!("{c}"),
            (_, true) => var,
            (_, false) => format!("{c}*{var}"),
        });
    }
    terms.join(" + ")
}

fn term_count(p: &Poly) -> usize {
    p.coeffs().filter(|c| !c.is_zero()).count()
}

/// Canonical text of a rational function.
pub fn to_string(f: &RatFunc) -> String {
    let num = poly_to_string(f.numer());
    if f.denom().is_one() {
        return num;
    }
    let den = poly_to_string(f.denom());
    let num = if term_count(f.numer()) > 1 { format!("({num})") } else { num };
    let den = if term_count(f.denom()) > 1 { format!("({den})") } else { den };
    format!("{num}/{den}")
}
