//! Parser for polynomial literals such as `"3*z1^2*z2 - (1/2)*i*z2 + 7"`.
//!
//! Source coordinates are `z1..zp` (or bare `z` when `p = 1`); homogeneous
//! target coordinates are `w0..wn`. Numbers are exact: `0.25` is `1/4`.
//! Division is allowed only by nonzero constants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::gaussian::GaussianRational;
use super::poly::Polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse polynomial {input:?} at byte {pos}: {msg}")]
pub struct ParseError {
    pub input: String,
    pub pos: usize,
    pub msg: String,
}

pub fn parse_polynomial(input: &str, nvars: usize) -> Result<Polynomial, ParseError> {
    let mut p = Parser { src: input.as_bytes(), input, pos: 0, nvars };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a scalar such as `"3/4"`, `"-2.5"`, `"i"`, or `"1 - i/2"`.
pub fn parse_scalar(input: &str) -> Result<GaussianRational, ParseError> {
    let poly = parse_polynomial(input, 0)?;
    poly.as_constant().ok_or_else(|| ParseError {
        input: input.to_string(),
        pos: 0,
        msg: "not a constant".into(),
    })
}

struct Parser<'a> {
    src: &'a [u8],
    input: &'a str,
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError { input: self.input.to_string(), pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    let c = d
                        .as_constant()
                        .and_then(|c| c.inv())
                        .ok_or_else(|| ParseError {
                            input: self.input.to_string(),
                            pos: at,
                            msg: "division by a non-constant or zero".into(),
                        })?;
                    acc = acc.scale(&c);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.digits().map(str::to_owned);
            let e = e.ok_or_else(|| self.err("expected exponent"))?;
            let e: u32 = e.parse().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<&str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.input[start..self.pos])
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(b'i') => {
                self.pos += 1;
                Ok(Polynomial::constant(self.nvars, GaussianRational::i()))
            }
            Some(c @ (b'z' | b'w')) => {
                self.pos += 1;
                let idx = self.digits().map(|d| d.parse::<usize>());
                let index = match (c, idx) {
                    (b'z', None) if self.nvars == 1 => 0,
                    (b'z', Some(Ok(k))) if k >= 1 => k - 1,
                    (b'w', Some(Ok(k))) => k,
                    _ => return Err(self.err("bad variable name")),
                };
                if index >= self.nvars {
                    return Err(self.err("variable index exceeds arity"));
                }
                Ok(Polynomial::var(self.nvars, index))
            }
            _ => Err(self.err("expected number, variable, 'i' or '('")),
        }
    }

    fn number(&mut self) -> Result<Polynomial, ParseError> {
        let int_part = self.digits().unwrap_or("0").to_string();
        let mut value = BigRational::from_integer(int_part.parse::<BigInt>().unwrap());
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            if let Some(frac) = self.digits() {
                let den = BigInt::from(10u32).pow(frac.len() as u32);
                value += BigRational::new(frac.parse::<BigInt>().unwrap(), den);
            }
        }
        if value.is_zero() {
            return Ok(Polynomial::zero(self.nvars));
        }
        Ok(Polynomial::constant(self.nvars, value.into()))
    }
}
