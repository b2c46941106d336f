//! Parser for scalar literals used by the input format: rational literals
//! like `2/3` or `-1`, and polynomial expressions in the symbol `z` denoting
//! `zeta_n`, e.g. `1 - z^2/3`, reduced into the field context.

use std::sync::Arc;

use num_bigint::BigInt;

use super::context::FieldContext;
use super::element::Scalar;
use super::Rational;
use crate::error::Error;

struct Parser<'a> {
    ctx: &'a Arc<FieldContext>,
    input: &'a [u8],
    pos: usize,
}

/// Parse a scalar literal in the given field context.
pub fn parse_scalar(ctx: &Arc<FieldContext>, text: &str) -> Result<Scalar, Error> {
    let mut p = Parser {
        ctx,
        input: text.as_bytes(),
        pos: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(p.error("trailing input"));
    }
    Ok(value)
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "scalar literal {:?}: {} at byte {}",
            String::from_utf8_lossy(self.input),
            msg,
            self.pos
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar, Error> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek() {
            match op {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, Error> {
        let mut acc = self.unary()?;
        while let Some(op) = self.peek() {
            match op {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                b'/' => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    let inv = rhs.inv().ok_or_else(|| self.error("division by zero"))?;
                    acc = acc.mul(&inv);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar, Error> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Scalar, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'z') => {
                self.pos += 1;
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.integer()?
                } else {
                    BigInt::from(1)
                };
                let (_, digits) = exp.to_u64_digits();
                if exp.sign() == num_bigint::Sign::Minus || digits.len() > 1 {
                    return Err(self.error("exponent out of range"));
                }
                let e = digits.first().copied().unwrap_or(0);
                Ok(Scalar::zeta(self.ctx).pow(e))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Scalar::from_rational(
                    self.ctx,
                    Rational::from_integer(n),
                ))
            }
            _ => Err(self.error("expected a number, 'z' or '('")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        let text = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        text.parse().map_err(|_| self.error("bad integer"))
    }
}
