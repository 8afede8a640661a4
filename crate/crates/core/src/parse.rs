//! Recursive-descent parser shared by polynomial and coderivation strings.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := int ['/' int] | ident ['^' int] | '(' expr ')' | basis
//! basis  := ('phi' | 'psi') '[' digit* '->' digit ']'
//! ```
//!
//! A coderivation term must contain exactly one `basis` factor; a
//! polynomial contains none.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::ParseError;
use crate::scalar::{Monomial, Polynomial, Rational};

/// One parsed `coef * phi[I->i]` summand.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct RawTerm {
    pub input: Vec<usize>,
    pub output: usize,
    pub coefficient: Polynomial,
    pub odd_marker: bool,
    pub position: usize,
}

enum Value {
    Scalar(Polynomial),
    Linear(Vec<RawTerm>),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, msg)
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string()
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = negate_value(acc);
        }
        loop {
            let sign = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => break,
            };
            self.pos += 1;
            let at = self.pos;
            let mut rhs = self.term()?;
            if sign {
                rhs = negate_value(rhs);
            }
            acc = add_values(acc, rhs).map_err(|m| ParseError::new(at, m))?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let at = self.pos;
            let rhs = self.factor()?;
            acc = mul_values(acc, rhs).map_err(|m| ParseError::new(at, m))?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let numer = self.integer()?;
                let denom = if self.eat(b'/') {
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    d
                } else {
                    BigInt::one()
                };
                Ok(Value::Scalar(Polynomial::constant(Rational::new(
                    numer, denom,
                ))))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                let name = self.ident();
                if (name == "phi" || name == "psi") && self.peek() == Some(b'[') {
                    return self.basis(name == "psi", start);
                }
                let exp = if self.eat(b'^') {
                    let e = self.integer()?;
                    u32::try_from(e).map_err(|_| self.error("exponent too large"))?
                } else {
                    1
                };
                Ok(Value::Scalar(Polynomial::term(
                    Rational::one(),
                    Monomial::pow(&name, exp),
                )))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn basis(&mut self, odd_marker: bool, position: usize) -> Result<Value, ParseError> {
        self.expect(b'[')?;
        let mut input = Vec::new();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    input.push((c - b'0') as usize);
                    self.pos += 1;
                }
                _ => break,
            }
        }
        self.expect(b'-')?;
        if self.src.get(self.pos) != Some(&b'>') {
            return Err(self.error("expected `->`"));
        }
        self.pos += 1;
        let output = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                self.pos += 1;
                (c - b'0') as usize
            }
            _ => return Err(self.error("expected an output index digit")),
        };
        self.expect(b']')?;
        Ok(Value::Linear(vec![RawTerm {
            input,
            output,
            coefficient: Polynomial::one(),
            odd_marker,
            position,
        }]))
    }
}

fn negate_value(v: Value) -> Value {
    match v {
        Value::Scalar(p) => Value::Scalar(-p),
        Value::Linear(ts) => Value::Linear(
            ts.into_iter()
                .map(|mut t| {
                    t.coefficient = -t.coefficient;
                    t
                })
                .collect(),
        ),
    }
}

fn add_values(a: Value, b: Value) -> Result<Value, String> {
    match (a, b) {
        (Value::Scalar(p), Value::Scalar(q)) => Ok(Value::Scalar(p + q)),
        (Value::Linear(mut s), Value::Linear(t)) => {
            s.extend(t);
            Ok(Value::Linear(s))
        }
        _ => Err("cannot add a scalar to a coderivation".into()),
    }
}

fn mul_values(a: Value, b: Value) -> Result<Value, String> {
    match (a, b) {
        (Value::Scalar(p), Value::Scalar(q)) => Ok(Value::Scalar(p * q)),
        (Value::Scalar(p), Value::Linear(ts)) | (Value::Linear(ts), Value::Scalar(p)) => {
            Ok(Value::Linear(
                ts.into_iter()
                    .map(|mut t| {
                        t.coefficient = p.clone() * t.coefficient;
                        t
                    })
                    .collect(),
            ))
        }
        (Value::Linear(_), Value::Linear(_)) => {
            Err("product of two coderivations is not a linear term".into())
        }
    }
}

pub(crate) fn parse_polynomial(s: &str) -> Result<Polynomial, ParseError> {
    let mut p = Parser::new(s);
    let v = p.expr()?;
    p.finish()?;
    match v {
        Value::Scalar(poly) => Ok(poly),
        Value::Linear(ts) => Err(ParseError::new(
            ts[0].position,
            "coderivation basis element inside a polynomial",
        )),
    }
}

pub(crate) fn parse_coderivation_terms(s: &str) -> Result<Vec<RawTerm>, ParseError> {
    let mut p = Parser::new(s);
    if p.peek().is_none() {
        return Err(p.error("empty coderivation"));
    }
    if p.peek() == Some(b'0') {
        let save = p.pos;
        p.pos += 1;
        if p.peek().is_none() {
            return Ok(Vec::new());
        }
        p.pos = save;
    }
    let v = p.expr()?;
    p.finish()?;
    match v {
        Value::Linear(ts) => Ok(ts),
        Value::Scalar(_) => Err(ParseError::new(0, "expected a coderivation, got a scalar")),
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let p = parse_polynomial(s)?;
    p.as_constant()
        .ok_or_else(|| ParseError::new(0, format!("`{}` is not a rational constant", s.trim())))
}

pub(crate) fn json_rational(v: &serde_json::Value) -> Result<Rational, ParseError> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(|k| Rational::from_integer(k.into()))
            .ok_or_else(|| {
                ParseError::new(
                    0,
                    format!("{n} is not an integer; quote fractions as \"p/q\""),
                )
            }),
        serde_json::Value::String(s) => parse_rational(s),
        other => Err(ParseError::new(0, format!("unexpected JSON value {other}"))),
    }
}
