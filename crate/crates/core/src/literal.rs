//! Scalar literal grammar.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | power
//! power  := atom ['^' ['-'] digits]
//! atom   := number | 'i' | 'w' | 'sqrt2' | '(' expr ')'
//! ```
//!
//! `w` is the primitive 24th root of unity `e^{2 pi i/24}`. Decimal numbers
//! are read exactly in the cyclotomic backend.

use crate::cyclo::{Cyclo, DEGREE};
use crate::scalar::{Field, Scalar};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("bad scalar literal {input:?} at position {pos}: {msg}")]
pub struct LiteralError {
    pub input: String,
    pub pos: usize,
    pub msg: String,
}

#[derive(Clone)]
enum Val {
    Exact(Cyclo),
    Float(Complex64),
}

impl Val {
    fn add(self, o: Val) -> Val {
        match (self, o) {
            (Val::Exact(a), Val::Exact(b)) => Val::Exact(&a + &b),
            (a, b) => Val::Float(a.float() + b.float()),
        }
    }
    fn mul(self, o: Val) -> Val {
        match (self, o) {
            (Val::Exact(a), Val::Exact(b)) => Val::Exact(&a * &b),
            (a, b) => Val::Float(a.float() * b.float()),
        }
    }
    fn neg(self) -> Val {
        match self {
            Val::Exact(a) => Val::Exact(a.neg()),
            Val::Float(a) => Val::Float(-a),
        }
    }
    fn inv(self) -> Option<Val> {
        match self {
            Val::Exact(a) => a.inv().map(Val::Exact),
            Val::Float(a) if a.norm() == 0.0 => None,
            Val::Float(a) => Some(Val::Float(a.inv())),
        }
    }
    fn float(&self) -> Complex64 {
        match self {
            Val::Exact(a) => a.to_complex(),
            Val::Float(a) => *a,
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    src: &'a str,
    pos: usize,
    exact: bool,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, LiteralError> {
        Err(LiteralError {
            input: self.src.to_string(),
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Val, LiteralError> {
        let mut neg = false;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                neg = true;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.add(self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Val, LiteralError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    match d.inv() {
                        Some(inv) => acc = acc.mul(inv),
                        None => {
                            self.pos = at;
                            return self.err("division by zero");
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Val, LiteralError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Val, LiteralError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let mut neg = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            neg = true;
        }
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer exponent");
        }
        let k: u32 = match self.src[start..self.pos].parse() {
            Ok(k) if k <= 4096 => k,
            _ => return self.err("exponent too large"),
        };
        let mut acc = match &base {
            Val::Exact(_) => Val::Exact(Cyclo::one()),
            Val::Float(_) => Val::Float(Complex64::new(1.0, 0.0)),
        };
        for _ in 0..k {
            acc = acc.mul(base.clone());
        }
        if neg {
            match acc.inv() {
                Some(v) => acc = v,
                None => return self.err("zero to a negative power"),
            }
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Val, LiteralError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(if self.exact {
                    Val::Exact(Cyclo::i())
                } else {
                    Val::Float(Complex64::new(0.0, 1.0))
                })
            }
            Some(b'w') => {
                self.pos += 1;
                Ok(if self.exact {
                    Val::Exact(Cyclo::zeta_pow(1))
                } else {
                    Val::Float(Complex64::from_polar(1.0, std::f64::consts::PI / 12.0))
                })
            }
            Some(b's') if self.src[self.pos..].starts_with("sqrt2") => {
                self.pos += 5;
                Ok(if self.exact {
                    Val::Exact(Cyclo::sqrt2())
                } else {
                    Val::Float(Complex64::new(std::f64::consts::SQRT_2, 0.0))
                })
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }

    fn number(&mut self) -> Result<Val, LiteralError> {
        let start = self.pos;
        let s = self.s;
        let mut p = self.pos;
        while p < s.len() && s[p].is_ascii_digit() {
            p += 1;
        }
        let int_end = p;
        let mut frac = "";
        if p < s.len() && s[p] == b'.' {
            p += 1;
            let fs = p;
            while p < s.len() && s[p].is_ascii_digit() {
                p += 1;
            }
            frac = &self.src[fs..p];
        }
        let mut exp: i64 = 0;
        if p < s.len() && (s[p] == b'e' || s[p] == b'E') {
            let mut q = p + 1;
            if q < s.len() && (s[q] == b'-' || s[q] == b'+') {
                q += 1;
            }
            let ds = q;
            while q < s.len() && s[q].is_ascii_digit() {
                q += 1;
            }
            if q > ds {
                exp = match self.src[p + 1..q].parse() {
                    Ok(e) => e,
                    Err(_) => return self.err("bad exponent"),
                };
                p = q;
            }
        }
        let int_part = &self.src[start..int_end];
        if int_part.is_empty() && frac.is_empty() {
            return self.err("expected digits");
        }
        self.pos = p;
        if !self.exact {
            return match self.src[start..p].parse::<f64>() {
                Ok(v) => Ok(Val::Float(Complex64::new(v, 0.0))),
                Err(_) => self.err("bad number"),
            };
        }
        if exp.abs() > 4096 {
            return self.err("exponent too large");
        }
        let digits = format!("{}{}", int_part, frac);
        let mant: BigInt = digits.parse().unwrap_or_else(|_| BigInt::zero());
        let scale = exp - frac.len() as i64;
        let ten = BigInt::from(10);
        let v = if scale >= 0 {
            Cyclo::from_bigint(mant * num_traits::pow(ten, scale as usize))
        } else {
            Cyclo::from_ratio(mant, num_traits::pow(ten, (-scale) as usize))
        };
        Ok(Val::Exact(v))
    }
}

/// Parse a literal into the given backend.
pub fn parse_scalar(src: &str, field: Field) -> Result<Scalar, LiteralError> {
    let mut p = Parser {
        s: src.as_bytes(),
        src,
        pos: 0,
        exact: field.is_exact(),
    };
    if p.peek().is_none() {
        return p.err("empty literal");
    }
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(match (v, field) {
        (Val::Exact(c), Field::Cyclo24) => Scalar::Exact(c),
        (v, Field::Approx { eps }) => Scalar::approx(v.float(), eps),
        (Val::Float(_), Field::Cyclo24) => unreachable!("exact parser produced a float"),
    })
}

fn format_ratio(p: &BigInt, q: &BigInt) -> String {
    if q.is_one() {
        p.to_string()
    } else {
        format!("{}/{}", p, q)
    }
}

/// Canonical form: `sum c_j*w^j` in increasing `j`, rational coefficients.
pub fn format_cyclo(c: &Cyclo) -> String {
    if c.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for j in 0..DEGREE {
        let (p, q) = c.coeff(j);
        if p.is_zero() {
            continue;
        }
        let neg = p.is_negative();
        let a = p.abs();
        let body = match j {
            0 => format_ratio(&a, &q),
            _ => {
                let w = if j == 1 { "w".to_string() } else { format!("w^{}", j) };
                if a.is_one() && q.is_one() {
                    w
                } else {
                    format!("{}*{}", format_ratio(&a, &q), w)
                }
            }
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        out.push_str(&body);
    }
    out
}

pub fn format_scalar(s: &Scalar) -> String {
    match s {
        Scalar::Exact(c) => format_cyclo(c),
        Scalar::Approx(a) => {
            let (re, im) = (a.value.re, a.value.im);
            if im == 0.0 {
                format!("{:?}", re)
            } else if im < 0.0 {
                format!("{:?}-{:?}*i", re, -im)
            } else {
                format!("{:?}+{:?}*i", re, im)
            }
        }
    }
}
