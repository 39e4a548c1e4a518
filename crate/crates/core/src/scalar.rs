//! Signature values: exact cyclotomic elements or tolerance-tagged floats.

use crate::cyclo::Cyclo;
use num_bigint::BigInt;
use num_complex::Complex64;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands use different scalar backends")]
    BackendMismatch,
}

/// Which backend a set of signatures lives in.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Field {
    Cyclo24,
    Approx { eps: f64 },
}

impl Field {
    pub fn is_exact(&self) -> bool {
        matches!(self, Field::Cyclo24)
    }

    pub fn default_approx() -> Field {
        Field::Approx { eps: 1e-9 }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Approx {
    pub value: Complex64,
    pub eps: f64,
}

#[derive(Clone)]
pub enum Scalar {
    Exact(Cyclo),
    Approx(Approx),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Neg,
    Conj,
}

/// Checked binary/unary arithmetic; unlike the operator impls this refuses to
/// mix backends. Unary ops ignore `b`.
pub fn field_ops(a: &Scalar, b: &Scalar, op: FieldOp) -> Result<Scalar, ScalarError> {
    let binary = matches!(op, FieldOp::Add | FieldOp::Mul);
    if binary && a.is_exact() != b.is_exact() {
        return Err(ScalarError::BackendMismatch);
    }
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Mul => a * b,
        FieldOp::Inv => a.inv()?,
        FieldOp::Neg => -a,
        FieldOp::Conj => a.conj(),
    })
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(Cyclo::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(Cyclo::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Exact(Cyclo::from_int(n))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar::Exact(Cyclo::from_ratio(BigInt::from(p), BigInt::from(q)))
    }

    pub fn i() -> Self {
        Scalar::Exact(Cyclo::i())
    }

    pub fn zeta(k: i64) -> Self {
        Scalar::Exact(Cyclo::zeta_pow(k))
    }

    pub fn sqrt2() -> Self {
        Scalar::Exact(Cyclo::sqrt2())
    }

    pub fn omega() -> Self {
        Scalar::Exact(Cyclo::omega())
    }

    pub fn approx(value: Complex64, eps: f64) -> Self {
        Scalar::Approx(Approx { value, eps })
    }

    /// `i^k`.
    pub fn i_pow(k: i64) -> Self {
        Scalar::zeta(6 * k.rem_euclid(4))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Cyclo> {
        match self {
            Scalar::Exact(c) => Some(c),
            Scalar::Approx(_) => None,
        }
    }

    /// Move into the given backend; exact values become floats when needed.
    pub fn into_field(self, field: Field) -> Scalar {
        match (self, field) {
            (Scalar::Exact(c), Field::Approx { eps }) => Scalar::approx(c.to_complex(), eps),
            (s, _) => s,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(c) => c.to_complex(),
            Scalar::Approx(a) => a.value,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(c) => c.is_zero(),
            Scalar::Approx(a) => a.value.norm() <= a.eps,
        }
    }

    /// Zero test relative to a magnitude scale (exact values ignore the scale).
    pub fn is_negligible(&self, scale: f64) -> bool {
        match self {
            Scalar::Exact(c) => c.is_zero(),
            Scalar::Approx(a) => a.value.norm() <= a.eps * scale.max(1.0),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(c) => c.is_one(),
            s => *s == Scalar::one(),
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Exact(c) => c.inv().map(Scalar::Exact).ok_or(ScalarError::DivisionByZero),
            Scalar::Approx(a) => {
                if self.is_zero() {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(Scalar::approx(a.value.inv(), a.eps))
                }
            }
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact(c) => Scalar::Exact(c.conj()),
            Scalar::Approx(a) => Scalar::approx(a.value.conj(), a.eps),
        }
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply by `z^k` (24th root of unity).
    pub fn mul_zeta(&self, k: i64) -> Scalar {
        match self {
            Scalar::Exact(c) => Scalar::Exact(c.mul_zeta_pow(k)),
            s => s * &Scalar::zeta(k),
        }
    }

    pub fn eps(&self) -> Option<f64> {
        match self {
            Scalar::Exact(_) => None,
            Scalar::Approx(a) => Some(a.eps),
        }
    }
}

fn promote(a: &Scalar, b: &Scalar) -> (Complex64, Complex64, f64) {
    let eps = a.eps().into_iter().chain(b.eps()).fold(0.0, f64::max);
    (a.to_complex(), b.to_complex(), eps)
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => {
                let (a, b, eps) = promote(self, other);
                (a - b).norm() <= eps * (1.0 + a.norm().max(b.norm()))
            }
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a> std::ops::$trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    _ => {
                        let (a, b, eps) = promote(self, rhs);
                        Scalar::approx(a $op b, eps)
                    }
                }
            }
        }
        impl std::ops::$trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                &self $op &rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(c) => Scalar::Exact(c.neg()),
            Scalar::Approx(a) => Scalar::approx(-a.value, a.eps),
        }
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| &a + &b)
    }
}

impl From<Cyclo> for Scalar {
    fn from(c: Cyclo) -> Scalar {
        Scalar::Exact(c)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::int(n)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::literal::format_scalar(self))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::literal::format_scalar(self))
    }
}
