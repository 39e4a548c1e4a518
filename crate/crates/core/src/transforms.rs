//! 2x2 basis changes: holographic and SLOCC transforms, the hat operator and
//! the named matrices used throughout.

use crate::literal::{parse_scalar, LiteralError};
use crate::scalar::{Field, Scalar, ScalarError};
use crate::signature::{bit, Signature};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TransformError {
    #[error("matrix is singular")]
    Singular,
    #[error("expected {expected} matrices, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("T_{0} is not exact over Q(zeta_24); use the approx backend")]
    UnsupportedD(u32),
    #[error("unary is isotropic (a^2 + b^2 = 0)")]
    IsotropicUnary,
    #[error("expected a unary signature")]
    NotUnary,
    #[error("unknown matrix name {0:?}")]
    UnknownMatrix(String),
    #[error(transparent)]
    Literal(#[from] LiteralError),
}

impl From<ScalarError> for TransformError {
    fn from(_: ScalarError) -> Self {
        TransformError::Singular
    }
}

/// Which side of the vector a matrix acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `T^{(x)n} f` with `f` a column vector.
    Column,
    /// `f T^{(x)n}` with `f` a row vector.
    Row,
}

/// `[[m[0][0], m[0][1]], [m[1][0], m[1][1]]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2 {
    pub m: [[Scalar; 2]; 2],
}

impl Mat2 {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Mat2 {
        Mat2 { m: [[a, b], [c, d]] }
    }

    pub fn ints(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        Mat2::new(Scalar::int(a), Scalar::int(b), Scalar::int(c), Scalar::int(d))
    }

    pub fn identity() -> Mat2 {
        Mat2::ints(1, 0, 0, 1)
    }

    pub fn x() -> Mat2 {
        Mat2::ints(0, 1, 1, 0)
    }

    pub fn z() -> Mat2 {
        Mat2::ints(1, 0, 0, -1)
    }

    pub fn hadamard() -> Mat2 {
        Mat2::ints(1, 1, 1, -1)
    }

    pub fn diag(p: Scalar, q: Scalar) -> Mat2 {
        Mat2::new(p, Scalar::zero(), Scalar::zero(), q)
    }

    pub fn antidiag(p: Scalar, q: Scalar) -> Mat2 {
        Mat2::new(Scalar::zero(), p, q, Scalar::zero())
    }

    /// `(1/sqrt2) [[1, 1], [i, -i]]`.
    pub fn k() -> Mat2 {
        let h = Scalar::sqrt2().inv().expect("nonzero");
        let hi = &h * &Scalar::i();
        Mat2::new(h.clone(), h, hi.clone(), -hi)
    }

    /// `(1/sqrt2) [[1, -i], [1, i]]`.
    pub fn k_inv() -> Mat2 {
        let h = Scalar::sqrt2().inv().expect("nonzero");
        let hi = &h * &Scalar::i();
        Mat2::new(h.clone(), -hi.clone(), h, hi)
    }

    /// `T_d^r = diag(1, e^{i pi r / 2d})`; exact only for `d <= 3`.
    pub fn t_d(d: u32, r: u32, field: Field) -> Result<Mat2, TransformError> {
        if d == 0 {
            return Err(TransformError::UnsupportedD(d));
        }
        match field {
            Field::Cyclo24 => {
                if 12 % d != 0 || d > 3 {
                    return Err(TransformError::UnsupportedD(d));
                }
                // e^{i pi/2d} = zeta^{6/d}
                Ok(Mat2::diag(Scalar::one(), Scalar::zeta((6 / d as i64) * r as i64)))
            }
            Field::Approx { eps } => {
                let theta = std::f64::consts::PI * r as f64 / (2.0 * d as f64);
                Ok(Mat2::diag(
                    Scalar::approx(Complex64::new(1.0, 0.0), eps),
                    Scalar::approx(Complex64::from_polar(1.0, theta), eps),
                ))
            }
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.m[r][c]
    }

    pub fn det(&self) -> Scalar {
        &(&self.m[0][0] * &self.m[1][1]) - &(&self.m[0][1] * &self.m[1][0])
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn inv(&self) -> Result<Mat2, TransformError> {
        let di = self.det().inv()?;
        let [[a, b], [c, d]] = &self.m;
        Ok(Mat2::new(d * &di, -(b * &di), -(c * &di), a * &di))
    }

    pub fn transpose(&self) -> Mat2 {
        let [[a, b], [c, d]] = &self.m;
        Mat2::new(a.clone(), c.clone(), b.clone(), d.clone())
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let e = |r: usize, c: usize| &(&self.m[r][0] * &o.m[0][c]) + &(&self.m[r][1] * &o.m[1][c]);
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn scale(&self, s: &Scalar) -> Mat2 {
        let [[a, b], [c, d]] = &self.m;
        Mat2::new(a * s, b * s, c * s, d * s)
    }

    /// `M v` for a unary `v`.
    pub fn apply_vec(&self, v: [&Scalar; 2]) -> [Scalar; 2] {
        [
            &(&self.m[0][0] * v[0]) + &(&self.m[0][1] * v[1]),
            &(&self.m[1][0] * v[0]) + &(&self.m[1][1] * v[1]),
        ]
    }

    /// Divide by the first nonzero entry (matrices matter up to scale here).
    pub fn normalized(&self) -> Mat2 {
        let lead = [&self.m[0][0], &self.m[0][1], &self.m[1][0], &self.m[1][1]]
            .into_iter()
            .find(|s| !s.is_zero());
        match lead {
            Some(l) => self.scale(&l.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// As a binary signature `(M[0][0], M[0][1], M[1][0], M[1][1])`.
    pub fn as_signature(&self) -> Signature {
        let [[a, b], [c, d]] = &self.m;
        Signature::from_table(vec![a.clone(), b.clone(), c.clone(), d.clone()]).expect("length 4")
    }

    pub fn into_field(self, field: Field) -> Mat2 {
        let [[a, b], [c, d]] = self.m;
        Mat2::new(a.into_field(field), b.into_field(field), c.into_field(field), d.into_field(field))
    }

    pub fn is_exact(&self) -> bool {
        self.m.iter().flatten().all(|s| s.is_exact())
    }
}

// new[alpha] = sum_b T[alpha_i, b] f[alpha with x_i = b]
fn mode_product(f: &[Scalar], n: usize, i: usize, t: &Mat2) -> Vec<Scalar> {
    let mask = 1usize << (n - 1 - i);
    let mut out = vec![Scalar::zero(); f.len()];
    for (alpha, slot) in out.iter_mut().enumerate() {
        let a = bit(alpha, n, i);
        let lo = alpha & !mask;
        let hi = alpha | mask;
        let mut acc = Scalar::zero();
        for (b, idx) in [(0usize, lo), (1usize, hi)] {
            let x = &f[idx];
            let w = &t.m[a][b];
            if !x.is_zero() && !w.is_zero() {
                acc = &acc + &(w * x);
            }
        }
        *slot = acc;
    }
    out
}

/// Per-variable transform `M_1 (x) ... (x) M_n` applied to `f` as a column.
pub fn apply_slocc(ms: &[Mat2], f: &Signature) -> Result<Signature, TransformError> {
    let n = f.arity();
    if ms.len() != n {
        return Err(TransformError::ArityMismatch { expected: n, got: ms.len() });
    }
    let mut t = f.table().to_vec();
    for (i, m) in ms.iter().enumerate() {
        t = mode_product(&t, n, i, m);
    }
    let out = Signature::from_table(t).expect("same size");
    Ok(out.with_labels(f.vars().to_vec()).expect("same labels"))
}

/// `T^{(x)n} f` (column) or `f T^{(x)n}` (row).
pub fn apply_holographic(t: &Mat2, f: &Signature, side: Side) -> Signature {
    let m = match side {
        Side::Column => t.clone(),
        Side::Row => t.transpose(),
    };
    apply_slocc(&vec![m; f.arity()], f).expect("arity matches")
}

/// `f_hat = K^{-1} f`.
pub fn hat(f: &Signature) -> Signature {
    apply_holographic(&Mat2::k_inv(), f, Side::Column)
}

/// Inverse of [`hat`]: `K f_hat`.
pub fn unhat(fh: &Signature) -> Signature {
    apply_holographic(&Mat2::k(), fh, Side::Column)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Orthogonality {
    Yes,
    UpToScalar(Scalar),
    No,
}

/// Exact check of `M^T M = I` (or `lambda I`).
pub fn is_orthogonal(m: &Mat2) -> Orthogonality {
    let p = m.transpose().mul(m);
    let [[a, b], [c, d]] = &p.m;
    if !b.is_zero() || !c.is_zero() || a != d || a.is_zero() {
        return Orthogonality::No;
    }
    if a.is_one() {
        Orthogonality::Yes
    } else {
        Orthogonality::UpToScalar(a.clone())
    }
}

/// Matrices `M` with `(!=_2) M = (!=_2)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Neq2Form {
    /// `diag(1/q, q)`.
    Diag(Scalar),
    /// `[[0, 1/q], [q, 0]]`.
    Antidiag(Scalar),
}

pub fn neq2_preserving_form(m: &Mat2) -> Option<Neq2Form> {
    let image = apply_holographic(m, &Signature::neq2(), Side::Row);
    if image != Signature::neq2() {
        return None;
    }
    let [[a, b], [c, d]] = &m.m;
    if b.is_zero() && c.is_zero() {
        debug_assert!((a * d).is_one());
        Some(Neq2Form::Diag(d.clone()))
    } else if a.is_zero() && d.is_zero() {
        Some(Neq2Form::Antidiag(c.clone()))
    } else {
        None
    }
}

/// `Q = [[a, b], [b, -a]]` with `Q Q^T = lambda I`, `lambda = a^2 + b^2`, and
/// `Q (a, b)^T = (lambda, 0)^T`.
pub fn ortho_from_unary(u: &Signature) -> Result<(Mat2, Scalar), TransformError> {
    if u.arity() != 1 {
        return Err(TransformError::NotUnary);
    }
    let (a, b) = (u.get(0).clone(), u.get(1).clone());
    let lambda = &(&a * &a) + &(&b * &b);
    if lambda.is_zero() {
        return Err(TransformError::IsotropicUnary);
    }
    Ok((Mat2::new(a.clone(), b.clone(), b, -a), lambda))
}

/// Named matrices: `I`, `K`, `Kinv`, `X`, `Z`, `H`, `T1`..`T4`, `diag:q`,
/// `ortho:a,b` (`[[a,b],[-b,a]]`), `mat:a,b,c,d`.
pub fn named_matrix(name: &str, field: Field) -> Result<Mat2, TransformError> {
    let lit = |s: &str| parse_scalar(s.trim(), field);
    let m = match name {
        "I" => Mat2::identity(),
        "K" => Mat2::k(),
        "Kinv" => Mat2::k_inv(),
        "X" => Mat2::x(),
        "Z" => Mat2::z(),
        "H" => Mat2::hadamard(),
        "T1" | "T2" | "T3" | "T4" => {
            let d: u32 = name[1..].parse().expect("digit");
            Mat2::t_d(d, 1, field)?
        }
        _ => {
            if let Some(q) = name.strip_prefix("diag:") {
                let q = lit(q)?;
                Mat2::diag(q.inv().map_err(|_| TransformError::Singular)?, q)
            } else if let Some(args) = name.strip_prefix("ortho:") {
                let parts: Vec<&str> = args.split(',').collect();
                if parts.len() != 2 {
                    return Err(TransformError::UnknownMatrix(name.to_string()));
                }
                let (a, b) = (lit(parts[0])?, lit(parts[1])?);
                Mat2::new(a.clone(), b.clone(), -b, a)
            } else if let Some(args) = name.strip_prefix("mat:") {
                let parts: Vec<&str> = args.split(',').collect();
                if parts.len() != 4 {
                    return Err(TransformError::UnknownMatrix(name.to_string()));
                }
                Mat2::new(lit(parts[0])?, lit(parts[1])?, lit(parts[2])?, lit(parts[3])?)
            } else {
                return Err(TransformError::UnknownMatrix(name.to_string()));
            }
        }
    };
    Ok(m.into_field(field))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eq2_row_side_by_k_is_neq2() {
        assert_eq!(apply_holographic(&Mat2::k(), &Signature::eq(2), Side::Row), Signature::neq2());
    }

    #[test]
    fn diagonal_scales_by_weight() {
        let t = Mat2::diag(Scalar::one(), Scalar::int(2));
        let f = Signature::from_ints(&[1, 1, 1, 1]);
        assert_eq!(apply_holographic(&t, &f, Side::Column), Signature::from_ints(&[1, 2, 2, 4]));
        assert_eq!(apply_holographic(&Mat2::identity(), &f, Side::Column), f);
    }

    #[test]
    fn slocc_examples() {
        let d00 = Signature::from_ints(&[1, 0, 0, 0]);
        let out = apply_slocc(&[Mat2::x(), Mat2::identity()], &d00).unwrap();
        assert_eq!(out, Signature::from_ints(&[0, 0, 1, 0]));
        assert!(apply_slocc(&[Mat2::x()], &d00).is_err());
    }

    #[test]
    fn hat_examples() {
        let h = Scalar::sqrt2().inv().unwrap();
        assert_eq!(hat(&Signature::delta0()), Signature::unary(h.clone(), h));
        let f = Signature::unary(Scalar::one(), Scalar::i());
        assert_eq!(hat(&f), Signature::unary(Scalar::sqrt2(), Scalar::zero()));
        let g = Signature::from_ints(&[1, 2, 0, -1, 3, 0, 0, 7]);
        assert_eq!(unhat(&hat(&g)), g);
    }

    #[test]
    fn orthogonality_examples() {
        assert_eq!(is_orthogonal(&Mat2::x()), Orthogonality::Yes);
        assert_eq!(is_orthogonal(&Mat2::k()), Orthogonality::No);
        assert_eq!(is_orthogonal(&Mat2::ints(3, 4, 4, -3)), Orthogonality::UpToScalar(Scalar::int(25)));
    }

    #[test]
    fn neq2_forms() {
        let q = Scalar::int(3);
        let m = Mat2::diag(Scalar::ratio(1, 3), q.clone());
        assert_eq!(neq2_preserving_form(&m), Some(Neq2Form::Diag(q)));
        assert_eq!(neq2_preserving_form(&Mat2::identity()), Some(Neq2Form::Diag(Scalar::one())));
        assert_eq!(neq2_preserving_form(&Mat2::ints(2, 0, 0, 3)), None);
        assert_eq!(neq2_preserving_form(&Mat2::x()), Some(Neq2Form::Antidiag(Scalar::one())));
    }

    #[test]
    fn ortho_from_unary_examples() {
        let (q, l) = ortho_from_unary(&Signature::from_ints(&[1, 0])).unwrap();
        assert_eq!(l, Scalar::one());
        assert_eq!(q, Mat2::ints(1, 0, 0, -1));
        let iso = Signature::unary(Scalar::one(), Scalar::i());
        assert_eq!(ortho_from_unary(&iso), Err(TransformError::IsotropicUnary));
        let (q, l) = ortho_from_unary(&Signature::from_ints(&[3, 4])).unwrap();
        assert_eq!(l, Scalar::int(25));
        let img = q.apply_vec([&Scalar::int(3), &Scalar::int(4)]);
        assert_eq!(img, [Scalar::int(25), Scalar::zero()]);
    }

    #[test]
    fn t_d_exactness() {
        let t3 = Mat2::t_d(3, 1, Field::Cyclo24).unwrap();
        assert_eq!(t3.get(1, 1).pow(6), Scalar::int(-1));
        assert!(matches!(Mat2::t_d(4, 1, Field::Cyclo24), Err(TransformError::UnsupportedD(4))));
        let t4 = Mat2::t_d(4, 1, Field::default_approx()).unwrap();
        assert_eq!(t4.get(1, 1).pow(8), Scalar::approx(Complex64::new(-1.0, 0.0), 1e-9));
    }

    #[test]
    fn named_registry() {
        assert_eq!(named_matrix("K", Field::Cyclo24).unwrap(), Mat2::k());
        let d = named_matrix("diag:3", Field::Cyclo24).unwrap();
        assert_eq!(d, Mat2::diag(Scalar::ratio(1, 3), Scalar::int(3)));
        assert!(named_matrix("T4", Field::Cyclo24).is_err());
        assert!(named_matrix("nope", Field::Cyclo24).is_err());
    }
}
