//! Affine signatures: affine support with a quadratic phase over Z_4.

use super::{Certificate, ClassId, ClassReport};
use crate::scalar::{Field, Scalar};
use crate::signature::{bitstring, parse_bitstring, Signature};
use crate::transforms::{apply_holographic, Mat2, Side};
use serde::Serialize;

/// `f(base + sum t_j b_j) = lambda * i^{sum c_j t_j + 2 sum_{(j,k)} t_j t_k}`,
/// zero off the affine span.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AffineCert {
    pub base: String,
    pub basis: Vec<String>,
    /// Z_4 coefficient per basis vector.
    pub linear: Vec<u8>,
    /// Pairs `(j, k)`, `j < k`, whose cross term has coefficient 2.
    pub quadratic: Vec<(usize, usize)>,
    pub lambda: Scalar,
}

impl AffineCert {
    /// Rebuild the table the certificate describes; `None` if it is malformed.
    pub fn rebuild(&self, n: usize) -> Option<Signature> {
        if self.base.len() != n || self.basis.iter().any(|b| b.len() != n) || self.linear.len() != self.basis.len() {
            return None;
        }
        let base = parse_bitstring(&self.base)?;
        let basis: Option<Vec<usize>> = self.basis.iter().map(|b| parse_bitstring(b)).collect();
        let basis = basis?;
        let r = basis.len();
        if self.quadratic.iter().any(|&(j, k)| j >= k || k >= r) || self.lambda.is_zero() {
            return None;
        }
        let mut table = vec![Scalar::zero(); 1 << n];
        let mut seen = vec![false; 1 << n];
        for t in 0..1usize << r {
            let on = |j: usize| (t >> j) & 1 == 1;
            let mut point = base;
            let mut e = 0u32;
            for (j, b) in basis.iter().enumerate() {
                if on(j) {
                    point ^= b;
                    e += self.linear[j] as u32;
                }
            }
            for &(j, k) in &self.quadratic {
                if on(j) && on(k) {
                    e += 2;
                }
            }
            if seen[point] {
                return None; // dependent basis
            }
            seen[point] = true;
            table[point] = self.lambda.mul_zeta(6 * (e % 4) as i64);
        }
        Some(Signature::from_table(table).expect("power of two"))
    }
}

/// Reduced row-echelon basis of the span of `vecs`, keyed by pivot bit.
pub(crate) fn f2_basis(vecs: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut basis: Vec<usize> = Vec::new();
    for v in vecs {
        let mut v = v;
        for b in &basis {
            let p = 1usize << (usize::BITS - 1 - b.leading_zeros());
            if v & p != 0 {
                v ^= b;
            }
        }
        if v != 0 {
            let p = 1usize << (usize::BITS - 1 - v.leading_zeros());
            for b in basis.iter_mut() {
                if *b & p != 0 {
                    *b ^= v;
                }
            }
            basis.push(v);
        }
    }
    basis.sort_unstable_by(|a, b| b.cmp(a));
    basis
}

/// `Some(base, basis)` when the support is an affine subspace; `base` has all
/// pivot bits clear.
pub(crate) fn affine_support(supp: &[usize]) -> Option<(usize, Vec<usize>)> {
    let first = *supp.first()?;
    let basis = f2_basis(supp.iter().map(|&s| s ^ first));
    if supp.len() != 1usize << basis.len() {
        return None;
    }
    let mut base = first;
    for b in &basis {
        let p = 1usize << (usize::BITS - 1 - b.leading_zeros());
        if base & p != 0 {
            base ^= b;
        }
    }
    Some((base, basis))
}

fn power_of_i(v: &Scalar, lambda: &Scalar) -> Option<u8> {
    (0..4u8).find(|&k| v == &lambda.mul_zeta(6 * k as i64))
}

pub fn in_a(f: &Signature) -> ClassReport {
    if f.is_trivial() {
        return ClassReport::member(ClassId::A, Certificate::Zero);
    }
    let n = f.arity();
    let supp = f.support();
    let Some((base, basis)) = affine_support(&supp) else {
        return ClassReport::non_member(ClassId::A, "support is not an affine subspace");
    };
    let lambda = f.get(base).clone();
    let r = basis.len();
    let mut linear = Vec::with_capacity(r);
    for b in &basis {
        let a = base ^ b;
        match power_of_i(f.get(a), &lambda) {
            Some(k) => linear.push(k),
            None => {
                return ClassReport::non_member(
                    ClassId::A,
                    format!("f({})/f({}) is not a power of i", bitstring(a, n), bitstring(base, n)),
                )
            }
        }
    }
    let mut quadratic = Vec::new();
    for j in 0..r {
        for k in j + 1..r {
            let a = base ^ basis[j] ^ basis[k];
            let expect = lambda.mul_zeta(6 * (linear[j] + linear[k]) as i64);
            if f.get(a) == &expect {
                continue;
            }
            if f.get(a) == &-&expect {
                quadratic.push((j, k));
            } else {
                return ClassReport::non_member(ClassId::A, format!("phase at {} is not quadratic", bitstring(a, n)));
            }
        }
    }
    let cert = AffineCert {
        base: bitstring(base, n),
        basis: basis.iter().map(|&b| bitstring(b, n)).collect(),
        linear,
        quadratic,
        lambda,
    };
    let g = cert.rebuild(n).expect("well formed");
    if let Some(a) = (0..1usize << n).find(|&a| g.get(a) != f.get(a)) {
        return ClassReport::non_member(ClassId::A, format!("phase at {} has a cubic term", bitstring(a, n)));
    }
    ClassReport::member(ClassId::A, Certificate::Affine(cert))
}

/// `f in T_d^r A`: undo `T_d^r` and test affinity.
pub fn in_a_dr(f: &Signature, d: u32, r: u32) -> Result<ClassReport, super::ClassError> {
    let field = if f.is_exact() { Field::Cyclo24 } else { f.field() };
    let t = Mat2::t_d(d, r, field).map_err(|_| super::ClassError::UnsupportedD(d))?;
    let tinv = t.inv().expect("diagonal unit");
    let g = apply_holographic(&tinv, f, Side::Column);
    let class = ClassId::Adr { d, r };
    let inner = in_a(&g);
    Ok(match inner.certificate {
        Some(c) if inner.member => ClassReport::member(
            class,
            Certificate::Transformed {
                matrix: tinv,
                inner: Box::new(c),
            },
        ),
        _ => ClassReport::non_member(class, inner.counterexample.unwrap_or_default()),
    })
}

/// `A_2^1 = T_2 A`.
pub fn in_a2(f: &Signature) -> ClassReport {
    in_a_dr(f, 2, 1).expect("T_2 is exact").with_class(ClassId::A2)
}

/// `(x)_j T_2^{alpha_j} f`: entry `beta` gains `zeta^{3 |alpha & beta|}`.
pub(crate) fn local_transform(f: &Signature, alpha: usize) -> Signature {
    f.map(|beta, v| v.mul_zeta(3 * (alpha & beta).count_ones() as i64))
}

pub fn in_l_local_affine(f: &Signature) -> ClassReport {
    if f.is_trivial() {
        return ClassReport::member(ClassId::L, Certificate::Zero);
    }
    let n = f.arity();
    let mut points = Vec::new();
    for a in f.support() {
        let r = in_a(&local_transform(f, a));
        match r.certificate {
            Some(Certificate::Affine(c)) => points.push((bitstring(a, n), c)),
            _ => return ClassReport::non_member(ClassId::L, format!("transform at support point {} is not affine", bitstring(a, n))),
        }
    }
    ClassReport::member(ClassId::L, Certificate::LocalAffine { points })
}
