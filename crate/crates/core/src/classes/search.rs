//! Candidate-based search for a basis change `M` with `(=_2) M` and
//! `M^{-1} F` inside a target class. Sound, not complete: a miss means the
//! candidates ran out, not that no `M` exists.

use super::{affine::in_a, affine::in_l_local_affine, product::in_p, replay_cert, Certificate, ClassId, ClassReport};
use crate::factor::upf;
use crate::literal::format_scalar;
use crate::scalar::{Field, Scalar};
use crate::signature::Signature;
use crate::transforms::{apply_holographic, Mat2, Side};
use serde::Serialize;
use std::collections::HashSet;
use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Target {
    A,
    P,
    L,
}

impl Target {
    pub fn class(self) -> ClassId {
        match self {
            Target::A => ClassId::A,
            Target::P => ClassId::P,
            Target::L => ClassId::L,
        }
    }

    fn test(self, f: &Signature) -> ClassReport {
        match self {
            Target::A => in_a(f),
            Target::P => in_p(f),
            Target::L => in_l_local_affine(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Candidate {
    pub name: String,
    pub matrix: Mat2,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransformCert {
    pub target: Target,
    pub matrix: Mat2,
    /// Where the matrix came from (`builtin:...`, `user:...`, `derived:...`).
    pub source: String,
    /// Certificate that `(=_2) M` is in the target.
    pub eq2_image: Certificate,
    /// Certificate that `M^{-1} f` is in the target, per input signature.
    pub images: Vec<Certificate>,
}

impl TransformCert {
    /// Re-check the transform against `fs` using only the certificates.
    pub fn verify(&self, fs: &[Signature]) -> bool {
        let Ok(minv) = self.matrix.inv() else {
            return false;
        };
        let class = self.target.class();
        let e = apply_holographic(&self.matrix, &Signature::eq(2), Side::Row);
        if !replay_cert(&e, class, &self.eq2_image) || self.images.len() != fs.len() {
            return false;
        }
        fs.iter()
            .zip(self.images.iter())
            .all(|(f, c)| replay_cert(&apply_holographic(&minv, f, Side::Column), class, c))
    }
}

fn key(m: &Mat2) -> String {
    let n = m.normalized();
    n.m.iter().flatten().map(format_scalar).collect::<Vec<_>>().join(",")
}

fn push(out: &mut Vec<Candidate>, seen: &mut HashSet<String>, name: String, m: Mat2) {
    if m.is_invertible() && seen.insert(key(&m)) {
        out.push(Candidate { name, matrix: m });
    }
}

fn unary_in_a(a: &Scalar, b: &Scalar) -> bool {
    in_a(&Signature::unary(a.clone(), b.clone())).member
}

fn build_builtins() -> Vec<Candidate> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let named = [
        ("I", Mat2::identity()),
        ("K", Mat2::k()),
        ("KX", Mat2::k().mul(&Mat2::x())),
        ("Kinv", Mat2::k_inv()),
        ("X", Mat2::x()),
        ("H", Mat2::hadamard()),
        ("Z", Mat2::z()),
    ];
    for (n, m) in named {
        push(&mut out, &mut seen, n.to_string(), m);
    }
    for k in 0..24 {
        let d = Mat2::diag(Scalar::one(), Scalar::zeta(k));
        push(&mut out, &mut seen, format!("diag(1,w^{})", k), d.clone());
        push(&mut out, &mut seen, format!("K*diag(1,w^{})", k), Mat2::k().mul(&d));
        push(&mut out, &mut seen, format!("KX*diag(1,w^{})", k), Mat2::k().mul(&Mat2::x()).mul(&d));
        push(&mut out, &mut seen, format!("H*diag(1,w^{})", k), Mat2::hadamard().mul(&d));
        push(&mut out, &mut seen, format!("diag(1,w^{})*H", k), d.mul(&Mat2::hadamard()));
    }
    for a in 1..=4i64 {
        for b in -4..=4i64 {
            push(&mut out, &mut seen, format!("ortho({},{})", a, b), Mat2::ints(a, b, -b, a));
            push(&mut out, &mut seen, format!("reflect({},{})", a, b), Mat2::ints(a, b, b, -a));
        }
    }
    // entries from {0} and the eighth roots of unity
    let vals: Vec<(String, Scalar)> = std::iter::once(("0".to_string(), Scalar::zero()))
        .chain((0..8).map(|k| (format!("w^{}", 3 * k), Scalar::zeta(3 * k))))
        .collect();
    let eq2 = Signature::eq(2);
    for a in &vals {
        for b in &vals {
            if !unary_in_a(&a.1, &b.1) {
                continue;
            }
            for c in &vals {
                for d in &vals {
                    let m = Mat2::new(a.1.clone(), b.1.clone(), c.1.clone(), d.1.clone());
                    if !m.is_invertible() || !unary_in_a(&c.1, &d.1) || seen.contains(&key(&m)) {
                        continue;
                    }
                    if in_a(&apply_holographic(&m, &eq2, Side::Row)).member {
                        push(&mut out, &mut seen, format!("B[{},{};{},{}]", a.0, b.0, c.0, d.0), m);
                    }
                }
            }
        }
    }
    out
}

/// Built-in candidates, deduplicated up to scale; built once per process.
pub fn builtin_candidates(field: Field) -> Vec<Candidate> {
    static CACHE: OnceLock<Vec<Candidate>> = OnceLock::new();
    let base = CACHE.get_or_init(build_builtins);
    match field {
        Field::Cyclo24 => base.clone(),
        f => base
            .iter()
            .map(|c| Candidate {
                name: c.name.clone(),
                matrix: c.matrix.clone().into_field(f),
            })
            .collect(),
    }
}

/// Candidates read off the input: each symmetric GHZ-type ternary factor
/// `h = M_h [1,0,0,1]` contributes `M_h P B` for the stabilizer choices `P`
/// and every built-in `B`, so the search follows `F` under a basis change.
/// The unscaled direction matrix of `h` is used the same way.
pub fn derived_candidates(fs: &[Signature], field: Field) -> Vec<Candidate> {
    let mut hs: Vec<Signature> = Vec::new();
    for f in fs {
        if f.is_trivial() {
            continue;
        }
        let Ok(fac) = upf(f) else { continue };
        for fc in fac.factors {
            if fc.sig.arity() == 3 && fc.sig.to_symmetric().is_some() && !hs.iter().any(|h| h.is_multiple_of(&fc.sig)) {
                hs.push(fc.sig.clone().relabeled());
            }
        }
    }
    let base = builtin_candidates(field);
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (hi, h) in hs.iter().enumerate() {
        // the projective normal form needs a cube root of the weight ratio;
        // the bare directions always serve targets that absorb the weights
        let mut bases = Vec::new();
        if let Ok(mh) = crate::constructions::ghz_normal_form_projective(h) {
            bases.push(("", mh, 3));
        }
        if let Ok(d) = crate::constructions::ghz_directions(h) {
            bases.push(("dir:", d, 1));
        }
        for (tag, mh, turns) in bases {
            for flip in [false, true] {
                for k in 0..turns {
                    let mut p = Mat2::diag(Scalar::one(), Scalar::omega().pow(k)).into_field(field);
                    if flip {
                        p = Mat2::x().into_field(field).mul(&p);
                    }
                    let mp = mh.mul(&p);
                    for b in &base {
                        push(
                            &mut out,
                            &mut seen,
                            format!("derived:{}h{}*{}diag(1,w^{})*{}", tag, hi, if flip { "X*" } else { "" }, 8 * k, b.name),
                            mp.mul(&b.matrix),
                        );
                    }
                }
            }
        }
    }
    out
}

fn try_candidate(fs: &[Signature], target: Target, m: &Mat2) -> Option<(Certificate, Vec<Certificate>)> {
    let e = target.test(&apply_holographic(m, &Signature::eq(2), Side::Row));
    if !e.member {
        return None;
    }
    let minv = m.inv().ok()?;
    let mut images = Vec::with_capacity(fs.len());
    for f in fs {
        let r = target.test(&apply_holographic(&minv, f, Side::Column));
        if !r.member {
            return None;
        }
        images.push(r.certificate?);
    }
    Some((e.certificate?, images))
}

/// First candidate `M` (built-in, then user-supplied, then derived from `F`)
/// with `(=_2) M` and all of `M^{-1} F` in the target; `None` when every
/// candidate fails.
pub fn transformable_search(fs: &[Signature], target: Target, extra: &[Mat2]) -> Option<TransformCert> {
    let field = fs.iter().map(|f| f.field()).find(|f| !f.is_exact()).unwrap_or(Field::Cyclo24);
    let user = extra.iter().enumerate().map(|(i, m)| Candidate {
        name: format!("user:{}", i),
        matrix: m.clone().into_field(field),
    });
    let builtin = builtin_candidates(field).into_iter().map(|c| Candidate {
        name: format!("builtin:{}", c.name),
        matrix: c.matrix,
    });
    let all = builtin.chain(user);
    for c in all {
        if let Some((eq2_image, images)) = try_candidate(fs, target, &c.matrix) {
            return Some(TransformCert {
                target,
                matrix: c.matrix,
                source: c.name,
                eq2_image,
                images,
            });
        }
    }
    for c in derived_candidates(fs, field) {
        if let Some((eq2_image, images)) = try_candidate(fs, target, &c.matrix) {
            return Some(TransformCert {
                target,
                matrix: c.matrix,
                source: c.name,
                eq2_image,
                images,
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_found() {
        let fs = [Signature::eq(3)];
        let c = transformable_search(&fs, Target::A, &[]).unwrap();
        assert_eq!(c.matrix, Mat2::identity());
        assert!(c.verify(&fs));
        let fs = [Signature::neq2()];
        let c = transformable_search(&fs, Target::P, &[]).unwrap();
        assert_eq!(c.matrix, Mat2::identity());
    }

    #[test]
    fn w_state_exhausts() {
        assert!(transformable_search(&[Signature::symmetric_ints(&[0, 1, 0, 0])], Target::A, &[]).is_none());
    }

    #[test]
    fn builtins_are_deduplicated() {
        let b = builtin_candidates(Field::Cyclo24);
        let keys: HashSet<String> = b.iter().map(|c| key(&c.matrix)).collect();
        assert_eq!(keys.len(), b.len());
        assert!(b.iter().any(|c| c.name.starts_with("B[")));
    }
}
