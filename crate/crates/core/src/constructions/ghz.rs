//! Ternary entanglement type and the GHZ normal form `h = M^{(x)3} [1,0,0,1]`.

use super::{ConstructionError, GadgetScript, Step};
use crate::factor::is_irreducible;
use crate::roots::scalar_root;
use crate::scalar::Scalar;
use crate::signature::Signature;
use crate::transforms::{apply_holographic, Mat2, Side};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Entanglement {
    GHZ,
    W,
}

/// Cayley's hyperdeterminant of a ternary table.
pub fn hyperdeterminant(g: &Signature) -> Result<Scalar, ConstructionError> {
    if g.arity() != 3 {
        return Err(ConstructionError::NotTernary);
    }
    let a = |s: usize| g.get(s).clone();
    let (a0, a1, a2, a3, a4, a5, a6, a7) = (a(0), a(1), a(2), a(3), a(4), a(5), a(6), a(7));
    let sq = |x: &Scalar| x * x;
    // the four antipodal pairs
    let p = [&a0 * &a7, &a1 * &a6, &a2 * &a5, &a4 * &a3];
    let mut d = sq(&p[0]) + sq(&p[1]) + sq(&p[2]) + sq(&p[3]);
    let mut cross = Scalar::zero();
    for i in 0..4 {
        for j in i + 1..4 {
            cross = &cross + &(&p[i] * &p[j]);
        }
    }
    d = &d - &(&cross * &Scalar::int(2));
    let t = &(&(&a0 * &a3) * &(&a5 * &a6)) + &(&(&a7 * &a4) * &(&a2 * &a1));
    Ok(&d + &(&t * &Scalar::int(4)))
}

/// GHZ when the hyperdeterminant is nonzero, W otherwise; reducible inputs
/// are rejected.
pub fn entanglement_class(g: &Signature) -> Result<Entanglement, ConstructionError> {
    if g.arity() != 3 {
        return Err(ConstructionError::NotTernary);
    }
    if g.is_trivial() || !is_irreducible(g).unwrap_or(false) {
        return Err(ConstructionError::Reducible);
    }
    Ok(if hyperdeterminant(g)?.is_zero() {
        Entanglement::W
    } else {
        Entanglement::GHZ
    })
}

/// Directions `v_1, v_2` and weights `c_1, c_2` with `h = sum c_j v_j^{(x)3}`.
fn ghz_parts(h: &Signature) -> Result<([[Scalar; 2]; 2], [Scalar; 2]), ConstructionError> {
    if h.arity() != 3 {
        return Err(ConstructionError::NotTernary);
    }
    let p = h.to_symmetric().ok_or(ConstructionError::NotSymmetric)?;
    if h.is_trivial() || hyperdeterminant(h)?.is_zero() {
        return Err(ConstructionError::NotGHZ);
    }
    // annihilator of the Hankel rows [h0 h1 h2], [h1 h2 h3]
    let q0 = &(&p[1] * &p[3]) - &(&p[2] * &p[2]);
    let q1 = &(&p[2] * &p[1]) - &(&p[0] * &p[3]);
    let q2 = &(&p[0] * &p[2]) - &(&p[1] * &p[1]);
    // roots of q0 x^2 + q1 x y + q2 y^2 in the direction v = (x, y)
    let dirs: [[Scalar; 2]; 2] = if q2.is_zero() {
        if q1.is_zero() {
            return Err(ConstructionError::NotGHZ);
        }
        [[Scalar::one(), (-&q0).div(&q1).expect("nonzero")], [Scalar::zero(), Scalar::one()]]
    } else {
        let disc = &(&q1 * &q1) - &(&(&q0 * &q2) * &Scalar::int(4));
        if disc.is_zero() {
            return Err(ConstructionError::NotGHZ);
        }
        let s = scalar_root(&disc, 2).ok_or(ConstructionError::LeavesField)?;
        let two_q2 = &q2 * &Scalar::int(2);
        let t1 = (&(-&q1) + &s).div(&two_q2).expect("nonzero");
        let t2 = (&(-&q1) - &s).div(&two_q2).expect("nonzero");
        [[Scalar::one(), t1], [Scalar::one(), t2]]
    };
    // h_k = c1 x1^{3-k} y1^k + c2 x2^{3-k} y2^k; solve from two independent rows
    let coef = |v: &[Scalar; 2], k: u32| &v[0].pow(3 - k) * &v[1].pow(k);
    for (r, s) in [(0u32, 3u32), (0, 1), (0, 2), (1, 2), (1, 3), (2, 3)] {
        let (a, b, c, d) = (coef(&dirs[0], r), coef(&dirs[1], r), coef(&dirs[0], s), coef(&dirs[1], s));
        let det = &(&a * &d) - &(&b * &c);
        if det.is_zero() {
            continue;
        }
        let (hr, hs) = (&p[r as usize], &p[s as usize]);
        let c1 = (&(&d * hr) - &(&b * hs)).div(&det).expect("nonzero");
        let c2 = (&(&a * hs) - &(&c * hr)).div(&det).expect("nonzero");
        if c1.is_zero() || c2.is_zero() {
            return Err(ConstructionError::NotGHZ);
        }
        return Ok((dirs, [c1, c2]));
    }
    Err(ConstructionError::NotGHZ)
}

fn columns(v1: &[Scalar; 2], s1: &Scalar, v2: &[Scalar; 2], s2: &Scalar) -> Mat2 {
    Mat2::new(&v1[0] * s1, &v2[0] * s2, &v1[1] * s1, &v2[1] * s2)
}

fn ghz_image(m: &Mat2, field: crate::scalar::Field) -> Signature {
    apply_holographic(m, &Signature::eq(3).into_field(field), Side::Column)
}

/// Unscaled directions `[v_1 v_2]` (as columns) of a symmetric GHZ-type `h`.
/// Needs only a square root, never a cube root.
pub fn ghz_directions(h: &Signature) -> Result<Mat2, ConstructionError> {
    let ([v1, v2], _) = ghz_parts(h)?;
    let one = Scalar::one().into_field(h.field());
    Ok(columns(&v1, &one, &v2, &one))
}

/// `M` with `h = M^{(x)3} (=_3)` exactly. Needs cube roots (and a square
/// root for the directions) inside the field.
pub fn ghz_normal_form(h: &Signature) -> Result<Mat2, ConstructionError> {
    let ([v1, v2], [c1, c2]) = ghz_parts(h)?;
    let s1 = scalar_root(&c1, 3).ok_or(ConstructionError::LeavesField)?;
    let s2 = scalar_root(&c2, 3).ok_or(ConstructionError::LeavesField)?;
    let m = columns(&v1, &s1, &v2, &s2);
    if ghz_image(&m, h.field()) != h.clone().relabeled() {
        return Err(ConstructionError::LeavesField);
    }
    Ok(m)
}

/// `M` with `h` a nonzero multiple of `M^{(x)3} (=_3)`; only the ratio of the
/// two weights has to be a cube.
pub fn ghz_normal_form_projective(h: &Signature) -> Result<Mat2, ConstructionError> {
    let ([v1, v2], [c1, c2]) = ghz_parts(h)?;
    let one = Scalar::one().into_field(h.field());
    let tries = [(c1.div(&c2).expect("nonzero"), true), (c2.div(&c1).expect("nonzero"), false)];
    for (ratio, first) in tries {
        let Some(r) = scalar_root(&ratio, 3) else {
            continue;
        };
        let m = if first {
            columns(&v1, &r, &v2, &one)
        } else {
            columns(&v1, &one, &v2, &r)
        };
        if h.is_multiple_of(&ghz_image(&m, h.field())) {
            return Ok(m);
        }
    }
    Err(ConstructionError::LeavesField)
}

/// The normal form as a replayable script: `=_3` pushed through `M`.
pub fn ghz_normal_form_script(h: &Signature) -> Result<GadgetScript, ConstructionError> {
    let m = ghz_normal_form(h)?;
    let mut s = GadgetScript::new("ghz_normal_form", ("eq3", &Signature::eq(3).into_field(h.field())));
    s.steps.push(Step::Transform {
        matrix: m,
        side: Side::Column,
    });
    s.claimed = h.clone().relabeled();
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes() {
        assert_eq!(entanglement_class(&Signature::eq(3)).unwrap(), Entanglement::GHZ);
        assert_eq!(entanglement_class(&Signature::symmetric_ints(&[0, 1, 0, 0])).unwrap(), Entanglement::W);
        let red = Signature::from_ints(&[1, 2]).tensor_power(3).unwrap();
        assert_eq!(entanglement_class(&red), Err(ConstructionError::Reducible));
    }

    #[test]
    fn normal_forms() {
        assert_eq!(ghz_normal_form(&Signature::eq(3)).unwrap(), Mat2::identity());
        let m = ghz_normal_form(&Signature::symmetric_ints(&[2, 0, 2, 0])).unwrap();
        assert_eq!(ghz_image(&m, crate::scalar::Field::Cyclo24), Signature::symmetric_ints(&[2, 0, 2, 0]));
        let cols: Vec<_> = [0, 1].iter().map(|&c| (m.get(0, c).clone(), m.get(1, c).clone())).collect();
        assert!(cols.contains(&(Scalar::one(), Scalar::one())));
        assert!(cols.contains(&(Scalar::one(), Scalar::int(-1))));
        assert!(ghz_normal_form_script(&Signature::symmetric_ints(&[2, 0, 2, 0])).unwrap().verify());
    }

    #[test]
    fn projective_when_weights_are_not_cubes() {
        // 2 (=_3) has no exact cube root of 2, but is a multiple of (=_3)
        let h = Signature::eq(3).scale(&Scalar::int(2));
        assert_eq!(ghz_normal_form(&h), Err(ConstructionError::LeavesField));
        let m = ghz_normal_form_projective(&h).unwrap();
        assert!(h.is_multiple_of(&ghz_image(&m, crate::scalar::Field::Cyclo24)));
        assert_eq!(ghz_normal_form(&Signature::symmetric_ints(&[0, 1, 0, 0])), Err(ConstructionError::NotGHZ));
        assert_eq!(
            ghz_normal_form(&Signature::from_ints(&[1, 0, 0, 0, 0, 0, 1, 1])),
            Err(ConstructionError::NotSymmetric)
        );
    }
}
