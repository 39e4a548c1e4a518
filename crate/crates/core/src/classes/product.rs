//! Support-shape classes and closures checked factor by factor.

use super::{eo, Certificate, ClassId, ClassReport, FactorCert};
use crate::factor::upf;
use crate::scalar::Scalar;
use crate::signature::{bitstring, weight, Signature};
use crate::transforms::hat;

fn complement_pair(g: &Signature) -> bool {
    let n = g.arity();
    let full = (1usize << n) - 1;
    let s = g.support();
    s.first().map_or(true, |&a| s.iter().all(|&b| b == a || b == a ^ full))
}

fn matching(g: &Signature) -> bool {
    g.support().iter().all(|&a| weight(a) <= 1)
}

pub fn in_e(f: &Signature) -> ClassReport {
    let n = f.arity();
    match f.first_nonzero() {
        None => ClassReport::member(ClassId::E, Certificate::Zero),
        Some((a, _)) if complement_pair(f) => ClassReport::member(ClassId::E, Certificate::ComplementPair { alpha: bitstring(a, n) }),
        Some(_) => ClassReport::non_member(ClassId::E, "support is not inside a complementary pair"),
    }
}

pub fn in_m(f: &Signature) -> ClassReport {
    let n = f.arity();
    if f.is_trivial() {
        return ClassReport::member(ClassId::M, Certificate::Zero);
    }
    match f.support().into_iter().find(|&a| weight(a) > 1) {
        None => ClassReport::member(ClassId::M, Certificate::MatchingSupport),
        Some(a) => ClassReport::non_member(ClassId::M, format!("support point {} has weight > 1", bitstring(a, n))),
    }
}

/// Factor-wise closure check; `flip` tests `X f` instead of `f`.
fn closure(f: &Signature, class: ClassId, flip: bool, ok: impl Fn(&Signature) -> bool, what: &str) -> ClassReport {
    if f.is_trivial() {
        return ClassReport::member(class, Certificate::Zero);
    }
    let n = f.arity();
    let target = if flip {
        f.map(|a, _| f.get(a ^ ((1usize << n) - 1)).clone())
    } else {
        f.clone()
    };
    let fac = upf(&target).expect("nontrivial");
    for fc in &fac.factors {
        if !ok(&fc.sig) {
            let vars: Vec<String> = fc.vars.iter().map(|v| format!("x{}", v + 1)).collect();
            return ClassReport::non_member(class, format!("irreducible factor on ({}) is not {}", vars.join(","), what));
        }
    }
    let factors = fac.factors.into_iter().map(|f| FactorCert { vars: f.vars, sig: f.sig }).collect();
    ClassReport::member(
        class,
        Certificate::Factors {
            factors,
            scale: fac.scale,
            flipped: flip,
        },
    )
}

/// Products of unary signatures, `=_2` and `!=_2`: every irreducible factor
/// is supported on a complementary pair.
pub fn in_p(f: &Signature) -> ClassReport {
    // product-type supports are affine; reject cheaply first
    if !f.is_trivial() && super::affine::affine_support(&f.support()).is_none() {
        return ClassReport::non_member(ClassId::P, "support is not an affine subspace");
    }
    closure(f, ClassId::P, false, complement_pair, "supported on a complementary pair")
}

pub fn in_t_closure(f: &Signature) -> ClassReport {
    closure(f, ClassId::TClosure, false, |g| g.arity() <= 2, "of arity at most 2")
}

pub fn in_m_closure(f: &Signature) -> ClassReport {
    closure(f, ClassId::MClosure, false, matching, "a matching signature")
}

/// `f in <X M>` iff flipping every bit lands in `<M>`.
pub fn in_xm_closure(f: &Signature) -> ClassReport {
    closure(f, ClassId::XMClosure, true, matching, "a flipped matching signature")
}

/// Multiple of `Delta_0` or of `[-k, 1, 0, ..., 0]_{k+2}` for `k >= -1`.
pub(crate) fn is_r_element(g: &Signature) -> bool {
    let n = g.arity();
    if n == 0 {
        return false;
    }
    if n == 1 && g.is_multiple_of(&Signature::delta0()) {
        return true;
    }
    let k = n as i64 - 2;
    let mut profile = vec![Scalar::zero(); n + 1];
    profile[0] = Scalar::int(-k);
    profile[1] = Scalar::one();
    g.is_multiple_of(&Signature::symmetric(&profile))
}

/// Membership of `<R>`, applied to a signature already in the hat world.
pub fn in_r_closure(fh: &Signature) -> ClassReport {
    closure(fh, ClassId::RClosure, false, is_r_element, "a multiple of Delta_0 or [-k,1,0,...,0]")
}

/// `f` is vanishing iff `f_hat` is strictly unbalanced one way on its support.
pub fn is_vanishing(f: &Signature) -> bool {
    if f.is_trivial() {
        return true;
    }
    matches!(eo::eo_profile(&hat(f)), Ok(eo::EoProfile::Gt) | Ok(eo::EoProfile::Lt))
}
