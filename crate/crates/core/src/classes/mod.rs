//! Membership tests for the signature classes the dichotomies refer to.
//!
//! Every test returns a [`ClassReport`]; members carry a certificate that
//! [`replay`] re-checks from scratch without calling the test again. The zero
//! signature is a member of every class.

mod affine;
mod eo;
mod product;
mod rebalance;
mod search;

pub use affine::{in_a, in_a2, in_a_dr, in_l_local_affine, AffineCert};
pub use eo::{
    eo_pairing_class, eo_profile, exists3_class, is_eo, is_eo_geq, is_eo_leq, is_single_weighted, perfect_pairings, restrict_to_eo, to_eo_padding,
    EoProfile, Exists3, MAX_PAIRING_ARITY,
};
pub use product::{in_e, in_m, in_m_closure, in_p, in_r_closure, in_t_closure, in_xm_closure, is_vanishing};
pub use rebalance::{is_rebalancing, RebalanceCert, RebalanceNode};
pub use search::{builtin_candidates, derived_candidates, transformable_search, Candidate, Target, TransformCert};

use crate::scalar::Scalar;
use crate::signature::Signature;
use crate::transforms::Mat2;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassError {
    #[error("the zero signature has no profile")]
    TrivialSignature,
    #[error("support is not contained in the balanced slice")]
    NotEOSignature,
    #[error("support has more than one Hamming weight")]
    NotSingleWeighted,
    #[error("pairing enumeration is capped at arity {0}")]
    TooManyPairings(usize),
    #[error("T_{0} is not exact over Q(zeta_24)")]
    UnsupportedD(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassId {
    A,
    P,
    E,
    M,
    TClosure,
    MClosure,
    XMClosure,
    RClosure,
    L,
    A2,
    Adr { d: u32, r: u32 },
    EoMA,
    EoMP,
    Rebalancing0,
    Rebalancing1,
}

/// One support-shape fact used as a non-member witness or a certificate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorCert {
    pub vars: Vec<usize>,
    pub sig: Signature,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// Zero signature, member by convention.
    Zero,
    Affine(AffineCert),
    /// Support inside `{alpha, complement}`.
    ComplementPair {
        alpha: String,
    },
    /// Support weights all at most one.
    MatchingSupport,
    /// Tensor factors and overall scale.
    Factors {
        factors: Vec<FactorCert>,
        scale: Scalar,
        flipped: bool,
    },
    /// One certificate per perfect pairing.
    Pairings {
        pairings: Vec<PairingCert>,
    },
    Rebalancing(RebalanceCert),
    /// One affine certificate per support point.
    LocalAffine {
        points: Vec<(String, AffineCert)>,
    },
    /// Membership of a transformed signature.
    Transformed {
        matrix: Mat2,
        inner: Box<Certificate>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairingCert {
    pub pairing: Vec<(usize, usize)>,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassReport {
    pub class: ClassId,
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ClassReport {
    pub fn member(class: ClassId, cert: Certificate) -> ClassReport {
        let notes = if cert == Certificate::Zero {
            vec!["zero signature: member by convention".into()]
        } else {
            vec![]
        };
        ClassReport {
            class,
            member: true,
            certificate: Some(cert),
            counterexample: None,
            notes,
        }
    }

    pub fn non_member(class: ClassId, why: impl Into<String>) -> ClassReport {
        ClassReport {
            class,
            member: false,
            certificate: None,
            counterexample: Some(why.into()),
            notes: vec![],
        }
    }

    pub fn with_class(mut self, class: ClassId) -> ClassReport {
        self.class = class;
        self
    }
}

/// Re-derive membership from a report's certificate without rerunning the
/// membership test that produced it.
pub fn replay(f: &Signature, report: &ClassReport) -> bool {
    match &report.certificate {
        Some(c) => replay_cert(f, report.class, c),
        None => !report.member,
    }
}

pub(crate) fn replay_cert(f: &Signature, class: ClassId, cert: &Certificate) -> bool {
    use crate::factor::sub_index;
    use crate::signature::{bit, weight};
    match cert {
        Certificate::Zero => f.is_trivial(),
        Certificate::Affine(a) => a.rebuild(f.arity()).map_or(false, |g| &g == f),
        Certificate::ComplementPair { alpha } => {
            let n = f.arity();
            let Some(a) = crate::signature::parse_bitstring(alpha) else {
                return false;
            };
            let full = (1usize << n) - 1;
            f.support().iter().all(|&s| s == a || s == a ^ full)
        }
        Certificate::MatchingSupport => f.support().iter().all(|&s| weight(s) <= 1),
        Certificate::Factors { factors, scale, flipped } => {
            let n = f.arity();
            let target = if *flipped {
                f.map(|a, _| f.get(a ^ ((1usize << n) - 1)).clone())
            } else {
                f.clone()
            };
            let mut covered = vec![false; n];
            for fc in factors {
                for &v in &fc.vars {
                    if v >= n || covered[v] {
                        return false;
                    }
                    covered[v] = true;
                }
                if fc.sig.arity() != fc.vars.len() || !factor_shape_ok(class, &fc.sig) {
                    return false;
                }
            }
            if covered.iter().any(|c| !c) {
                return false;
            }
            (0..1usize << n).all(|alpha| {
                let mut acc = scale.clone();
                for fc in factors {
                    acc = &acc * fc.sig.get(sub_index(alpha, n, &fc.vars));
                }
                &acc == target.get(alpha)
            })
        }
        Certificate::Pairings { pairings } => {
            let n = f.arity();
            if n % 2 == 1 || pairings.len() != eo::double_factorial(n) {
                return false;
            }
            let inner = match class {
                ClassId::EoMA => ClassId::A,
                _ => ClassId::P,
            };
            let mut seen = std::collections::HashSet::new();
            pairings.iter().all(|pc| {
                let mut p = pc.pairing.clone();
                p.sort();
                let ok_pairing = eo::is_perfect_pairing(&p, n) && seen.insert(p);
                let g = f.restrict(|a| pc.pairing.iter().all(|&(x, y)| bit(a, n, x) != bit(a, n, y)));
                ok_pairing && replay_cert(&g, inner, &pc.certificate)
            })
        }
        Certificate::Rebalancing(rc) => rc.verify(f),
        Certificate::LocalAffine { points } => {
            let n = f.arity();
            let supp = f.support();
            if points.len() != supp.len() {
                return false;
            }
            points.iter().zip(supp.iter()).all(|((s, cert), &a)| {
                let ok = crate::signature::parse_bitstring(s) == Some(a);
                let g = affine::local_transform(f, a);
                ok && cert.rebuild(n).map_or(false, |h| h == g)
            })
        }
        Certificate::Transformed { matrix, inner } => {
            let g = crate::transforms::apply_holographic(matrix, f, crate::transforms::Side::Column);
            let inner_class = match class {
                ClassId::A2 | ClassId::Adr { .. } => ClassId::A,
                ClassId::XMClosure => ClassId::MClosure,
                c => c,
            };
            replay_cert(&g, inner_class, inner)
        }
    }
}

fn factor_shape_ok(class: ClassId, g: &Signature) -> bool {
    let n = g.arity();
    match class {
        ClassId::P => {
            let full = (1usize << n) - 1;
            let s = g.support();
            s.first().map_or(true, |&a| s.iter().all(|&b| b == a || b == a ^ full))
        }
        ClassId::TClosure => n <= 2,
        ClassId::MClosure | ClassId::XMClosure => g.support().iter().all(|&a| crate::signature::weight(a) <= 1),
        ClassId::RClosure => product::is_r_element(g),
        _ => false,
    }
}

/// Shorthand used by set-level checks.
pub fn all_members(fs: &[Signature], test: impl Fn(&Signature) -> ClassReport) -> (bool, Vec<ClassReport>) {
    let reports: Vec<ClassReport> = fs.iter().map(test).collect();
    (reports.iter().all(|r| r.member), reports)
}
