//! Eulerian-orientation predicates: weight profiles, padding, triple-XOR
//! flags and the pairing classes.

use super::{affine::in_a, product::in_p, Certificate, ClassError, ClassId, ClassReport, PairingCert};
use crate::signature::{bit, bitstring, weight, Signature};
use serde::Serialize;
use std::collections::HashSet;

/// Tightest label covering the support: every point balanced (`Eq`), at
/// least as many ones (`Geq`), at most as many (`Leq`), strictly more
/// (`Gt`), strictly fewer (`Lt`), or both strict sides present (`Mixed`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EoProfile {
    Eq,
    Geq,
    Leq,
    Gt,
    Lt,
    Mixed,
}

impl EoProfile {
    pub fn is_geq(self) -> bool {
        matches!(self, EoProfile::Eq | EoProfile::Geq | EoProfile::Gt)
    }

    pub fn is_leq(self) -> bool {
        matches!(self, EoProfile::Eq | EoProfile::Leq | EoProfile::Lt)
    }
}

pub fn eo_profile(f: &Signature) -> Result<EoProfile, ClassError> {
    if f.is_trivial() {
        return Err(ClassError::TrivialSignature);
    }
    let n = f.arity();
    let (mut eq, mut gt, mut lt) = (false, false, false);
    for a in f.support() {
        let w = 2 * weight(a);
        if w == n {
            eq = true;
        } else if w > n {
            gt = true;
        } else {
            lt = true;
        }
    }
    Ok(match (eq, gt, lt) {
        (_, true, true) => EoProfile::Mixed,
        (true, false, false) => EoProfile::Eq,
        (true, true, false) => EoProfile::Geq,
        (true, false, true) => EoProfile::Leq,
        (false, true, false) => EoProfile::Gt,
        (false, false, true) => EoProfile::Lt,
        (false, false, false) => unreachable!("nontrivial"),
    })
}

/// Support inside the balanced slice (the zero signature qualifies).
pub fn is_eo(f: &Signature) -> bool {
    let n = f.arity();
    f.support().iter().all(|&a| 2 * weight(a) == n)
}

pub fn is_eo_geq(f: &Signature) -> bool {
    eo_profile(f).map_or(true, EoProfile::is_geq)
}

pub fn is_eo_leq(f: &Signature) -> bool {
    eo_profile(f).map_or(true, EoProfile::is_leq)
}

/// `f|_EO`: zero outside the balanced slice.
pub fn restrict_to_eo(f: &Signature) -> Signature {
    let n = f.arity();
    f.restrict(|a| 2 * weight(a) == n)
}

/// The common Hamming weight of the support, if there is one.
pub fn is_single_weighted(f: &Signature) -> Option<usize> {
    let ws = f.support_weights();
    match ws.as_slice() {
        [d] => Some(*d),
        _ => None,
    }
}

/// `f (x) Delta_0^{2d-k}` when `2d >= k`, else `f (x) Delta_1^{k-2d}`.
pub fn to_eo_padding(f: &Signature) -> Result<Signature, ClassError> {
    let d = is_single_weighted(f).ok_or(ClassError::NotSingleWeighted)?;
    let k = f.arity();
    let (pad, c) = if 2 * d >= k { (2 * d - k, 0) } else { (k - 2 * d, 1) };
    let mut g = f.clone().relabeled();
    for _ in 0..pad {
        g = g.tensor_fresh(&Signature::delta(c)).expect("arity within cap");
    }
    Ok(g)
}

/// Where XORs of three support points can land.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exists3 {
    /// Some `a ^ b ^ c` is balanced but outside the support.
    pub escapes: bool,
    /// Some `a ^ b ^ c` has more ones than zeros.
    pub up: bool,
    /// Some `a ^ b ^ c` has fewer ones than zeros.
    pub down: bool,
    /// Neither `escapes` nor `up`.
    pub mitsu_down: bool,
    /// Neither `escapes` nor `down`.
    pub mitsu_up: bool,
    /// One witness triple and its XOR per raised flag, as bitstrings.
    pub witnesses: Vec<[String; 4]>,
}

/// Triple-XOR flags. Triples with a repeated point give `delta` in the
/// support, so only distinct triples are enumerated.
pub fn exists3_class(f: &Signature) -> Result<Exists3, ClassError> {
    if !is_eo(f) {
        return Err(ClassError::NotEOSignature);
    }
    let n = f.arity();
    let supp = f.support();
    let set: HashSet<usize> = supp.iter().copied().collect();
    let (mut escapes, mut up, mut down) = (false, false, false);
    let mut witnesses = Vec::new();
    let m = supp.len();
    'outer: for i in 0..m {
        for j in i + 1..m {
            let ab = supp[i] ^ supp[j];
            for k in j + 1..m {
                let d = ab ^ supp[k];
                let w = 2 * weight(d);
                let flag = if w == n {
                    if set.contains(&d) {
                        continue;
                    }
                    &mut escapes
                } else if w > n {
                    &mut up
                } else {
                    &mut down
                };
                if !*flag {
                    *flag = true;
                    witnesses.push([supp[i], supp[j], supp[k], d].map(|x| bitstring(x, n)));
                }
                if escapes && up && down {
                    break 'outer;
                }
            }
        }
    }
    Ok(Exists3 {
        escapes,
        up,
        down,
        mitsu_down: !escapes && !up,
        mitsu_up: !escapes && !down,
        witnesses,
    })
}

pub(crate) fn double_factorial(n: usize) -> usize {
    if n % 2 == 1 {
        return 0;
    }
    (1..n).step_by(2).product()
}

pub(crate) fn is_perfect_pairing(p: &[(usize, usize)], n: usize) -> bool {
    let mut seen = vec![false; n];
    for &(a, b) in p {
        if a >= n || b >= n || a == b || seen[a] || seen[b] {
            return false;
        }
        seen[a] = true;
        seen[b] = true;
    }
    seen.iter().all(|&s| s)
}

pub const MAX_PAIRING_ARITY: usize = 12;

/// All perfect pairings of `0..n`, each listed with `a < b` and sorted.
pub fn perfect_pairings(n: usize) -> Result<Vec<Vec<(usize, usize)>>, ClassError> {
    if n > MAX_PAIRING_ARITY {
        return Err(ClassError::TooManyPairings(MAX_PAIRING_ARITY));
    }
    fn rec(free: &mut Vec<usize>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let a = free.remove(0);
        for idx in 0..free.len() {
            let b = free.remove(idx);
            cur.push((a, b));
            rec(free, cur, out);
            cur.pop();
            free.insert(idx, b);
        }
        free.insert(0, a);
    }
    let mut out = Vec::new();
    if n % 2 == 0 {
        rec(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    }
    Ok(out)
}

/// For every perfect pairing `P`, `f` restricted to `P`-unequal assignments
/// lies in `A` (`which = ClassId::A`) or `P` (anything else).
pub fn eo_pairing_class(f: &Signature, which: ClassId) -> Result<ClassReport, ClassError> {
    if !is_eo(f) {
        return Err(ClassError::NotEOSignature);
    }
    let (class, test): (ClassId, fn(&Signature) -> ClassReport) = match which {
        ClassId::A => (ClassId::EoMA, in_a),
        _ => (ClassId::EoMP, in_p),
    };
    if f.is_trivial() {
        return Ok(ClassReport::member(class, Certificate::Zero));
    }
    let n = f.arity();
    let mut pairings = Vec::new();
    for p in perfect_pairings(n)? {
        let g = f.restrict(|a| p.iter().all(|&(x, y)| bit(a, n, x) != bit(a, n, y)));
        let r = test(&g);
        match r.certificate {
            Some(c) if r.member => pairings.push(PairingCert { pairing: p, certificate: c }),
            _ => {
                let names: Vec<String> = p.iter().map(|&(x, y)| format!("{{x{},x{}}}", x + 1, y + 1)).collect();
                return Ok(ClassReport::non_member(
                    class,
                    format!(
                        "restriction to pairing {} fails: {}",
                        names.join(""),
                        r.counterexample.unwrap_or_default()
                    ),
                ));
            }
        }
    }
    Ok(ClassReport::member(class, Certificate::Pairings { pairings }))
}
