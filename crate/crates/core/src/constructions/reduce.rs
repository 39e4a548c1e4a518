//! Arity reductions by self-loops and pins.

use super::{ConstructionError, GadgetScript, Step};
use crate::scalar::Scalar;
use crate::signature::{bit, bitstring, weight, Signature};
use crate::transforms::{hat, ortho_from_unary, Mat2};
use serde::Serialize;

/// Drop positions `i < j` from an `n`-bit string.
fn remove2(alpha: usize, n: usize, i: usize, j: usize) -> usize {
    let mut out = 0;
    for k in 0..n {
        if k != i && k != j {
            out = (out << 1) | bit(alpha, n, k);
        }
    }
    out
}

fn set_bit(alpha: usize, n: usize, k: usize, v: usize) -> usize {
    let mask = 1 << (n - 1 - k);
    if v == 1 {
        alpha | mask
    } else {
        alpha & !mask
    }
}

/// One `!=_2` self-loop that keeps a nonzero entry. `m` is the bit to sacrifice
/// against: with `a`, `c` the first two `m` positions and `b` the first other
/// position, one of the loops `{a,b}`, `{b,c}`, `{a,c}` is nonzero at `alpha`
/// with the leftover position set to `m`. Returns `(i, j, new alpha)`.
pub(crate) fn loop_step(g: &Signature, alpha: usize, m: usize) -> Option<(usize, usize, usize)> {
    let n = g.arity();
    let pos = |v: usize| (0..n).filter(move |&k| bit(alpha, n, k) == v);
    let mut ms = pos(m);
    let (a, c) = (ms.next()?, ms.next()?);
    let b = pos(1 - m).next()?;
    let mut pairs = [(a, b, c), (b, c, a), (a, c, b)];
    pairs.iter_mut().for_each(|p| {
        if p.0 > p.1 {
            std::mem::swap(&mut p.0, &mut p.1);
        }
    });
    pairs.sort();
    for (i, j, rest) in pairs {
        let base = set_bit(alpha, n, rest, m);
        let x = set_bit(set_bit(base, n, i, 0), n, j, 1);
        let y = set_bit(set_bit(base, n, i, 1), n, j, 0);
        if !(g.get(x) + g.get(y)).is_zero() {
            return Some((i, j, remove2(base, n, i, j)));
        }
    }
    None
}

/// `!=_2` self-loops from `f` down to arity `|#1(alpha) - #0(alpha)|`, keeping
/// the value at the all-majority string nonzero.
pub fn selfloop_reduce(f: &Signature, alpha: usize) -> Result<GadgetScript, ConstructionError> {
    let n = f.arity();
    if alpha >> n != 0 || !f.in_support(alpha) {
        return Err(ConstructionError::NotInSupport(bitstring(alpha, n)));
    }
    let ones = weight(alpha);
    if 2 * ones == n {
        return Err(ConstructionError::NoImbalancedSupport);
    }
    let m = usize::from(2 * ones > n);
    let mut script = GadgetScript::new("selfloop_reduce", ("f", f));
    script.with_input("neq2", &Signature::neq2().into_field(f.field()));
    let (mut g, mut a) = (f.clone().relabeled(), alpha);
    while weight(a) != 0 && weight(a) != g.arity() {
        let (i, j, next) = loop_step(&g, a, m).expect("one of the three loops survives");
        g = g.self_loop(i, j, &Signature::neq2())?;
        script.steps.push(Step::SelfLoop { i, j, b: "neq2".into() });
        a = next;
    }
    script.claimed = g;
    Ok(script)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaPower {
    pub script: GadgetScript,
    pub lambda: Scalar,
    /// Pinned value `c` of `Delta_c`.
    pub c: u8,
    pub r: usize,
}

/// For `f` whose support is strictly one-sided, self-loops yield
/// `lambda Delta_c^{(x)r}`: `c = 1` when every support string has more ones.
pub fn extract_delta_power(f: &Signature) -> Result<DeltaPower, ConstructionError> {
    let n = f.arity();
    let supp = f.support();
    if supp.is_empty() {
        return Err(ConstructionError::TrivialSignature);
    }
    let imb = |a: usize| 2 * weight(a) as i64 - n as i64;
    let c = if supp.iter().all(|&a| imb(a) > 0) {
        1
    } else if supp.iter().all(|&a| imb(a) < 0) {
        0
    } else {
        return Err(ConstructionError::NotStrictEO);
    };
    let alpha = *supp.iter().min_by_key(|&&a| imb(a).abs()).expect("nonempty");
    let script = selfloop_reduce(f, alpha)?;
    let r = script.claimed.arity();
    let pure = if c == 1 { (1usize << r) - 1 } else { 0 };
    let lambda = script.claimed.get(pure).clone();
    let expect = Signature::delta(c).tensor_power(r)?.scale(&lambda);
    if script.claimed != expect {
        return Err(ConstructionError::NotStrictEO);
    }
    Ok(DeltaPower {
        script,
        lambda,
        c: c as u8,
        r,
    })
}

/// Given support points `alpha`, `beta` of `f`, pin and `!=_2`-loop until the
/// two points become `0^m` and `1^m` with `m` the gap `#1(beta) - #1(alpha)`
/// in absolute value. Both images stay in the support.
pub fn reduce_arity_gap(f: &Signature, alpha: usize, beta: usize) -> Result<GadgetScript, ConstructionError> {
    let n = f.arity();
    for s in [alpha, beta] {
        if s >> n != 0 || !f.in_support(s) {
            return Err(ConstructionError::NotInSupport(bitstring(s, n)));
        }
    }
    let pure = |s: usize, k: usize| s == 0 || s == (1usize << k) - 1;
    if pure(alpha, n) && pure(beta, n) {
        return Err(ConstructionError::BothPureStrings);
    }
    let mut script = GadgetScript::new("reduce_arity_gap", ("f", f));
    script.with_input("neq2", &Signature::neq2().into_field(f.field()));
    let (mut g, mut a, mut b) = (f.clone().relabeled(), alpha, beta);
    loop {
        let k = g.arity();
        if k == 0 || (pure(a, k) && a ^ b == (1usize << k) - 1) {
            break;
        }
        if let Some(i) = (0..k).find(|&i| bit(a, k, i) == bit(b, k, i)) {
            let v = bit(a, k, i);
            g = g.pin(i, v)?;
            script.steps.push(Step::Pin { var: i, bit: v as u8 });
            let drop = |s: usize| ((s >> (k - i)) << (k - 1 - i)) | (s & ((1 << (k - 1 - i)) - 1));
            a = drop(a);
            b = drop(b);
            continue;
        }
        // b is the complement of a and a is mixed
        let p = (0..k).find(|&i| bit(a, k, i) == 0).expect("mixed");
        let q = (0..k).find(|&i| bit(a, k, i) == 1).expect("mixed");
        // a with (p, q) <- b's bits, and b with (p, q) <- a's bits
        let swap_pq = |s: usize| set_bit(set_bit(s, k, p, 1 - bit(s, k, p)), k, q, 1 - bit(s, k, q));
        let (lo, hi) = (p.min(q), p.max(q));
        if g.in_support(swap_pq(b)) {
            // pin the pair to a's values; both strings then agree there
            let pins = [(p, 0usize), (q, 1usize)];
            g = g.pin_many(&pins)?;
            script.steps.push(Step::Pin {
                var: hi,
                bit: bit(a, k, hi) as u8,
            });
            script.steps.push(Step::Pin {
                var: lo,
                bit: bit(a, k, lo) as u8,
            });
            a = remove2(a, k, lo, hi);
            b = remove2(b, k, lo, hi);
        } else if g.in_support(swap_pq(a)) {
            g = g.pin_many(&[(p, 1), (q, 0)])?;
            script.steps.push(Step::Pin {
                var: hi,
                bit: bit(b, k, hi) as u8,
            });
            script.steps.push(Step::Pin {
                var: lo,
                bit: bit(b, k, lo) as u8,
            });
            a = remove2(a, k, lo, hi);
            b = remove2(b, k, lo, hi);
        } else {
            g = g.self_loop(lo, hi, &Signature::neq2())?;
            script.steps.push(Step::SelfLoop {
                i: lo,
                j: hi,
                b: "neq2".into(),
            });
            a = remove2(a, k, lo, hi);
            b = remove2(b, k, lo, hi);
        }
    }
    script.claimed = g;
    Ok(script)
}

/// One stage of the odd-arity descent. Descents act on `f` with `=_2`
/// self-loops, which is a `!=_2` self-loop on `f_hat`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RouteStep {
    Descend {
        script: GadgetScript,
    },
    /// Unary not proportional to `(1, +-i)`: orthogonal `Q` and `Q Q^T = lambda I`.
    OrthoCase {
        q: Mat2,
        lambda: Scalar,
    },
    /// `f_hat` is a multiple of `Delta_c^{(x)k}`.
    HatPin {
        c: u8,
    },
    /// `f_hat = [a, 0, ..., 0, b]` with `a b != 0`.
    EqualityCase {
        a: Scalar,
        b: Scalar,
        arity: usize,
    },
}

/// Route for an odd-arity signature: descend by nonzero loops until a unary or
/// a generalized equality in the hat basis remains.
pub fn odd_arity_route(f: &Signature) -> Result<Vec<RouteStep>, ConstructionError> {
    if f.is_trivial() {
        return Err(ConstructionError::TrivialSignature);
    }
    if f.arity() % 2 == 0 {
        return Err(ConstructionError::BadScript(format!("arity {} is even", f.arity())));
    }
    let mut out = Vec::new();
    let mut g = f.clone().relabeled();
    let eq2 = Signature::eq(2).into_field(f.field());
    loop {
        let n = g.arity();
        let gh = hat(&g);
        let pure = |c: usize| -> bool {
            let d = Signature::delta(c).tensor_power(n).expect("small");
            gh.is_multiple_of(&d)
        };
        if pure(0) || pure(1) {
            out.push(RouteStep::HatPin { c: u8::from(!pure(0)) });
            return Ok(out);
        }
        if n == 1 {
            let (q, lambda) = ortho_from_unary(&g).map_err(|e| ConstructionError::BadScript(e.to_string()))?;
            out.push(RouteStep::OrthoCase { q, lambda });
            return Ok(out);
        }
        let pair = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !gh.self_loop(i, j, &Signature::neq2()).map(|s| s.is_trivial()).unwrap_or(true));
        match pair {
            Some((i, j)) => {
                let mut s = GadgetScript::new("odd_arity_route", ("f", &g));
                s.with_input("eq2", &eq2);
                s.steps.push(Step::SelfLoop { i, j, b: "eq2".into() });
                let next = g.self_loop(i, j, &eq2)?;
                s.claimed = next.clone();
                out.push(RouteStep::Descend { script: s });
                g = next;
            }
            None => {
                let top = (1usize << n) - 1;
                let rest_zero = gh.support().iter().all(|&a| a == 0 || a == top);
                if !rest_zero {
                    return Err(ConstructionError::BadScript("no descent and not a generalized equality".into()));
                }
                out.push(RouteStep::EqualityCase {
                    a: gh.get(0).clone(),
                    b: gh.get(top).clone(),
                    arity: n,
                });
                return Ok(out);
            }
        }
    }
}

/// For `h_hat` proportional to `[[lambda, 1], [1, 0]]`, the unaries
/// `(k lambda + 1, 1)` for `k = 0..n`, computed by iterating `h_hat` through
/// `!=_2` on `(1, 1)`. They are pairwise independent.
pub fn interpolation_iterates(h: &Signature, n: usize) -> Result<Vec<Signature>, ConstructionError> {
    if h.arity() != 2 {
        return Err(ConstructionError::NotInterpolationForm);
    }
    let s = h.get(1).clone();
    if s.is_zero() || h.get(2) != &s || !h.get(3).is_zero() {
        return Err(ConstructionError::NotInterpolationForm);
    }
    let a = h.scale(&s.inv().expect("nonzero"));
    if a.get(0).is_zero() {
        return Err(ConstructionError::ZeroLambda);
    }
    // one round: u <- A X u, i.e. connect u to A through !=_2
    let step = a.compose(&Signature::neq2(), &[(1, 0)])?.relabeled();
    let mut u = Signature::from_ints(&[1, 1]).into_field(h.field());
    let mut out = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        out.push(u.clone());
        u = step.compose(&u, &[(1, 0)])?.relabeled();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::parse_bitstring;

    fn bs(s: &str) -> usize {
        parse_bitstring(s).unwrap()
    }

    #[test]
    fn selfloop_reaches_pure_string() {
        let f = Signature::from_table((0..32).map(|a| Scalar::int(if weight(a) == 3 { a as i64 } else { 0 })).collect()).unwrap();
        let s = selfloop_reduce(&f, bs("01101")).unwrap();
        assert_eq!(s.claimed.arity(), 1);
        assert!(!s.claimed.get(1).is_zero());
        assert!(s.verify());
        assert_eq!(selfloop_reduce(&f, bs("00000")), Err(ConstructionError::NotInSupport("00000".into())));
    }

    #[test]
    fn delta_power() {
        let f = Signature::symmetric_ints(&[0, 0, 3, 5]);
        let d = extract_delta_power(&f).unwrap();
        assert_eq!((d.c, d.r), (1, 1));
        assert!(d.script.verify());
        assert_eq!(
            extract_delta_power(&Signature::symmetric_ints(&[1, 0, 1])),
            Err(ConstructionError::NotStrictEO)
        );
    }

    #[test]
    fn interpolation() {
        let h = Signature::from_ints(&[6, 2, 2, 0]);
        let us = interpolation_iterates(&h, 4).unwrap();
        for (k, u) in us.iter().enumerate() {
            assert_eq!(u, &Signature::from_ints(&[3 * k as i64 + 1, 1]));
        }
        assert_eq!(
            interpolation_iterates(&Signature::from_ints(&[0, 1, 1, 0]), 2),
            Err(ConstructionError::ZeroLambda)
        );
    }

    #[test]
    fn gap_reduction() {
        let f = Signature::from_table(
            (0..16)
                .map(|a| Scalar::int(i64::from(a == bs("0110") || a == bs("1011") || a == bs("1001"))))
                .collect(),
        )
        .unwrap();
        let s = reduce_arity_gap(&f, bs("0110"), bs("1011")).unwrap();
        assert!(s.verify());
        let k = s.claimed.arity();
        assert_eq!(k, 1);
        assert!(!s.claimed.get(0).is_zero() && !s.claimed.get(1).is_zero());
    }

    #[test]
    fn odd_route_terminates() {
        let f = Signature::symmetric_ints(&[1, 2, 0, 3, 1]);
        assert!(odd_arity_route(&f).is_err());
        let f = Signature::symmetric_ints(&[1, 2, 0, 3]);
        let r = odd_arity_route(&f).unwrap();
        assert!(r.len() <= 2);
        for st in &r {
            if let RouteStep::Descend { script } = st {
                assert!(script.verify());
            }
        }
        let r = odd_arity_route(&Signature::from_table(vec![Scalar::one(), Scalar::i()]).unwrap()).unwrap();
        assert!(matches!(r[0], RouteStep::HatPin { .. }));
    }
}
