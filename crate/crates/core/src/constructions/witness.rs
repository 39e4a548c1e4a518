//! Closed instances with a nonzero value, built in the hat basis and wired
//! back in the original basis. A `!=_2` edge between hat signatures is a
//! plain edge between the originals, so the two partition functions agree.

use super::reduce::{extract_delta_power, loop_step, selfloop_reduce};
use super::{ConstructionError, GadgetScript, Step};
use crate::classes::{is_eo_geq, is_eo_leq, is_vanishing};
use crate::grid::Grid;
use crate::scalar::Scalar;
use crate::signature::{weight, Signature, MAX_ARITY};
use crate::sigset::SigSet;
use crate::transforms::hat;
use num_integer::Integer;
use serde::Serialize;
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosedInstance {
    pub grid: Grid,
    pub sigs: SigSet,
    /// Value predicted by the construction; `eval_holant` must agree.
    pub value: Scalar,
}

type Slot = (usize, usize);

/// Vertices with numbered slots and slot-to-slot edges.
#[derive(Default)]
struct Wiring {
    verts: Vec<(String, usize)>,
    edges: Vec<(Slot, Slot)>,
}

impl Wiring {
    fn vertex(&mut self, name: &str, arity: usize) -> Vec<Slot> {
        self.verts.push((name.to_string(), arity));
        let v = self.verts.len() - 1;
        (0..arity).map(|p| (v, p)).collect()
    }

    /// Lay out a hat-basis script made of tensors and `!=_2` self-loops.
    /// `rename` maps script inputs to original-basis names.
    fn script(&mut self, s: &GadgetScript, rename: &HashMap<String, String>) -> Vec<Slot> {
        let name = |n: &str| rename.get(n).cloned().unwrap_or_else(|| n.to_string());
        let arity = |n: &str| s.input(n).expect("known input").arity();
        let mut free = self.vertex(&name(&s.start), arity(&s.start));
        for st in &s.steps {
            match st {
                Step::Tensor { input } => {
                    let more = self.vertex(&name(input), arity(input));
                    free.extend(more);
                }
                Step::SelfLoop { i, j, .. } => {
                    let b = free.remove(*j);
                    let a = free.remove(*i);
                    self.edges.push((a, b));
                }
                other => panic!("unsupported step in wiring: {:?}", other),
            }
        }
        free
    }

    fn into_grid(self) -> Grid {
        let mut g = Grid::new();
        let mut ends: HashMap<Slot, (usize, u8)> = HashMap::new();
        for (a, b) in &self.edges {
            let e = g.edge();
            ends.insert(*a, (e, 0));
            ends.insert(*b, (e, 1));
        }
        for (v, (name, arity)) in self.verts.iter().enumerate() {
            let es: Vec<(usize, u8)> = (0..*arity).map(|p| ends[&(v, p)]).collect();
            g.vertex(name.clone(), &es);
        }
        g
    }
}

fn balanced_reduce(f: &Signature, copies: usize, gamma: usize) -> Result<GadgetScript, ConstructionError> {
    let mut s = GadgetScript::new("nonvanishing_witness", ("fh", f));
    s.with_input("neq2", &Signature::neq2().into_field(f.field()));
    let mut g = f.clone().relabeled();
    for _ in 1..copies {
        g = g.tensor_fresh(f)?;
        s.steps.push(Step::Tensor { input: "fh".into() });
    }
    let mut a = gamma;
    while g.arity() > 2 {
        let (i, j, next) = loop_step(&g, a, 0).expect("one of the three loops survives");
        g = g.self_loop(i, j, &Signature::neq2())?;
        s.steps.push(Step::SelfLoop { i, j, b: "neq2".into() });
        a = next;
    }
    s.claimed = g;
    Ok(s)
}

/// A closed grid over `{f}` with nonzero partition function, for any
/// non-vanishing `f`.
pub fn nonvanishing_witness(f: &Signature) -> Result<ClosedInstance, ConstructionError> {
    if f.is_trivial() {
        return Err(ConstructionError::TrivialSignature);
    }
    if is_vanishing(f) {
        return Err(ConstructionError::IsVanishing);
    }
    let n = f.arity();
    let sigs = SigSet::from_sigs(vec![("f".to_string(), f.clone())]);
    let rename: HashMap<String, String> = [("fh".to_string(), "f".to_string())].into();
    if n == 0 {
        let mut w = Wiring::default();
        w.vertex("f", 0);
        return Ok(ClosedInstance {
            grid: w.into_grid(),
            sigs,
            value: f.get(0).clone(),
        });
    }
    let fh = hat(f);
    let supp = fh.support();
    let imb = |a: usize| 2 * weight(a) as i64 - n as i64;
    // a balanced support point of some tensor power of f_hat
    let (copies, gamma) = match supp.iter().find(|&&a| imb(a) == 0) {
        Some(&a) => (1, a),
        None => {
            let up = *supp.iter().filter(|&&a| imb(a) > 0).min_by_key(|&&a| imb(a)).expect("not vanishing");
            let down = *supp.iter().filter(|&&a| imb(a) < 0).max_by_key(|&&a| imb(a)).expect("not vanishing");
            let (k, l) = (imb(up) as usize, (-imb(down)) as usize);
            let gcd = k.gcd(&l);
            let (nu, nd) = (l / gcd, k / gcd);
            if (nu + nd) * n > MAX_ARITY {
                return Err(ConstructionError::TooLarge((nu + nd) * n));
            }
            let mut g = 0usize;
            for s in std::iter::repeat(up).take(nu).chain(std::iter::repeat(down).take(nd)) {
                g = (g << n) | s;
            }
            (nu + nd, g)
        }
    };
    let s = balanced_reduce(&fh, copies, gamma)?;
    let h = &s.claimed;
    let (a, b, c, d) = (h.get(0), h.get(1), h.get(2), h.get(3));
    let mut w = Wiring::default();
    let free = w.script(&s, &rename);
    let value;
    let loop_val = b + c;
    if !loop_val.is_zero() {
        w.edges.push((free[0], free[1]));
        value = loop_val;
    } else {
        // two copies of h joined in a ring through !=_2
        let other = w.script(&s, &rename);
        let ad2 = &(a * d) * &Scalar::int(2);
        let cross = &(&(b * b) + &(c * c)) + &ad2;
        let straight = &ad2 + &(&(b * c) * &Scalar::int(2));
        if !cross.is_zero() {
            w.edges.push((free[1], other[0]));
            w.edges.push((other[1], free[0]));
            value = cross;
        } else {
            w.edges.push((free[0], other[0]));
            w.edges.push((free[1], other[1]));
            value = straight;
        }
    }
    debug_assert!(!value.is_zero());
    Ok(ClosedInstance {
        grid: w.into_grid(),
        sigs,
        value,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionWitness {
    /// Hat-basis gadget, nonzero at the all-zero string.
    pub h0: GadgetScript,
    /// Hat-basis gadget, nonzero at the all-one string.
    pub h1: GadgetScript,
    /// Closed instance over `{f}` or over `{f, h}` with nonzero value.
    pub instance: ClosedInstance,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionRoute {
    /// Every hat signature is one-sided the same way.
    EoBranch {
        geq: bool,
    },
    Witness(Box<ReductionWitness>),
}

/// Either all of `hat(F) + hat(f (x) g)` lie on one side of the balanced
/// slice, or gadgets pinning both pure strings exist together with a
/// nonzero closed instance involving `f`.
pub fn decomposition_route(fs: &[(String, Signature)], f: &Signature, g: &Signature) -> Result<DecompositionRoute, ConstructionError> {
    let mut all: Vec<(String, Signature)> = fs.to_vec();
    all.push(("f*g".to_string(), f.tensor_fresh(g)?));
    let hats: Vec<(String, Signature)> = all.iter().filter(|(_, s)| !s.is_trivial()).map(|(n, s)| (n.clone(), hat(s))).collect();
    if hats.iter().all(|(_, h)| is_eo_geq(h)) {
        return Ok(DecompositionRoute::EoBranch { geq: true });
    }
    if hats.iter().all(|(_, h)| is_eo_leq(h)) {
        return Ok(DecompositionRoute::EoBranch { geq: false });
    }
    let pick = |more_ones: bool| -> Result<(String, GadgetScript), ConstructionError> {
        for (name, h) in &hats {
            let n = h.arity() as i64;
            let hit = h.support().into_iter().find(|&a| {
                let d = 2 * weight(a) as i64 - n;
                if more_ones {
                    d > 0
                } else {
                    d < 0
                }
            });
            if let Some(a) = hit {
                return Ok((name.clone(), selfloop_reduce(h, a)?));
            }
        }
        Err(ConstructionError::NoImbalancedSupport)
    };
    let (n0, h0) = pick(false)?;
    let (n1, h1) = pick(true)?;
    let instance = if !is_vanishing(f) {
        nonvanishing_witness(f)?
    } else {
        // f_hat = lambda Delta_c^{(x)r} after loops; feed it the gadget that is
        // nonzero on the opposite pure string
        let dp = extract_delta_power(&hat(f))?;
        let (hname, hs) = if dp.c == 1 { (&n0, &h0) } else { (&n1, &h1) };
        let hk = hs.claimed.arity();
        let pure = if dp.c == 1 { 0 } else { (1usize << hk) - 1 };
        let mut sigs = SigSet::from_sigs(vec![("f".to_string(), f.clone())]);
        let horig = all.iter().find(|(n, _)| n == hname).expect("named").1.clone();
        sigs.insert(hname.clone(), horig);
        let mut w = Wiring::default();
        let rf: HashMap<String, String> = [("f".to_string(), "f".to_string())].into();
        let rh: HashMap<String, String> = [("f".to_string(), hname.clone())].into();
        let ds: Vec<Vec<Slot>> = (0..hk).map(|_| w.script(&dp.script, &rf)).collect();
        let hs_slots: Vec<Vec<Slot>> = (0..dp.r).map(|_| w.script(hs, &rh)).collect();
        for (i, dslots) in ds.iter().enumerate() {
            for (j, hslots) in hs_slots.iter().enumerate() {
                w.edges.push((dslots[j], hslots[i]));
            }
        }
        let value = &dp.lambda.pow(hk as u32) * &hs.claimed.get(pure).pow(dp.r as u32);
        ClosedInstance {
            grid: w.into_grid(),
            sigs,
            value,
        }
    };
    Ok(DecompositionRoute::Witness(Box::new(ReductionWitness { h0, h1, instance })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::eval_holant;

    #[test]
    fn witness_values_match_brute_force() {
        for f in [
            Signature::eq(3),
            Signature::from_ints(&[1, 2]),
            Signature::symmetric_ints(&[1, 0, 1]),
            Signature::from_ints(&[1, 2, 0, -1, 3, 0, 1, 1]),
            Signature::symmetric_ints(&[0, 1, 0, 0, 0]),
        ] {
            let w = nonvanishing_witness(&f).unwrap();
            assert_eq!(eval_holant(&w.grid, &w.sigs).unwrap(), w.value, "{:?}", f);
            assert!(!w.value.is_zero());
        }
    }

    #[test]
    fn vanishing_is_rejected() {
        let f = crate::transforms::unhat(&Signature::delta0());
        assert_eq!(nonvanishing_witness(&f), Err(ConstructionError::IsVanishing));
    }

    #[test]
    fn decomposition_of_deltas() {
        let r = decomposition_route(&[], &Signature::delta0(), &Signature::delta0()).unwrap();
        let DecompositionRoute::Witness(w) = r else {
            panic!("expected a witness")
        };
        assert!(w.h0.verify() && w.h1.verify());
        assert_eq!(eval_holant(&w.instance.grid, &w.instance.sigs).unwrap(), w.instance.value);
    }

    #[test]
    fn decomposition_eo_branch() {
        let f = crate::transforms::unhat(&Signature::delta1());
        let r = decomposition_route(&[], &f, &f).unwrap();
        assert_eq!(r, DecompositionRoute::EoBranch { geq: true });
    }
}
