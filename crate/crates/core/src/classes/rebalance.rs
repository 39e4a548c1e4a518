//! Rebalancing: the recursive pairing condition on EO signatures.

use super::{eo::is_eo, Certificate, ClassError, ClassId, ClassReport};
use crate::signature::{bit, Signature};
use serde::Serialize;
use std::collections::HashMap;

/// A reachable state (pinned variables) and, for each free variable `x`, the
/// partner `y` and the child node reached by pinning `x = c, y = 1 - c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RebalanceNode {
    pub pins: Vec<(usize, u8)>,
    pub psi: Vec<(usize, usize, usize)>,
}

/// Node 0 is the root (no pins).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RebalanceCert {
    pub c: u8,
    pub nodes: Vec<RebalanceNode>,
}

type State = (usize, usize); // (pinned mask, pinned values), both as arity-n bit masks

fn pinned(state: State, n: usize, v: usize) -> bool {
    bit(state.0, n, v) == 1
}

fn consistent(a: usize, state: State) -> bool {
    a & state.0 == state.1
}

fn no_double(f: &Signature, supp: &[usize], state: State, x: usize, y: usize, c: usize) -> bool {
    let n = f.arity();
    supp.iter().all(|&a| !consistent(a, state) || !(bit(a, n, x) == c && bit(a, n, y) == c))
}

fn child(state: State, n: usize, x: usize, y: usize, c: usize) -> State {
    let mx = 1usize << (n - 1 - x);
    let my = 1usize << (n - 1 - y);
    let vals = if c == 1 { mx } else { my };
    (state.0 | mx | my, state.1 | vals)
}

struct Search<'a> {
    f: &'a Signature,
    supp: Vec<usize>,
    c: usize,
    memo: HashMap<State, bool>,
    choice: HashMap<State, Vec<(usize, usize, State)>>,
}

impl Search<'_> {
    fn ok(&mut self, state: State) -> bool {
        if let Some(&r) = self.memo.get(&state) {
            return r;
        }
        let n = self.f.arity();
        let free: Vec<usize> = (0..n).filter(|&v| !pinned(state, n, v)).collect();
        let mut psi = Vec::new();
        let mut good = true;
        for &x in &free {
            let mut found = None;
            for &y in &free {
                if y == x || !no_double(self.f, &self.supp, state, x, y, self.c) {
                    continue;
                }
                let ch = child(state, n, x, y, self.c);
                if self.ok(ch) {
                    found = Some((x, y, ch));
                    break;
                }
            }
            match found {
                Some(t) => psi.push(t),
                None => {
                    good = false;
                    break;
                }
            }
        }
        self.memo.insert(state, good);
        if good {
            self.choice.insert(state, psi);
        }
        good
    }
}

/// `c`-rebalancing test; the certificate is the DAG of visited states.
pub fn is_rebalancing(f: &Signature, c: u8) -> Result<ClassReport, ClassError> {
    if !is_eo(f) {
        return Err(ClassError::NotEOSignature);
    }
    let class = if c == 0 { ClassId::Rebalancing0 } else { ClassId::Rebalancing1 };
    let n = f.arity();
    if n % 2 == 1 {
        // only the zero signature is EO at odd arity; it has no perfect pins
        return Ok(ClassReport::non_member(class, "odd arity"));
    }
    let mut s = Search {
        f,
        supp: f.support(),
        c: c as usize,
        memo: HashMap::new(),
        choice: HashMap::new(),
    };
    if !s.ok((0, 0)) {
        let root_fail = (0..n).find(|&x| {
            !(0..n)
                .any(|y| y != x && no_double(f, &s.supp, (0, 0), x, y, c as usize) && s.memo.get(&child((0, 0), n, x, y, c as usize)) == Some(&true))
        });
        let msg = match root_fail {
            Some(x) => format!(
                "no partner for x{} keeps the pattern {}{} off the support with a rebalancing remainder",
                x + 1,
                c,
                c
            ),
            None => "no valid partner assignment".to_string(),
        };
        return Ok(ClassReport::non_member(class, msg));
    }
    // number the reachable states breadth first from the root
    let mut index: HashMap<State, usize> = HashMap::new();
    let mut order = vec![(0usize, 0usize)];
    index.insert((0, 0), 0);
    let mut k = 0;
    while k < order.len() {
        let st = order[k];
        for &(_, _, ch) in &s.choice[&st] {
            if !index.contains_key(&ch) {
                index.insert(ch, order.len());
                order.push(ch);
            }
        }
        k += 1;
    }
    let nodes = order
        .iter()
        .map(|st| RebalanceNode {
            pins: (0..n).filter(|&v| pinned(*st, n, v)).map(|v| (v, bit(st.1, n, v) as u8)).collect(),
            psi: s.choice[st].iter().map(|&(x, y, ch)| (x, y, index[&ch])).collect(),
        })
        .collect();
    Ok(ClassReport::member(class, Certificate::Rebalancing(RebalanceCert { c, nodes })))
}

impl RebalanceCert {
    /// Check every node independently of the search that built it.
    pub fn verify(&self, f: &Signature) -> bool {
        let n = f.arity();
        let c = self.c as usize;
        if c > 1 || self.nodes.is_empty() || !self.nodes[0].pins.is_empty() || !is_eo(f) {
            return false;
        }
        let supp = f.support();
        let state_of = |node: &RebalanceNode| -> Option<State> {
            let mut st = (0usize, 0usize);
            for &(v, b) in &node.pins {
                if v >= n || b > 1 || pinned(st, n, v) {
                    return None;
                }
                st.0 |= 1 << (n - 1 - v);
                st.1 |= (b as usize) << (n - 1 - v);
            }
            Some(st)
        };
        let states: Option<Vec<State>> = self.nodes.iter().map(state_of).collect();
        let Some(states) = states else { return false };
        self.nodes.iter().zip(states.iter()).all(|(node, &st)| {
            let free: Vec<usize> = (0..n).filter(|&v| !pinned(st, n, v)).collect();
            let covered: Vec<usize> = node.psi.iter().map(|t| t.0).collect();
            let mut sorted = covered.clone();
            sorted.sort_unstable();
            sorted == free
                && node.psi.iter().all(|&(x, y, ch)| {
                    y != x && free.contains(&y) && ch < states.len() && states[ch] == child(st, n, x, y, c) && no_double(f, &supp, st, x, y, c)
                })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::replay;
    use crate::scalar::Scalar;

    #[test]
    fn neq2_both_ways() {
        for c in 0..2 {
            let r = is_rebalancing(&Signature::neq2(), c).unwrap();
            assert!(r.member && replay(&Signature::neq2(), &r));
        }
    }

    #[test]
    fn constant_is_member() {
        let r = is_rebalancing(&Signature::constant(Scalar::int(3)), 0).unwrap();
        assert!(r.member);
    }

    #[test]
    fn symmetric_balanced_four() {
        let f = Signature::symmetric_ints(&[0, 0, 1, 0, 0]);
        assert!(!is_rebalancing(&f, 0).unwrap().member);
        assert!(!is_rebalancing(&f, 1).unwrap().member);
    }

    #[test]
    fn tampered_certificate_fails() {
        let f = Signature::neq2().tensor_fresh(&Signature::neq2()).unwrap();
        let r = is_rebalancing(&f, 0).unwrap();
        assert!(replay(&f, &r));
        let Some(Certificate::Rebalancing(mut cert)) = r.certificate.clone() else {
            panic!()
        };
        cert.nodes[0].psi[0].1 = 2; // x1 paired with x3 leaves 00 on the support
        assert!(!cert.verify(&f));
    }
}
