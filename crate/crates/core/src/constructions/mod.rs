//! Constructive witnesses. Every construction returns a [`GadgetScript`]
//! (or a closed grid) that can be replayed independently: through the
//! signature operations and through the brute-force gadget realizer.

mod ghz;
mod reduce;
mod symmetrize;
mod witness;

pub use ghz::{
    entanglement_class, ghz_directions, ghz_normal_form, ghz_normal_form_projective, ghz_normal_form_script, hyperdeterminant, Entanglement,
};
pub use reduce::{extract_delta_power, interpolation_iterates, odd_arity_route, reduce_arity_gap, selfloop_reduce, DeltaPower, RouteStep};
pub use symmetrize::symmetrize_search;
pub use witness::{decomposition_route, nonvanishing_witness, ClosedInstance, DecompositionRoute, ReductionWitness};

use crate::grid::{realize_gadget, Grid};
use crate::literal::parse_scalar;
use crate::scalar::Field;
use crate::ser::{signature_from_value, Named};
use crate::signature::{SigError, Signature};
use crate::sigset::SigSet;
use crate::transforms::{apply_holographic, Mat2, Side};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructionError {
    #[error("no support point is unbalanced")]
    NoImbalancedSupport,
    #[error("string {0} is not in the support")]
    NotInSupport(String),
    #[error("signature is not strictly unbalanced on its support")]
    NotStrictEO,
    #[error("signature is vanishing")]
    IsVanishing,
    #[error("the zero signature has no construction")]
    TrivialSignature,
    #[error("both strings are all-zero or all-one")]
    BothPureStrings,
    #[error("expected a ternary signature")]
    NotTernary,
    #[error("signature is reducible")]
    Reducible,
    #[error("signature is not symmetric")]
    NotSymmetric,
    #[error("signature is not of GHZ type")]
    NotGHZ,
    #[error("the decomposition needs a root outside Q(zeta_24)")]
    LeavesField,
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("binary signature is not of the form c [[lambda, 1], [1, 0]]")]
    NotInterpolationForm,
    #[error("arity {0} is too small")]
    ArityTooSmall(usize),
    #[error("intermediate arity {0} exceeds the dense cap")]
    TooLarge(usize),
    #[error("no candidate gadget within the budget")]
    SearchExhausted,
    #[error("bad script: {0}")]
    BadScript(String),
    #[error(transparent)]
    Signature(#[from] SigError),
}

/// One gadget operation on the current signature.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Step {
    /// `current (x) input`, new variables appended.
    Tensor {
        input: String,
    },
    Pin {
        var: usize,
        bit: u8,
    },
    /// Join variables `i < j` through the named binary input.
    SelfLoop {
        i: usize,
        j: usize,
        b: String,
    },
    /// Connect `current` var `p` to `input` var `q` for each pair; free
    /// variables of `current` come first, then those of `input`.
    Compose {
        input: String,
        pairs: Vec<(usize, usize)>,
    },
    Transform {
        matrix: Mat2,
        side: Side,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct GadgetScript {
    pub inputs: Vec<(String, Signature)>,
    pub start: String,
    pub steps: Vec<Step>,
    pub claimed: Signature,
    pub provenance: String,
}

impl Serialize for GadgetScript {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(5))?;
        m.serialize_entry("claimed", &self.claimed)?;
        m.serialize_entry("inputs", &Named(&self.inputs))?;
        m.serialize_entry("provenance", &self.provenance)?;
        m.serialize_entry("start", &self.start)?;
        m.serialize_entry("steps", &self.steps)?;
        m.end()
    }
}

fn bad(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::BadScript(msg.into())
}

impl GadgetScript {
    pub fn new(provenance: &str, start: (&str, &Signature)) -> GadgetScript {
        GadgetScript {
            inputs: vec![(start.0.to_string(), start.1.clone())],
            start: start.0.to_string(),
            steps: Vec::new(),
            claimed: start.1.clone(),
            provenance: provenance.to_string(),
        }
    }

    pub fn input(&self, name: &str) -> Option<&Signature> {
        self.inputs.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    /// Register an input if the name is new.
    pub fn with_input(&mut self, name: &str, f: &Signature) {
        if self.input(name).is_none() {
            self.inputs.push((name.to_string(), f.clone()));
        }
    }

    /// Run the steps through the signature operations.
    pub fn replay(&self) -> Result<Signature, ConstructionError> {
        let get = |n: &str| self.input(n).ok_or_else(|| bad(format!("unknown input {:?}", n)));
        let mut cur = get(&self.start)?.clone().relabeled();
        for step in &self.steps {
            cur = match step {
                Step::Tensor { input } => cur.tensor_fresh(get(input)?)?,
                Step::Pin { var, bit } => cur.pin(*var, *bit as usize)?,
                Step::SelfLoop { i, j, b } => cur.self_loop(*i, *j, get(b)?)?,
                Step::Compose { input, pairs } => cur.compose(get(input)?, pairs)?.relabeled(),
                Step::Transform { matrix, side } => apply_holographic(matrix, &cur, *side),
            }
            .relabeled();
        }
        Ok(cur)
    }

    /// The same gadget as a grid with dangling edges, in the current
    /// variable order, over the script's inputs (plus pins and matrices).
    pub fn to_grid(&self) -> Result<(Grid, SigSet), ConstructionError> {
        let mut sigs = SigSet::from_sigs(self.inputs.clone());
        let get = |n: &str| self.input(n).ok_or_else(|| bad(format!("unknown input {:?}", n)));
        let mut g = Grid::new();
        let start = get(&self.start)?;
        // dangling edges of the current gadget, in variable order
        let mut cur: Vec<usize> = (0..start.arity()).map(|_| g.dangle()).collect();
        let ends: Vec<(usize, u8)> = cur.iter().map(|&e| (e, 0)).collect();
        g.vertex(self.start.clone(), &ends);
        let internal = |g: &mut Grid, e: usize| {
            g.dangling.retain(|&d| d != e);
            g.edges.push(e);
        };
        for (k, step) in self.steps.iter().enumerate() {
            match step {
                Step::Tensor { input } => {
                    let f = get(input)?;
                    let new: Vec<usize> = (0..f.arity()).map(|_| g.dangle()).collect();
                    let ends: Vec<(usize, u8)> = new.iter().map(|&e| (e, 0)).collect();
                    g.vertex(input.clone(), &ends);
                    cur.extend(new);
                }
                Step::Pin { var, bit } => {
                    if *var >= cur.len() {
                        return Err(bad("pin out of range"));
                    }
                    let name = format!("__delta{}", bit);
                    sigs.insert(name.clone(), Signature::delta(*bit as usize));
                    let e = cur.remove(*var);
                    internal(&mut g, e);
                    g.vertex(name, &[(e, 1)]);
                }
                Step::SelfLoop { i, j, b } => {
                    if i >= j || *j >= cur.len() {
                        return Err(bad("self-loop indices"));
                    }
                    get(b)?;
                    let ej = cur.remove(*j);
                    let ei = cur.remove(*i);
                    internal(&mut g, ei);
                    internal(&mut g, ej);
                    g.vertex(b.clone(), &[(ei, 1), (ej, 1)]);
                }
                Step::Compose { input, pairs } => {
                    let f = get(input)?;
                    let mut slots: Vec<Option<(usize, u8)>> = vec![None; f.arity()];
                    for &(p, q) in pairs {
                        if p >= cur.len() || q >= f.arity() || slots[q].is_some() {
                            return Err(bad("compose pairs"));
                        }
                        slots[q] = Some((cur[p], 1));
                    }
                    let mut used: Vec<usize> = pairs.iter().map(|&(p, _)| p).collect();
                    used.sort_unstable();
                    used.dedup();
                    if used.len() != pairs.len() {
                        return Err(bad("compose pairs"));
                    }
                    for &p in used.iter().rev() {
                        let e = cur.remove(p);
                        internal(&mut g, e);
                    }
                    for s in slots.iter_mut() {
                        if s.is_none() {
                            let e = g.dangle();
                            cur.push(e);
                            *s = Some((e, 0));
                        }
                    }
                    let ends: Vec<(usize, u8)> = slots.into_iter().map(|s| s.expect("filled")).collect();
                    g.vertex(input.clone(), &ends);
                }
                Step::Transform { matrix, side } => {
                    let m = match side {
                        Side::Column => matrix.clone(),
                        Side::Row => matrix.transpose(),
                    };
                    // binary vertex t(new, old) = m[new][old]
                    let name = format!("__transform{}", k);
                    sigs.insert(name.clone(), m.as_signature());
                    let old = std::mem::take(&mut cur);
                    for e in old {
                        internal(&mut g, e);
                        let n = g.dangle();
                        g.vertex(name.clone(), &[(n, 0), (e, 1)]);
                        cur.push(n);
                    }
                }
            }
        }
        // dangling order must follow the current variable order
        g.dangling = cur;
        Ok((g, sigs))
    }

    /// Realize the grid form by brute force.
    pub fn replay_grid(&self) -> Result<Signature, ConstructionError> {
        let (g, sigs) = self.to_grid()?;
        realize_gadget(&g, &sigs).map_err(|e| bad(e.to_string()))
    }

    /// Both replays agree with the claimed signature.
    pub fn verify(&self) -> bool {
        matches!(self.replay(), Ok(s) if s == self.claimed) && matches!(self.replay_grid(), Ok(s) if s == self.claimed)
    }

    pub fn canonical_json(&self) -> String {
        serde_json::to_string(&serde_json::to_value(self).expect("serializable")).expect("serializable")
    }

    /// SHA-256 of the canonical JSON.
    pub fn replay_hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_json().as_bytes()))
    }

    pub fn from_json(v: &Value, field: Field) -> Result<GadgetScript, ConstructionError> {
        let s = |k: &str| {
            v.get(k)
                .and_then(Value::as_str)
                .map(str::to_string)
                .ok_or_else(|| bad(format!("missing {:?}", k)))
        };
        let sig = |x: &Value| signature_from_value(x, field).map_err(|e| bad(e.to_string()));
        let inputs_obj = v.get("inputs").and_then(Value::as_object).ok_or_else(|| bad("missing \"inputs\""))?;
        let inputs = inputs_obj
            .iter()
            .map(|(k, x)| Ok((k.clone(), sig(x)?)))
            .collect::<Result<Vec<_>, ConstructionError>>()?;
        let claimed = sig(v.get("claimed").ok_or_else(|| bad("missing \"claimed\""))?)?;
        let mut steps = Vec::new();
        for st in v.get("steps").and_then(Value::as_array).ok_or_else(|| bad("missing \"steps\""))? {
            let op = st.get("op").and_then(Value::as_str).unwrap_or("");
            let uint = |k: &str| {
                st.get(k)
                    .and_then(Value::as_u64)
                    .map(|x| x as usize)
                    .ok_or_else(|| bad(format!("step needs {:?}", k)))
            };
            let text = |k: &str| {
                st.get(k)
                    .and_then(Value::as_str)
                    .map(str::to_string)
                    .ok_or_else(|| bad(format!("step needs {:?}", k)))
            };
            steps.push(match op {
                "tensor" => Step::Tensor { input: text("input")? },
                "pin" => Step::Pin {
                    var: uint("var")?,
                    bit: uint("bit")? as u8,
                },
                "self_loop" => Step::SelfLoop {
                    i: uint("i")?,
                    j: uint("j")?,
                    b: text("b")?,
                },
                "compose" => {
                    let pairs = st
                        .get("pairs")
                        .and_then(Value::as_array)
                        .ok_or_else(|| bad("compose needs pairs"))?
                        .iter()
                        .map(|p| match (p.get(0).and_then(Value::as_u64), p.get(1).and_then(Value::as_u64)) {
                            (Some(a), Some(b)) => Ok((a as usize, b as usize)),
                            _ => Err(bad("pair must be [p, q]")),
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    Step::Compose {
                        input: text("input")?,
                        pairs,
                    }
                }
                "transform" => {
                    let rows = st.get("matrix").and_then(Value::as_array).ok_or_else(|| bad("transform needs matrix"))?;
                    let mut e = Vec::new();
                    for r in rows {
                        for x in r.as_array().ok_or_else(|| bad("matrix rows"))? {
                            let lit = x.as_str().ok_or_else(|| bad("matrix entry"))?;
                            e.push(parse_scalar(lit, field).map_err(|err| bad(err.to_string()))?);
                        }
                    }
                    if e.len() != 4 {
                        return Err(bad("matrix must be 2x2"));
                    }
                    let side = match text("side")?.as_str() {
                        "row" => Side::Row,
                        _ => Side::Column,
                    };
                    let mut it = e.into_iter();
                    let m = Mat2::new(it.next().unwrap(), it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
                    Step::Transform { matrix: m, side }
                }
                other => return Err(bad(format!("unknown op {:?}", other))),
            });
        }
        Ok(GadgetScript {
            inputs,
            start: s("start")?,
            steps,
            claimed,
            provenance: s("provenance")?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn sample() -> GadgetScript {
        let f = Signature::from_ints(&[1, 2, 3, 4, 5, 6, 7, 8]);
        let mut s = GadgetScript::new("sample", ("f", &f));
        s.with_input("eq2", &Signature::eq(2));
        s.with_input("u", &Signature::from_ints(&[2, -1]));
        s.steps = vec![
            Step::Tensor { input: "u".into() },
            Step::SelfLoop { i: 1, j: 3, b: "eq2".into() },
            Step::Compose {
                input: "f".into(),
                pairs: vec![(1, 2)],
            },
            Step::Pin { var: 0, bit: 1 },
            Step::Transform {
                matrix: Mat2::new(Scalar::one(), Scalar::i(), Scalar::int(2), Scalar::zero()),
                side: Side::Row,
            },
        ];
        s.claimed = s.replay().unwrap();
        s
    }

    #[test]
    fn dual_replay_agrees() {
        let s = sample();
        assert_eq!(s.replay_grid().unwrap(), s.claimed);
        assert!(s.verify());
    }

    #[test]
    fn json_round_trip_and_hash() {
        let s = sample();
        let v: Value = serde_json::from_str(&s.canonical_json()).unwrap();
        let back = GadgetScript::from_json(&v, Field::Cyclo24).unwrap();
        assert_eq!(back.canonical_json(), s.canonical_json());
        assert_eq!(back.replay_hash(), s.replay_hash());
    }
}
