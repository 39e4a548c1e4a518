//! Signature grids and brute-force partition functions: Holant, #EO, #CSP,
//! and realization of gadgets with dangling edges.

use crate::scalar::Scalar;
use crate::signature::Signature;
use crate::sigset::SigSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

pub const MAX_EVAL_EDGES: usize = 24;
pub const MAX_REALIZE_EDGES: usize = 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GridError {
    #[error("unknown signature {0:?}")]
    UnknownSignature(String),
    #[error("vertex {vertex} has degree {degree} but its signature has arity {arity}")]
    DegreeMismatch { vertex: usize, degree: usize, arity: usize },
    #[error("edge {0} must have one end 0 and one end 1 among the vertices")]
    BadEdge(usize),
    #[error("dangling edge {0} must appear exactly once, as end 0")]
    BadDangling(usize),
    #[error("edge {0} is listed twice")]
    DuplicateEdge(usize),
    #[error("edge {0} is used but not declared")]
    UndeclaredEdge(usize),
    #[error("grid has dangling edges")]
    DanglingPresent,
    #[error("{0} edges exceed the enumeration cap")]
    TooLarge(usize),
    #[error("vertex {0} has odd degree")]
    OddDegree(usize),
    #[error("signature {0:?} is not supported on the balanced slice")]
    NotEOSignature(String),
    #[error("clause {clause} has {got} variables, its signature has arity {arity}")]
    ClauseArity { clause: usize, got: usize, arity: usize },
    #[error("clause {clause} uses variable {var} of {n}")]
    ClauseVar { clause: usize, var: usize, n: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeEnd {
    pub edge: usize,
    pub end: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub sig: String,
    pub ends: Vec<EdgeEnd>,
}

/// Vertices carry ordered edge ends; internal edges appear twice (ends 0 and
/// 1), dangling edges once (end 0) and become the realized variables in the
/// order listed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<usize>,
    pub dangling: Vec<usize>,
}

impl Grid {
    pub fn new() -> Grid {
        Grid::default()
    }

    /// Fresh internal edge id.
    pub fn edge(&mut self) -> usize {
        let id = self.next_id();
        self.edges.push(id);
        id
    }

    /// Fresh dangling edge id, appended to the output order.
    pub fn dangle(&mut self) -> usize {
        let id = self.next_id();
        self.dangling.push(id);
        id
    }

    fn next_id(&self) -> usize {
        self.edges.iter().chain(self.dangling.iter()).map(|&e| e + 1).max().unwrap_or(0)
    }

    pub fn vertex(&mut self, sig: impl Into<String>, ends: &[(usize, u8)]) -> usize {
        self.vertices.push(Vertex {
            sig: sig.into(),
            ends: ends.iter().map(|&(edge, end)| EdgeEnd { edge, end }).collect(),
        });
        self.vertices.len() - 1
    }

    pub fn validate(&self, sigs: &SigSet) -> Result<(), GridError> {
        let mut seen: HashMap<usize, bool> = HashMap::new();
        for &e in &self.edges {
            if seen.insert(e, false).is_some() {
                return Err(GridError::DuplicateEdge(e));
            }
        }
        for &e in &self.dangling {
            if seen.insert(e, true).is_some() {
                return Err(GridError::DuplicateEdge(e));
            }
        }
        let mut uses: HashMap<usize, [usize; 2]> = HashMap::new();
        for (vi, v) in self.vertices.iter().enumerate() {
            let f = sigs.get(&v.sig).ok_or_else(|| GridError::UnknownSignature(v.sig.clone()))?;
            if f.arity() != v.ends.len() {
                return Err(GridError::DegreeMismatch {
                    vertex: vi,
                    degree: v.ends.len(),
                    arity: f.arity(),
                });
            }
            for end in &v.ends {
                if !seen.contains_key(&end.edge) {
                    return Err(GridError::UndeclaredEdge(end.edge));
                }
                if end.end > 1 {
                    return Err(GridError::BadEdge(end.edge));
                }
                uses.entry(end.edge).or_insert([0, 0])[end.end as usize] += 1;
            }
        }
        for (&e, &dangling) in &seen {
            let u = uses.get(&e).copied().unwrap_or([0, 0]);
            if dangling && u != [1, 0] {
                return Err(GridError::BadDangling(e));
            }
            if !dangling && u != [1, 1] {
                return Err(GridError::BadEdge(e));
            }
        }
        Ok(())
    }
}

/// Per-vertex lookup: which bit of the vertex index each edge end drives.
struct Compiled<'a> {
    tables: Vec<&'a [Scalar]>,
    zero: Vec<Vec<bool>>,
    // for each variable (internal edge position): (vertex, bit mask) incidences
    incid: Vec<Vec<(usize, usize)>>,
    // same for dangling positions
    dincid: Vec<Vec<(usize, usize)>>,
    // per-vertex index offset from ends fixed to 1 (end flips for #EO)
    base: Vec<usize>,
}

fn compile<'a>(g: &Grid, sigs: &'a SigSet, flip_end1: bool) -> Result<Compiled<'a>, GridError> {
    g.validate(sigs)?;
    let pos: HashMap<usize, usize> = g.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let dpos: HashMap<usize, usize> = g.dangling.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut incid = vec![Vec::new(); g.edges.len()];
    let mut dincid = vec![Vec::new(); g.dangling.len()];
    let mut base = vec![0usize; g.vertices.len()];
    let mut tables = Vec::new();
    let mut zero = Vec::new();
    for (vi, v) in g.vertices.iter().enumerate() {
        let f = sigs.get(&v.sig).expect("validated");
        tables.push(f.table());
        zero.push(f.table().iter().map(|x| x.is_zero()).collect());
        let d = v.ends.len();
        for (p, end) in v.ends.iter().enumerate() {
            let mask = 1usize << (d - 1 - p);
            if flip_end1 && end.end == 1 {
                base[vi] ^= mask;
            }
            match pos.get(&end.edge) {
                Some(&i) => incid[i].push((vi, mask)),
                None => dincid[dpos[&end.edge]].push((vi, mask)),
            }
        }
    }
    Ok(Compiled {
        tables,
        zero,
        incid,
        dincid,
        base,
    })
}

impl Compiled<'_> {
    // sum over internal assignments whose top `fixed_bits` variables are
    // `prefix`, with per-vertex start indices `start`
    fn partial_sum(&self, start: &[usize], fixed_bits: usize, prefix: usize) -> Scalar {
        let m = self.incid.len();
        let mut idx = start.to_vec();
        for b in 0..fixed_bits {
            if (prefix >> b) & 1 == 1 {
                for &(v, mask) in &self.incid[m - 1 - b] {
                    idx[v] ^= mask;
                }
            }
        }
        let free = m - fixed_bits;
        let mut acc = Scalar::zero();
        let mut add = |idx: &[usize]| {
            if idx.iter().enumerate().any(|(v, &i)| self.zero[v][i]) {
                return;
            }
            let mut p = Scalar::one();
            for (v, &i) in idx.iter().enumerate() {
                p = &p * &self.tables[v][i];
            }
            acc = &acc + &p;
        };
        add(&idx);
        for t in 1..1usize << free {
            // Gray code: flip the lowest set bit of t
            let j = t.trailing_zeros() as usize;
            for &(v, mask) in &self.incid[j] {
                idx[v] ^= mask;
            }
            add(&idx);
        }
        acc
    }

    fn sum(&self, start: &[usize], threads: usize) -> Scalar {
        let m = self.incid.len();
        let split = if threads <= 1 || m < 10 {
            0
        } else {
            (threads.next_power_of_two().trailing_zeros() as usize).min(m)
        };
        if split == 0 {
            return self.partial_sum(start, 0, 0);
        }
        let chunks = 1usize << split;
        let parts: Vec<Scalar> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..chunks).map(|c| s.spawn(move || self.partial_sum(start, split, c))).collect();
            handles.into_iter().map(|h| h.join().expect("worker")).collect()
        });
        parts.into_iter().sum()
    }
}

fn check_size(g: &Grid, cap: usize) -> Result<(), GridError> {
    let total = g.edges.len() + g.dangling.len();
    if total > cap {
        return Err(GridError::TooLarge(total));
    }
    Ok(())
}

/// Holant value of a closed grid.
pub fn eval_holant(g: &Grid, sigs: &SigSet) -> Result<Scalar, GridError> {
    eval_holant_threads(g, sigs, 1)
}

pub fn eval_holant_threads(g: &Grid, sigs: &SigSet, threads: usize) -> Result<Scalar, GridError> {
    if !g.dangling.is_empty() {
        return Err(GridError::DanglingPresent);
    }
    check_size(g, MAX_EVAL_EDGES)?;
    let c = compile(g, sigs, false)?;
    Ok(c.sum(&c.base, threads))
}

/// #EO value: each edge is oriented, so its end 1 reads the complement of
/// its end 0.
pub fn eval_eo(g: &Grid, sigs: &SigSet) -> Result<Scalar, GridError> {
    if !g.dangling.is_empty() {
        return Err(GridError::DanglingPresent);
    }
    check_size(g, MAX_EVAL_EDGES)?;
    for (vi, v) in g.vertices.iter().enumerate() {
        if v.ends.len() % 2 == 1 {
            return Err(GridError::OddDegree(vi));
        }
        if let Some(f) = sigs.get(&v.sig) {
            if !crate::classes::is_eo(f) {
                return Err(GridError::NotEOSignature(v.sig.clone()));
            }
        }
    }
    let c = compile(g, sigs, true)?;
    Ok(c.sum(&c.base, 1))
}

/// Signature of a gadget on its dangling edges, in declared order.
pub fn realize_gadget(g: &Grid, sigs: &SigSet) -> Result<Signature, GridError> {
    check_size(g, MAX_REALIZE_EDGES)?;
    let c = compile(g, sigs, false)?;
    let k = g.dangling.len();
    let mut table = Vec::with_capacity(1 << k);
    for alpha in 0..1usize << k {
        let mut start = c.base.clone();
        for (p, inc) in c.dincid.iter().enumerate() {
            if (alpha >> (k - 1 - p)) & 1 == 1 {
                for &(v, mask) in inc {
                    start[v] ^= mask;
                }
            }
        }
        table.push(c.sum(&start, 1));
    }
    Ok(Signature::from_table(table).expect("power of two"))
}

/// Subdivide every edge with a `!=_2` vertex; the Holant value of the result
/// equals the #EO value of the input.
pub fn encode_eo_as_holant(g: &Grid, sigs: &SigSet) -> (Grid, SigSet) {
    let mut out_sigs = sigs.clone();
    let neq = out_sigs.fresh_name("neq2");
    out_sigs.insert(neq.clone(), Signature::neq2());
    let mut out = Grid::new();
    let mut halves: HashMap<(usize, u8), usize> = HashMap::new();
    for &e in &g.edges {
        let a = out.edge();
        let b = out.edge();
        halves.insert((e, 0), a);
        halves.insert((e, 1), b);
        out.vertex(neq.clone(), &[(a, 1), (b, 1)]);
    }
    let ends: Vec<Vertex> = g
        .vertices
        .iter()
        .map(|v| Vertex {
            sig: v.sig.clone(),
            ends: v
                .ends
                .iter()
                .map(|x| EdgeEnd {
                    edge: halves[&(x.edge, x.end)],
                    end: 0,
                })
                .collect(),
        })
        .collect();
    out.vertices.extend(ends);
    (out, out_sigs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub sig: String,
    pub vars: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CspInstance {
    pub n: usize,
    pub clauses: Vec<Clause>,
}

pub const MAX_CSP_VARS: usize = 24;

pub fn eval_csp(inst: &CspInstance, sigs: &SigSet) -> Result<Scalar, GridError> {
    if inst.n > MAX_CSP_VARS {
        return Err(GridError::TooLarge(inst.n));
    }
    let mut tabs = Vec::new();
    for (ci, c) in inst.clauses.iter().enumerate() {
        let f = sigs.get(&c.sig).ok_or_else(|| GridError::UnknownSignature(c.sig.clone()))?;
        if f.arity() != c.vars.len() {
            return Err(GridError::ClauseArity {
                clause: ci,
                got: c.vars.len(),
                arity: f.arity(),
            });
        }
        if let Some(&v) = c.vars.iter().find(|&&v| v >= inst.n) {
            return Err(GridError::ClauseVar {
                clause: ci,
                var: v,
                n: inst.n,
            });
        }
        tabs.push(f);
    }
    let mut acc = Scalar::zero();
    for x in 0..1usize << inst.n {
        let mut p = Scalar::one();
        for (c, f) in inst.clauses.iter().zip(tabs.iter()) {
            let d = c.vars.len();
            let idx = c
                .vars
                .iter()
                .enumerate()
                .fold(0, |a, (j, &v)| a | (((x >> (inst.n - 1 - v)) & 1) << (d - 1 - j)));
            p = &p * f.get(idx);
            if p.is_zero() {
                break;
            }
        }
        acc = &acc + &p;
    }
    Ok(acc)
}

/// Every variable occurs a multiple of `d` times.
pub fn validate_csp_d(inst: &CspInstance, d: usize) -> bool {
    let mut occ = vec![0usize; inst.n];
    for c in &inst.clauses {
        for &v in &c.vars {
            if v < inst.n {
                occ[v] += 1;
            }
        }
    }
    d > 0 && occ.iter().all(|&k| k % d == 0)
}

/// Holant(EQ, F) grid: an `=_k` vertex per variable joined to each of its
/// occurrences; an unused variable becomes `=_2` with a self-loop (value 2).
pub fn encode_csp_as_holant(inst: &CspInstance, sigs: &SigSet) -> (Grid, SigSet) {
    let mut out_sigs = sigs.clone();
    let mut g = Grid::new();
    let mut occ: Vec<Vec<usize>> = vec![Vec::new(); inst.n];
    let mut clause_edges = Vec::new();
    for c in &inst.clauses {
        let es: Vec<usize> = c
            .vars
            .iter()
            .map(|&v| {
                let e = g.edge();
                occ[v].push(e);
                e
            })
            .collect();
        clause_edges.push(es);
    }
    for (c, es) in inst.clauses.iter().zip(clause_edges) {
        let ends: Vec<(usize, u8)> = es.iter().map(|&e| (e, 0)).collect();
        g.vertex(c.sig.clone(), &ends);
    }
    let mut eq_names: HashMap<usize, String> = HashMap::new();
    for es in occ {
        let k = if es.is_empty() { 2 } else { es.len() };
        let name = eq_names
            .entry(k)
            .or_insert_with(|| {
                let n = out_sigs.fresh_name(&format!("eq{}", k));
                out_sigs.insert(n.clone(), Signature::eq(k));
                n
            })
            .clone();
        if es.is_empty() {
            let e = g.edge();
            g.vertex(name, &[(e, 0), (e, 1)]);
        } else {
            let ends: Vec<(usize, u8)> = es.iter().map(|&e| (e, 1)).collect();
            g.vertex(name, &ends);
        }
    }
    (g, out_sigs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridParams {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_arity: usize,
    /// Exact number of dangling edges.
    pub dangling: usize,
    /// `(name, arity)` choices; empty means one fresh name `v{i}` per vertex
    /// with a random arity in `1..=max_arity`.
    pub palette: Vec<(String, usize)>,
}

impl Default for GridParams {
    fn default() -> Self {
        GridParams {
            max_vertices: 5,
            max_edges: 8,
            max_arity: 4,
            dangling: 0,
            palette: Vec::new(),
        }
    }
}

/// Deterministic random grid; `None` if no valid grid was hit in a bounded
/// number of draws (e.g. a palette of only odd arities with no dangling).
pub fn random_grid(seed: u64, p: &GridParams) -> Option<Grid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let palette: Vec<&(String, usize)> = p.palette.iter().filter(|(_, a)| *a <= p.max_arity).collect();
    for _ in 0..1000 {
        let nv = rng.gen_range(1..=p.max_vertices.max(1));
        let mut verts: Vec<(String, usize)> = Vec::new();
        for i in 0..nv {
            if palette.is_empty() {
                verts.push((format!("v{}", i), rng.gen_range(1..=p.max_arity.max(1))));
            } else {
                verts.push(palette[rng.gen_range(0..palette.len())].clone());
            }
        }
        let total: usize = verts.iter().map(|v| v.1).sum();
        if total < p.dangling || (total - p.dangling) % 2 == 1 || (total - p.dangling) / 2 > p.max_edges {
            continue;
        }
        let mut slots: Vec<(usize, usize)> = verts.iter().enumerate().flat_map(|(vi, v)| (0..v.1).map(move |k| (vi, k))).collect();
        slots.shuffle(&mut rng);
        let mut ends: Vec<Vec<(usize, u8)>> = verts.iter().map(|v| vec![(0, 0); v.1]).collect();
        let mut g = Grid::new();
        for &(vi, k) in &slots[..p.dangling] {
            let e = g.dangle();
            ends[vi][k] = (e, 0);
        }
        for pair in slots[p.dangling..].chunks(2) {
            let e = g.edge();
            ends[pair[0].0][pair[0].1] = (e, 0);
            ends[pair[1].0][pair[1].1] = (e, 1);
        }
        for (v, es) in verts.iter().zip(ends) {
            g.vertex(v.0.clone(), &es);
        }
        return Some(g);
    }
    None
}

/// Random bipartite grid with `left` vertices `L{i}` and `right` vertices
/// `R{j}`; every edge has end 0 on the left. Degrees stay in `1..=max_degree`.
pub fn random_bipartite_grid(seed: u64, left: usize, right: usize, max_edges: usize, max_degree: usize) -> Grid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ldeg = vec![0usize; left];
    let mut rdeg = vec![0usize; right];
    let mut pairs = Vec::new();
    // cover every vertex first, then add random extra edges
    let cover = left.max(right);
    for k in 0..cover {
        let (l, r) = (k % left, k % right);
        if ldeg[l] < max_degree && rdeg[r] < max_degree {
            pairs.push((l, r));
            ldeg[l] += 1;
            rdeg[r] += 1;
        }
    }
    let extra = rng.gen_range(0..=max_edges.saturating_sub(pairs.len()));
    for _ in 0..extra {
        let (l, r) = (rng.gen_range(0..left), rng.gen_range(0..right));
        if ldeg[l] < max_degree && rdeg[r] < max_degree {
            pairs.push((l, r));
            ldeg[l] += 1;
            rdeg[r] += 1;
        }
    }
    let mut g = Grid::new();
    let mut lends: Vec<Vec<(usize, u8)>> = vec![Vec::new(); left];
    let mut rends: Vec<Vec<(usize, u8)>> = vec![Vec::new(); right];
    for (l, r) in pairs {
        let e = g.edge();
        lends[l].push((e, 0));
        rends[r].push((e, 1));
    }
    for es in lends.iter_mut().chain(rends.iter_mut()) {
        es.shuffle(&mut rng);
    }
    for (i, es) in lends.iter().enumerate() {
        g.vertex(format!("L{}", i), es);
    }
    for (j, es) in rends.iter().enumerate() {
        g.vertex(format!("R{}", j), es);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn set(items: &[(&str, Signature)]) -> SigSet {
        SigSet::from_sigs(items.iter().map(|(n, s)| (n.to_string(), s.clone())).collect())
    }

    #[test]
    fn triangle_of_eq2() {
        let s = set(&[("e", Signature::eq(2))]);
        let mut g = Grid::new();
        let (a, b, c) = (g.edge(), g.edge(), g.edge());
        g.vertex("e", &[(a, 0), (b, 1)]);
        g.vertex("e", &[(b, 0), (c, 1)]);
        g.vertex("e", &[(c, 0), (a, 1)]);
        assert_eq!(eval_holant(&g, &s).unwrap(), Scalar::int(2));
    }

    #[test]
    fn edge_between_isotropic_unaries() {
        let s = set(&[("u", Signature::unary(Scalar::one(), Scalar::i()))]);
        let mut g = Grid::new();
        let e = g.edge();
        g.vertex("u", &[(e, 0)]);
        g.vertex("u", &[(e, 1)]);
        assert_eq!(eval_holant(&g, &s).unwrap(), Scalar::zero());
    }

    #[test]
    fn parallel_neq2() {
        let s = set(&[("n", Signature::neq2())]);
        let mut g = Grid::new();
        let (a, b) = (g.edge(), g.edge());
        g.vertex("n", &[(a, 0), (b, 0)]);
        g.vertex("n", &[(a, 1), (b, 1)]);
        assert_eq!(eval_holant(&g, &s).unwrap(), Scalar::int(2));
        let (h, hs) = encode_eo_as_holant(&g, &s);
        assert_eq!(eval_eo(&g, &s).unwrap(), eval_holant(&h, &hs).unwrap());
        assert_eq!(eval_eo(&g, &s).unwrap(), Scalar::int(2));
    }

    #[test]
    fn eo_self_loop() {
        let s = set(&[("n", Signature::neq2())]);
        let mut g = Grid::new();
        let a = g.edge();
        g.vertex("n", &[(a, 0), (a, 1)]);
        let (h, hs) = encode_eo_as_holant(&g, &s);
        assert_eq!(eval_eo(&g, &s).unwrap(), eval_holant(&h, &hs).unwrap());
    }

    #[test]
    fn empty_grid_is_one() {
        assert_eq!(eval_holant(&Grid::new(), &SigSet::new(Field::Cyclo24)).unwrap(), Scalar::one());
        assert_eq!(eval_eo(&Grid::new(), &SigSet::new(Field::Cyclo24)).unwrap(), Scalar::one());
    }

    #[test]
    fn realize_examples() {
        let s = set(&[("e3", Signature::eq(3))]);
        let mut g = Grid::new();
        let (a, b, c) = (g.dangle(), g.dangle(), g.dangle());
        g.vertex("e3", &[(a, 0), (b, 0), (c, 0)]);
        assert_eq!(realize_gadget(&g, &s).unwrap(), Signature::eq(3));
        let mut g = Grid::new();
        let a = g.dangle();
        let l = g.edge();
        g.vertex("e3", &[(a, 0), (l, 0), (l, 1)]);
        assert_eq!(realize_gadget(&g, &s).unwrap(), Signature::from_ints(&[1, 1]));
    }

    #[test]
    fn csp_examples() {
        let s = set(&[("e", Signature::eq(2))]);
        let inst = CspInstance {
            n: 1,
            clauses: vec![Clause {
                sig: "e".into(),
                vars: vec![0, 0],
            }],
        };
        assert_eq!(eval_csp(&inst, &s).unwrap(), Scalar::int(2));
        let inst3 = CspInstance {
            n: 2,
            clauses: vec![
                Clause {
                    sig: "e".into(),
                    vars: vec![0, 0],
                },
                Clause {
                    sig: "e".into(),
                    vars: vec![0, 1],
                },
            ],
        };
        assert!(!validate_csp_d(&inst3, 2));
        let (g, gs) = encode_csp_as_holant(&inst3, &s);
        assert_eq!(eval_holant(&g, &gs).unwrap(), eval_csp(&inst3, &s).unwrap());
    }

    #[test]
    fn random_grids_are_valid_and_deterministic() {
        let p = GridParams::default();
        for seed in 0..100 {
            let g = random_grid(seed, &p).unwrap();
            assert_eq!(Some(&g), random_grid(seed, &p).as_ref());
            assert!(g.dangling.is_empty());
            let sigs = SigSet::from_sigs(g.vertices.iter().map(|v| (v.sig.clone(), Signature::zeros(v.ends.len()))).collect());
            g.validate(&sigs).unwrap();
        }
    }

    #[test]
    fn threads_agree() {
        let s = set(&[("f", Signature::from_ints(&[1, 2, 3, 4, 5, 6, 7, 8]))]);
        let p = GridParams {
            max_vertices: 8,
            max_edges: 12,
            max_arity: 3,
            dangling: 0,
            palette: vec![("f".into(), 3)],
        };
        let g = (0..).filter_map(|seed| random_grid(seed, &p)).find(|g| g.edges.len() >= 10).unwrap();
        assert_eq!(eval_holant_threads(&g, &s, 4).unwrap(), eval_holant(&g, &s).unwrap());
    }
}
