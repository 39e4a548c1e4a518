//! Unique prime factorization of signatures into irreducible tensor factors.

use crate::scalar::Scalar;
use crate::signature::Signature;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FactorError {
    #[error("the zero signature has no factorization")]
    TrivialSignature,
    #[error("split must be a nonempty proper subset of the variables")]
    EmptySplit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    /// Original variable indices, ascending.
    pub vars: Vec<usize>,
    pub sig: Signature,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub arity: usize,
    pub factors: Vec<Factor>,
    pub scale: Scalar,
}

impl Factorization {
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.factors.iter().map(|f| f.vars.clone()).collect()
    }

    /// `scale * (x) factors`, placed back on their variables.
    pub fn reconstruct(&self) -> Signature {
        let n = self.arity;
        let table = (0..1usize << n)
            .map(|alpha| {
                let mut acc = self.scale.clone();
                for f in &self.factors {
                    let idx = sub_index(alpha, n, &f.vars);
                    acc = &acc * f.sig.get(idx);
                    if acc.is_zero() {
                        break;
                    }
                }
                acc
            })
            .collect();
        Signature::from_table(table).expect("power of two")
    }
}

/// Index of `alpha` restricted to `vars` (in the order given).
pub fn sub_index(alpha: usize, n: usize, vars: &[usize]) -> usize {
    let k = vars.len();
    vars.iter()
        .enumerate()
        .fold(0, |acc, (j, &v)| acc | (((alpha >> (n - 1 - v)) & 1) << (k - 1 - j)))
}

fn mask_of(n: usize, vars: &[usize]) -> usize {
    vars.iter().fold(0, |m, &v| m | (1 << (n - 1 - v)))
}

// rank <= 1 of the (S, complement) reshape, tested against one pivot
fn rank_one_mask(f: &Signature, smask: usize) -> bool {
    let Some((p, pv)) = f.first_nonzero() else {
        return true;
    };
    let scale = f.max_abs().powi(2);
    let n = f.arity();
    let full = (1usize << n) - 1;
    let cmask = full & !smask;
    for alpha in 0..1usize << n {
        let a = f.get(alpha);
        let r = f.get((alpha & smask) | (p & cmask));
        let c = f.get((p & smask) | (alpha & cmask));
        let lhs = a * pv;
        let rhs = r * c;
        if !(&lhs - &rhs).is_negligible(scale) {
            return false;
        }
    }
    true
}

/// True iff `f = g (x) h` across `(S, complement)`, i.e. all 2x2 minors of the
/// reshaped matrix vanish.
pub fn is_rank_one_split(f: &Signature, s: &[usize]) -> Result<bool, FactorError> {
    if f.is_trivial() {
        return Err(FactorError::TrivialSignature);
    }
    let n = f.arity();
    if s.is_empty() || s.len() >= n || s.iter().any(|&v| v >= n) {
        return Err(FactorError::EmptySplit);
    }
    Ok(rank_one_mask(f, mask_of(n, s)))
}

// next k-combination of 0..m in lexicographic order
fn next_combo(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < m - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Finest tensor factorization; blocks sorted by least variable, each factor
/// normalized to have first nonzero entry 1.
pub fn upf(f: &Signature) -> Result<Factorization, FactorError> {
    if f.is_trivial() {
        return Err(FactorError::TrivialSignature);
    }
    let n = f.arity();
    let mut scale = if n == 0 { f.get(0).clone() } else { Scalar::one() };
    let mut factors = Vec::new();
    // current remainder g lives on `rest` (original indices, ascending)
    let mut rest: Vec<usize> = (0..n).collect();
    let mut g = f.clone().relabeled();
    while !rest.is_empty() {
        let r = rest.len();
        let block_local = smallest_block(&g);
        let others: Vec<usize> = (0..r).filter(|v| !block_local.contains(v)).collect();
        let (p, pv) = {
            let (p, v) = g.first_nonzero().expect("nontrivial");
            (p, v.clone())
        };
        let bmask = mask_of(r, &block_local);
        // factor on the block: g(beta, p_rest)
        let factor_table: Vec<Scalar> = (0..1usize << block_local.len())
            .map(|beta| g.get(spread(beta, r, &block_local) | (p & !bmask)).clone())
            .collect();
        let rest_table: Vec<Scalar> = (0..1usize << others.len())
            .map(|gamma| g.get((p & bmask) | spread(gamma, r, &others)).clone())
            .collect();
        // g = factor (x) rest / g(p); normalize factor by its lead entry
        let factor = Signature::from_table(factor_table).expect("pow2");
        let lead = factor.first_nonzero().expect("nontrivial").1.clone();
        let lead_inv = lead.inv().expect("nonzero");
        let factor = factor.scale(&lead_inv);
        let labels: Vec<String> = block_local.iter().map(|&v| f.vars()[rest[v]].clone()).collect();
        let factor = factor.with_labels(labels).expect("labels of a valid signature");
        scale = &scale * &(&lead * &pv.inv().expect("nonzero"));
        factors.push(Factor {
            vars: block_local.iter().map(|&v| rest[v]).collect(),
            sig: factor,
        });
        g = Signature::from_table(rest_table).expect("pow2");
        rest = others.iter().map(|&v| rest[v]).collect();
        if rest.is_empty() {
            // g is the arity-0 value g(p)
            scale = &scale * g.get(0);
        }
    }
    Ok(Factorization { arity: n, factors, scale })
}

// place the bits of `beta` (|vars| bits) onto positions `vars` of an arity-n index
fn spread(beta: usize, n: usize, vars: &[usize]) -> usize {
    let k = vars.len();
    vars.iter()
        .enumerate()
        .fold(0, |acc, (j, &v)| acc | (((beta >> (k - 1 - j)) & 1) << (n - 1 - v)))
}

// smallest set containing variable 0 that splits off; by size then lex order
fn smallest_block(g: &Signature) -> Vec<usize> {
    let r = g.arity();
    for k in 0..r.saturating_sub(1) {
        // choose k companions from 1..r
        let m = r - 1;
        let mut c: Vec<usize> = (0..k).collect();
        loop {
            let mut block = vec![0];
            block.extend(c.iter().map(|&x| x + 1));
            if rank_one_mask(g, mask_of(r, &block)) {
                return block;
            }
            if k == 0 || !next_combo(&mut c, m) {
                break;
            }
        }
    }
    (0..r).collect()
}

pub fn is_irreducible(f: &Signature) -> Result<bool, FactorError> {
    Ok(upf(f)?.factors.len() == 1)
}
