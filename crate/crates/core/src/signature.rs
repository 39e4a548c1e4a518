//! Signatures as dense tables, and the elementary gadget calculus.
//!
//! Bit convention: variable `i` (0-based) of an arity-`n` signature is bit
//! `n-1-i` of the table index, so the table is listed in lexicographic order of
//! the bitstring `x_1 x_2 ... x_n` and serialized strings read most significant
//! first.

use crate::scalar::{Field, Scalar};
use thiserror::Error;

pub const MAX_ARITY: usize = 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SigError {
    #[error("variable labels collide: {0}")]
    LabelCollision(String),
    #[error("not a permutation of {0} elements")]
    BadPermutation(usize),
    #[error("variable index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("self-loop needs two distinct variables")]
    SameIndex,
    #[error("a variable is paired twice")]
    DuplicatePairing,
    #[error("unknown variable {0}")]
    UnknownVar(String),
    #[error("arity {0} exceeds the dense table limit")]
    TooLarge(usize),
    #[error("expected arity {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("table length {0} is not a power of two")]
    BadTableLength(usize),
}

/// Value of variable `i` in index `alpha` of an arity-`n` table.
#[inline]
pub fn bit(alpha: usize, n: usize, i: usize) -> usize {
    (alpha >> (n - 1 - i)) & 1
}

/// Index mask of variable `i`.
#[inline]
pub fn var_mask(n: usize, i: usize) -> usize {
    1 << (n - 1 - i)
}

#[inline]
pub fn weight(alpha: usize) -> usize {
    alpha.count_ones() as usize
}

/// Render an index as its bitstring.
pub fn bitstring(alpha: usize, n: usize) -> String {
    (0..n).map(|i| if bit(alpha, n, i) == 1 { '1' } else { '0' }).collect()
}

pub fn parse_bitstring(s: &str) -> Option<usize> {
    let mut v = 0usize;
    for c in s.chars() {
        v = (v << 1)
            | match c {
                '0' => 0,
                '1' => 1,
                _ => return None,
            };
    }
    Some(v)
}

/// Insert bit `c` at variable position `i` of an arity-`n-1` index.
#[inline]
fn insert_bit(beta: usize, n: usize, i: usize, c: usize) -> usize {
    // positions 0..i stay high, then c, then the rest
    let low_len = n - 1 - i;
    let low = beta & ((1 << low_len) - 1);
    let high = beta >> low_len;
    (((high << 1) | c) << low_len) | low
}

#[derive(Clone, Debug)]
pub struct Signature {
    vars: Vec<String>,
    table: Vec<Scalar>,
}

/// Tables compare by value; variable labels are bookkeeping only.
impl PartialEq for Signature {
    fn eq(&self, other: &Signature) -> bool {
        self.table == other.table
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{}", i)).collect()
}

impl Signature {
    pub fn from_table(table: Vec<Scalar>) -> Result<Signature, SigError> {
        let len = table.len();
        if !len.is_power_of_two() {
            return Err(SigError::BadTableLength(len));
        }
        let n = len.trailing_zeros() as usize;
        if n > MAX_ARITY {
            return Err(SigError::TooLarge(n));
        }
        Ok(Signature {
            vars: default_labels(n),
            table,
        })
    }

    /// Table from small integers; convenience for tests and constants.
    pub fn from_ints(vals: &[i64]) -> Signature {
        Signature::from_table(vals.iter().map(|&v| Scalar::int(v)).collect()).expect("power-of-two length")
    }

    /// Symmetric signature `[f_0, ..., f_n]`.
    pub fn symmetric(profile: &[Scalar]) -> Signature {
        let n = profile.len() - 1;
        assert!(n <= MAX_ARITY);
        let table = (0..1usize << n).map(|a| profile[weight(a)].clone()).collect();
        Signature {
            vars: default_labels(n),
            table,
        }
    }

    pub fn symmetric_ints(profile: &[i64]) -> Signature {
        Signature::symmetric(&profile.iter().map(|&v| Scalar::int(v)).collect::<Vec<_>>())
    }

    pub fn zeros(n: usize) -> Signature {
        Signature {
            vars: default_labels(n),
            table: vec![Scalar::zero(); 1 << n],
        }
    }

    pub fn constant(c: Scalar) -> Signature {
        Signature {
            vars: vec![],
            table: vec![c],
        }
    }

    pub fn unary(a: Scalar, b: Scalar) -> Signature {
        Signature {
            vars: default_labels(1),
            table: vec![a, b],
        }
    }

    /// Equality `=_n`.
    pub fn eq(n: usize) -> Signature {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        p[n] = 1;
        if n == 0 {
            p[0] = 1;
        }
        Signature::symmetric_ints(&p)
    }

    pub fn neq2() -> Signature {
        Signature::symmetric_ints(&[0, 1, 0])
    }

    pub fn delta(c: usize) -> Signature {
        if c == 0 {
            Signature::from_ints(&[1, 0])
        } else {
            Signature::from_ints(&[0, 1])
        }
    }

    pub fn delta0() -> Signature {
        Signature::delta(0)
    }

    pub fn delta1() -> Signature {
        Signature::delta(1)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Signature, SigError> {
        if labels.len() != self.arity() {
            return Err(SigError::ArityMismatch {
                expected: self.arity(),
                got: labels.len(),
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(SigError::LabelCollision(l.clone()));
            }
        }
        self.vars = labels;
        Ok(self)
    }

    /// Reset labels to `x1..xn`.
    pub fn relabeled(mut self) -> Signature {
        self.vars = default_labels(self.arity());
        self
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn table(&self) -> &[Scalar] {
        &self.table
    }

    pub fn get(&self, alpha: usize) -> &Scalar {
        &self.table[alpha]
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn field(&self) -> Field {
        match self.table.iter().find_map(|s| s.eps()) {
            Some(eps) => Field::Approx { eps },
            None => Field::Cyclo24,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.table.iter().all(|s| s.is_exact())
    }

    pub fn into_field(self, field: Field) -> Signature {
        Signature {
            vars: self.vars,
            table: self.table.into_iter().map(|s| s.into_field(field)).collect(),
        }
    }

    /// Non-trivial means some entry is nonzero.
    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(|s| s.is_zero())
    }

    /// Indices of nonzero entries, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.table.len()).filter(|&a| !self.table[a].is_zero()).collect()
    }

    pub fn in_support(&self, alpha: usize) -> bool {
        !self.table[alpha].is_zero()
    }

    /// Largest entry magnitude (for tolerance scaling).
    pub fn max_abs(&self) -> f64 {
        self.table.iter().map(|s| s.to_complex().norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: &Scalar) -> Signature {
        Signature {
            vars: self.vars.clone(),
            table: self.table.iter().map(|v| v * c).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(usize, &Scalar) -> Scalar) -> Signature {
        Signature {
            vars: self.vars.clone(),
            table: self.table.iter().enumerate().map(|(a, v)| f(a, v)).collect(),
        }
    }

    /// Keep entries whose index satisfies `keep`, zero elsewhere (`f|_S`).
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Signature {
        self.map(|a, v| if keep(a) { v.clone() } else { Scalar::zero() })
    }

    /// First nonzero entry, if any.
    pub fn first_nonzero(&self) -> Option<(usize, &Scalar)> {
        self.table.iter().enumerate().find(|(_, v)| !v.is_zero())
    }

    /// True when `self = c * other` for some nonzero scalar `c`.
    pub fn is_multiple_of(&self, other: &Signature) -> bool {
        if self.arity() != other.arity() {
            return false;
        }
        let (Some((a, x)), Some((b, y))) = (self.first_nonzero(), other.first_nonzero()) else {
            return self.is_trivial() && other.is_trivial();
        };
        if a != b {
            return false;
        }
        // self * y == other * x entrywise
        self.table.iter().zip(other.table.iter()).all(|(s, o)| &(s * y) == &(o * x))
    }

    /// Tensor product; labels must be disjoint.
    pub fn tensor(&self, g: &Signature) -> Result<Signature, SigError> {
        for l in g.vars.iter() {
            if self.vars.contains(l) {
                return Err(SigError::LabelCollision(l.clone()));
            }
        }
        let mut out = self.tensor_fresh(g)?;
        out.vars = self.vars.iter().chain(g.vars.iter()).cloned().collect();
        Ok(out)
    }

    /// Tensor product with fresh labels `x1..x(n+m)`.
    pub fn tensor_fresh(&self, g: &Signature) -> Result<Signature, SigError> {
        let n = self.arity() + g.arity();
        if n > MAX_ARITY {
            return Err(SigError::TooLarge(n));
        }
        let mut table = Vec::with_capacity(1 << n);
        for a in self.table.iter() {
            for b in g.table.iter() {
                table.push(if a.is_zero() { Scalar::zero() } else { a * b });
            }
        }
        Ok(Signature {
            vars: default_labels(n),
            table,
        })
    }

    /// `self^{(x) k}` with fresh labels.
    pub fn tensor_power(&self, k: usize) -> Result<Signature, SigError> {
        let mut acc = Signature::constant(Scalar::one());
        for _ in 0..k {
            acc = acc.tensor_fresh(self)?;
        }
        Ok(acc)
    }

    /// `result(alpha) = f(alpha_{pi(0)}, ..., alpha_{pi(n-1)})`: variable `j` of
    /// `f` becomes variable `pi[j]` of the result.
    pub fn permute_vars(&self, pi: &[usize]) -> Result<Signature, SigError> {
        let n = self.arity();
        if pi.len() != n {
            return Err(SigError::BadPermutation(n));
        }
        let mut seen = vec![false; n];
        for &p in pi {
            if p >= n || seen[p] {
                return Err(SigError::BadPermutation(n));
            }
            seen[p] = true;
        }
        let mut table = vec![Scalar::zero(); 1 << n];
        for (alpha, slot) in table.iter_mut().enumerate() {
            let mut src = 0;
            for (j, &p) in pi.iter().enumerate() {
                src |= bit(alpha, n, p) << (n - 1 - j);
            }
            *slot = self.table[src].clone();
        }
        let mut vars = vec![String::new(); n];
        for (j, &p) in pi.iter().enumerate() {
            vars[p] = self.vars[j].clone();
        }
        Ok(Signature { vars, table })
    }

    /// `f^{x_i = c}`.
    pub fn pin(&self, i: usize, c: usize) -> Result<Signature, SigError> {
        let n = self.arity();
        if i >= n {
            return Err(SigError::IndexOutOfRange { index: i, arity: n });
        }
        let table = (0..1usize << (n - 1)).map(|b| self.table[insert_bit(b, n, i, c & 1)].clone()).collect();
        let mut vars = self.vars.clone();
        vars.remove(i);
        Ok(Signature { vars, table })
    }

    /// Pin several variables at once; `pins` lists (variable, bit) in any order.
    pub fn pin_many(&self, pins: &[(usize, usize)]) -> Result<Signature, SigError> {
        let mut sorted = pins.to_vec();
        sorted.sort_by(|a, b| b.0.cmp(&a.0));
        let mut f = self.clone();
        for (i, c) in sorted {
            f = f.pin(i, c)?;
        }
        Ok(f)
    }

    /// Join variables `i` and `j` through binary `b`:
    /// `sum_{u,v} b(u,v) f(.. x_i=u .. x_j=v ..)`.
    pub fn self_loop(&self, i: usize, j: usize, b: &Signature) -> Result<Signature, SigError> {
        let n = self.arity();
        if b.arity() != 2 {
            return Err(SigError::ArityMismatch { expected: 2, got: b.arity() });
        }
        for &k in &[i, j] {
            if k >= n {
                return Err(SigError::IndexOutOfRange { index: k, arity: n });
            }
        }
        if i == j {
            return Err(SigError::SameIndex);
        }
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        let mut table = vec![Scalar::zero(); 1 << (n - 2)];
        for (beta, slot) in table.iter_mut().enumerate() {
            let mut acc = Scalar::zero();
            for u in 0..2 {
                for v in 0..2 {
                    let w = &b.table[(u << 1) | v];
                    if w.is_zero() {
                        continue;
                    }
                    let (bl, bh) = if i < j { (u, v) } else { (v, u) };
                    let a = insert_bit(insert_bit(beta, n - 1, lo, bl), n, hi, bh);
                    let x = &self.table[a];
                    if !x.is_zero() {
                        acc = &acc + &(w * x);
                    }
                }
            }
            *slot = acc;
        }
        let mut vars = self.vars.clone();
        vars.remove(hi);
        vars.remove(lo);
        Ok(Signature { vars, table })
    }

    /// Connect each pair `(f-var, g-var)` by an edge. Result variables are
    /// `f`'s unpaired ones followed by `g`'s unpaired ones, in order.
    pub fn compose(&self, g: &Signature, pairs: &[(usize, usize)]) -> Result<Signature, SigError> {
        let (n, m) = (self.arity(), g.arity());
        let mut fu = vec![false; n];
        let mut gu = vec![false; m];
        for &(a, b) in pairs {
            if a >= n {
                return Err(SigError::IndexOutOfRange { index: a, arity: n });
            }
            if b >= m {
                return Err(SigError::IndexOutOfRange { index: b, arity: m });
            }
            if fu[a] || gu[b] {
                return Err(SigError::DuplicatePairing);
            }
            fu[a] = true;
            gu[b] = true;
        }
        let f_free: Vec<usize> = (0..n).filter(|&a| !fu[a]).collect();
        let g_free: Vec<usize> = (0..m).filter(|&b| !gu[b]).collect();
        let r = f_free.len() + g_free.len();
        if r > MAX_ARITY {
            return Err(SigError::TooLarge(r));
        }
        let p = pairs.len();
        let mut table = vec![Scalar::zero(); 1 << r];
        for (gamma, slot) in table.iter_mut().enumerate() {
            let mut fa = 0usize;
            for (k, &a) in f_free.iter().enumerate() {
                fa |= bit(gamma, r, k) << (n - 1 - a);
            }
            let mut ga = 0usize;
            for (k, &b) in g_free.iter().enumerate() {
                ga |= bit(gamma, r, f_free.len() + k) << (m - 1 - b);
            }
            let mut acc = Scalar::zero();
            for s in 0..1usize << p {
                let (mut fi, mut gi) = (fa, ga);
                for (k, &(a, b)) in pairs.iter().enumerate() {
                    let v = (s >> k) & 1;
                    fi |= v << (n - 1 - a);
                    gi |= v << (m - 1 - b);
                }
                let x = &self.table[fi];
                if x.is_zero() {
                    continue;
                }
                let y = &g.table[gi];
                if !y.is_zero() {
                    acc = &acc + &(x * y);
                }
            }
            *slot = acc;
        }
        let vars: Vec<String> = f_free
            .iter()
            .map(|&a| self.vars[a].clone())
            .chain(g_free.iter().map(|&b| g.vars[b].clone()))
            .collect();
        let mut out = Signature { vars, table };
        if has_duplicates(&out.vars) {
            out = out.relabeled();
        }
        Ok(out)
    }

    /// Reshape with `row_vars` (in the given order) indexing rows.
    pub fn matrix_view(&self, row_vars: &[usize]) -> Result<MatrixView, SigError> {
        let n = self.arity();
        let mut used = vec![false; n];
        for &v in row_vars {
            if v >= n {
                return Err(SigError::UnknownVar(format!("#{}", v)));
            }
            if used[v] {
                return Err(SigError::DuplicatePairing);
            }
            used[v] = true;
        }
        let col_vars: Vec<usize> = (0..n).filter(|&v| !used[v]).collect();
        let (r, c) = (row_vars.len(), col_vars.len());
        let mut entries = vec![vec![Scalar::zero(); 1 << c]; 1 << r];
        for (rho, row) in entries.iter_mut().enumerate() {
            for (kappa, e) in row.iter_mut().enumerate() {
                *e = self.table[self.join_index(row_vars, rho, &col_vars, kappa)].clone();
            }
        }
        Ok(MatrixView {
            row_vars: row_vars.to_vec(),
            col_vars,
            entries,
        })
    }

    /// Table index for a row/column split assignment.
    pub fn join_index(&self, row_vars: &[usize], rho: usize, col_vars: &[usize], kappa: usize) -> usize {
        let n = self.arity();
        let (r, c) = (row_vars.len(), col_vars.len());
        let mut a = 0;
        for (k, &v) in row_vars.iter().enumerate() {
            a |= bit(rho, r, k) << (n - 1 - v);
        }
        for (k, &v) in col_vars.iter().enumerate() {
            a |= bit(kappa, c, k) << (n - 1 - v);
        }
        a
    }

    /// Weight profile when the table depends only on Hamming weight.
    pub fn to_symmetric(&self) -> Option<Vec<Scalar>> {
        let n = self.arity();
        let mut prof: Vec<Option<Scalar>> = vec![None; n + 1];
        for (a, v) in self.table.iter().enumerate() {
            match &prof[weight(a)] {
                None => prof[weight(a)] = Some(v.clone()),
                Some(p) => {
                    if p != v {
                        return None;
                    }
                }
            }
        }
        Some(prof.into_iter().map(|p| p.expect("every weight occurs")).collect())
    }

    /// Subsignature on the support points satisfying `keep` is nonzero?
    pub fn support_weights(&self) -> Vec<usize> {
        let mut w: Vec<usize> = self.support().into_iter().map(weight).collect();
        w.sort_unstable();
        w.dedup();
        w
    }
}

fn has_duplicates(v: &[String]) -> bool {
    v.iter().enumerate().any(|(i, l)| v[..i].contains(l))
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixView {
    pub row_vars: Vec<usize>,
    pub col_vars: Vec<usize>,
    pub entries: Vec<Vec<Scalar>>,
}

impl MatrixView {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, |r| r.len())
    }

    /// Back to a signature with the original variable order.
    pub fn to_signature(&self) -> Signature {
        let n = self.row_vars.len() + self.col_vars.len();
        let mut table = vec![Scalar::zero(); 1 << n];
        let probe = Signature::zeros(n);
        for (rho, row) in self.entries.iter().enumerate() {
            for (kappa, e) in row.iter().enumerate() {
                table[probe.join_index(&self.row_vars, rho, &self.col_vars, kappa)] = e.clone();
            }
        }
        Signature {
            vars: default_labels(n),
            table,
        }
    }

    pub fn matmul(&self, other: &MatrixView) -> Vec<Vec<Scalar>> {
        let (r, k, c) = (self.rows(), self.cols(), other.cols());
        assert_eq!(k, other.rows());
        (0..r)
            .map(|i| (0..c).map(|j| (0..k).map(|t| &self.entries[i][t] * &other.entries[t][j]).sum()).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_examples() {
        let d0 = Signature::delta0();
        let d00 = d0.tensor_fresh(&d0).unwrap();
        assert_eq!(d00, Signature::from_ints(&[1, 0, 0, 0]));
        let a = Signature::from_ints(&[1, 1]);
        let b = Signature::from_ints(&[1, -1]).with_labels(vec!["y".into()]).unwrap();
        assert_eq!(a.tensor(&b).unwrap(), Signature::from_ints(&[1, -1, 1, -1]));
        assert!(matches!(a.tensor(&a), Err(SigError::LabelCollision(_))));
    }

    #[test]
    fn permute_examples() {
        let f = Signature::delta0().tensor_fresh(&Signature::delta1()).unwrap();
        let g = Signature::delta1().tensor_fresh(&Signature::delta0()).unwrap();
        assert_eq!(f.permute_vars(&[1, 0]).unwrap(), g);
        assert_eq!(f.permute_vars(&[0, 1]).unwrap(), f);
        assert!(f.permute_vars(&[0, 0]).is_err());
        let h = Signature::from_ints(&[1, 2, 3, 4, 5, 6, 7, 8]);
        let pi = [2, 0, 1];
        let inv = [1, 2, 0];
        assert_eq!(h.permute_vars(&pi).unwrap().permute_vars(&inv).unwrap(), h);
        // variable j of h becomes variable pi[j]
        let p = h.permute_vars(&pi).unwrap();
        assert_eq!(p.get(0b001), h.get(0b100));
    }

    #[test]
    fn pin_examples() {
        let d00 = Signature::from_ints(&[1, 0, 0, 0]);
        assert_eq!(Signature::eq(3).pin(0, 0).unwrap(), d00);
        assert_eq!(Signature::neq2().pin(0, 0).unwrap(), Signature::delta1());
        let w = Signature::symmetric_ints(&[0, 1, 0, 0]);
        assert_eq!(w.pin(0, 1).unwrap(), d00);
        assert!(Signature::constant(Scalar::one()).pin(0, 0).is_err());
    }

    #[test]
    fn self_loop_examples() {
        let eq2 = Signature::eq(2);
        let neq = Signature::neq2();
        assert_eq!(Signature::eq(3).self_loop(0, 1, &eq2).unwrap(), Signature::from_ints(&[1, 1]));
        let ab = Signature::symmetric_ints(&[3, 0, 0, 5]);
        assert!(ab.self_loop(0, 1, &neq).unwrap().is_trivial());
        let w = Signature::symmetric_ints(&[0, 1, 0, 0]);
        assert_eq!(w.self_loop(0, 1, &neq).unwrap(), Signature::from_ints(&[2, 0]));
        assert_eq!(w.self_loop(1, 1, &neq), Err(SigError::SameIndex));
    }

    #[test]
    fn compose_examples() {
        let neq = Signature::neq2();
        assert_eq!(Signature::delta1().compose(&neq, &[(0, 0)]).unwrap(), Signature::delta0());
        let eq2 = Signature::eq(2);
        assert_eq!(eq2.compose(&eq2, &[(1, 0)]).unwrap(), eq2);
        assert_eq!(eq2.compose(&eq2, &[(1, 0), (1, 1)]), Err(SigError::DuplicatePairing));
        let f = Signature::from_ints(&[1, 2, 3, 4]);
        let g = Signature::from_ints(&[5, 6, 7, 8]);
        let h = f.compose(&g, &[(1, 0)]).unwrap();
        assert_eq!(h, Signature::from_ints(&[19, 22, 43, 50]));
    }

    #[test]
    fn matrix_view_examples() {
        let m = Signature::eq(2).matrix_view(&[0]).unwrap();
        assert_eq!(m.entries, vec![vec![Scalar::one(), Scalar::zero()], vec![Scalar::zero(), Scalar::one()]]);
        let f = Signature::from_ints(&[1, 2, 3, 4, 5, 6, 7, 8]);
        let v = f.matrix_view(&[0, 2]).unwrap();
        // row (x1,x3) = (1,0), column x2 = 1 -> index 110
        assert_eq!(v.entries[0b10][1], Scalar::int(7));
        assert_eq!(v.to_signature(), f);
    }

    #[test]
    fn symmetric_examples() {
        assert_eq!(
            Signature::eq(3).to_symmetric().unwrap(),
            vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one()]
        );
        let w = Signature::from_ints(&[0, 1, 1, 0, 1, 0, 0, 0]);
        assert_eq!(
            w.to_symmetric().unwrap(),
            vec![Scalar::zero(), Scalar::one(), Scalar::zero(), Scalar::zero()]
        );
        assert!(Signature::from_ints(&[0, 1, 2, 0]).to_symmetric().is_none());
    }
}
