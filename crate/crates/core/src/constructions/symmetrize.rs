//! Search for a symmetric GHZ-type ternary gadget built from copies of `f`.

use super::ghz::{entanglement_class, Entanglement};
use super::{ConstructionError, GadgetScript, Step};
use crate::signature::Signature;

/// A triangle of three copies of `f`: copy `t` keeps variable `p` dangling and
/// joins its `q` to the `r` of copy `t + 1`. The result is invariant under
/// rotating the outputs, which for arity three means symmetric.
fn triangle(f: &Signature, p: usize, q: usize, r: usize) -> Result<GadgetScript, ConstructionError> {
    let mut s = GadgetScript::new("symmetrize_search", ("f", f));
    s.with_input("eq2", &Signature::eq(2).into_field(f.field()));
    s.steps.push(Step::Tensor { input: "f".into() });
    s.steps.push(Step::Tensor { input: "f".into() });
    // free variables as (copy, var)
    let mut free: Vec<(usize, usize)> = (0..3).flat_map(|c| (0..3).map(move |v| (c, v))).collect();
    for t in 0..3 {
        let x = free.iter().position(|&s| s == (t, q)).expect("free");
        let y = free.iter().position(|&s| s == ((t + 1) % 3, r)).expect("free");
        let (i, j) = (x.min(y), x.max(y));
        free.remove(j);
        free.remove(i);
        s.steps.push(Step::SelfLoop { i, j, b: "eq2".into() });
    }
    debug_assert_eq!(free, vec![(0, p), (1, p), (2, p)]);
    s.claimed = s.replay()?;
    Ok(s)
}

/// Symmetric GHZ-type gadget using at most `budget` copies of the irreducible
/// ternary `f`. Already symmetric inputs return the empty script.
pub fn symmetrize_search(f: &Signature, budget: usize) -> Result<GadgetScript, ConstructionError> {
    if f.arity() != 3 {
        return Err(ConstructionError::NotTernary);
    }
    entanglement_class(f)?;
    let good = |h: &Signature| h.to_symmetric().is_some() && matches!(entanglement_class(h), Ok(Entanglement::GHZ));
    if good(f) {
        return Ok(GadgetScript::new("symmetrize_search", ("f", f)));
    }
    if budget >= 3 {
        for p in 0..3 {
            for q in (0..3).filter(|&q| q != p) {
                let r = 3 - p - q;
                let s = triangle(f, p, q, r)?;
                if good(&s.claimed) {
                    return Ok(s);
                }
            }
        }
    }
    Err(ConstructionError::SearchExhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::transforms::{apply_slocc, Mat2};

    #[test]
    fn symmetric_input_is_returned_as_is() {
        let s = symmetrize_search(&Signature::eq(3), 1).unwrap();
        assert!(s.steps.is_empty());
    }

    #[test]
    fn slocc_ghz_point_is_symmetrized() {
        let ms = [
            Mat2::ints(1, 1, 0, 1),
            Mat2::ints(2, 0, 1, 1),
            Mat2::new(Scalar::one(), Scalar::i(), Scalar::int(1), Scalar::int(-1)),
        ];
        let f = apply_slocc(&ms, &Signature::eq(3)).unwrap();
        let s = symmetrize_search(&f, 3).unwrap();
        assert!(s.verify());
        assert!(s.claimed.to_symmetric().is_some());
        assert_eq!(symmetrize_search(&f, 1), Err(ConstructionError::SearchExhausted));
    }
}
