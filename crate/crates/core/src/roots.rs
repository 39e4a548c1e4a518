//! Exact k-th roots inside Q(zeta_24), when they exist.
//!
//! A root is pinned down by its images under the complex embeddings. We try
//! every consistent choice of root per embedding, solve for the coefficient
//! vector in floating point, round to nearby rationals, and keep a candidate
//! only if it verifies exactly.

use crate::cyclo::{Cyclo, DEGREE};
use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use std::sync::OnceLock;

// embedding exponents; the last four are the conjugates of the first four
const EMB: [usize; DEGREE] = [1, 5, 7, 11, 23, 19, 17, 13];

fn zeta(k: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k % 24) as f64 / 24.0)
}

// inverse of V[r][m] = zeta^{EMB[r] m}
fn vinv() -> &'static Vec<Vec<Complex64>> {
    static V: OnceLock<Vec<Vec<Complex64>>> = OnceLock::new();
    V.get_or_init(|| {
        let n = DEGREE;
        let mut a: Vec<Vec<Complex64>> = (0..n)
            .map(|r| {
                let mut row: Vec<Complex64> = (0..n).map(|m| zeta(EMB[r] * m)).collect();
                row.extend((0..n).map(|c| if c == r { Complex64::one() } else { Complex64::zero() }));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm())).expect("rows");
            a.swap(col, piv);
            let p = a[col][col];
            for v in a[col].iter_mut() {
                *v /= p;
            }
            for r in 0..n {
                if r != col {
                    let factor = a[r][col];
                    if factor.norm() > 0.0 {
                        let pivot_row = a[col].clone();
                        for (v, pv) in a[r].iter_mut().zip(pivot_row) {
                            *v -= factor * pv;
                        }
                    }
                }
            }
        }
        a.into_iter().map(|row| row[n..].to_vec()).collect()
    })
}

/// Best rational approximation with bounded denominator, if it is close.
fn to_ratio(x: f64, max_den: i64) -> Option<(i64, i64)> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        let ai = a as i64;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a;
        if (x - h1 as f64 / k1 as f64).abs() <= 1e-9 * x.abs().max(1.0) || frac.abs() < 1e-15 {
            return Some((h1, k1));
        }
        y = 1.0 / frac;
    }
    if k1 != 0 && (x - h1 as f64 / k1 as f64).abs() <= 1e-9 * x.abs().max(1.0) {
        Some((h1, k1))
    } else {
        None
    }
}

fn pow(a: &Cyclo, k: u32) -> Cyclo {
    let mut out = Cyclo::one();
    for _ in 0..k {
        out = &out * a;
    }
    out
}

/// Some `r` with `r^k = a`, or `None` when no root lies in the field.
pub fn nth_root(a: &Cyclo, k: u32) -> Option<Cyclo> {
    if k == 0 {
        return None;
    }
    if a.is_zero() || k == 1 {
        return Some(a.clone());
    }
    let images: Vec<Complex64> = EMB[..4].iter().map(|&j| a.galois(j).to_complex()).collect();
    let principal: Vec<Complex64> = images.iter().map(|z| z.powf(1.0 / k as f64)).collect();
    let turn = |m: u32| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * m as f64 / k as f64);
    let vi = vinv();
    let a_den = a.denominator();
    let den = a_den.to_f64().filter(|d| d.is_finite());
    let combos = (k as usize).pow(4);
    for code in 0..combos {
        let mut s = [Complex64::zero(); DEGREE];
        let mut c = code;
        for r in 0..4 {
            let m = (c % k as usize) as u32;
            c /= k as usize;
            s[r] = principal[r] * turn(m);
            s[r + 4] = s[r].conj();
        }
        let vals: Vec<Complex64> = (0..DEGREE).map(|m| (0..DEGREE).map(|r| vi[m][r] * s[r]).sum()).collect();
        if vals.iter().any(|v| v.im.abs() > 1e-6 * v.re.abs().max(1.0)) {
            continue;
        }
        // den * r is an algebraic integer, so its coordinates are integers
        if let Some(r) = den.and_then(|d| integral_candidate(&vals, d, a_den)) {
            if &pow(&r, k) == a {
                return Some(r);
            }
        }
        let mut coeffs: [(BigInt, BigInt); DEGREE] = Default::default();
        let mut ok = true;
        for (slot, v) in coeffs.iter_mut().zip(&vals) {
            match to_ratio(v.re, 1 << 20) {
                Some((p, q)) => *slot = (BigInt::from(p), BigInt::from(q)),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let r = Cyclo::from_coeffs(&coeffs);
        if &pow(&r, k) == a {
            return Some(r);
        }
    }
    None
}

fn integral_candidate(vals: &[Complex64], den: f64, a_den: &BigInt) -> Option<Cyclo> {
    let mut coeffs: [(BigInt, BigInt); DEGREE] = Default::default();
    for (slot, v) in coeffs.iter_mut().zip(vals) {
        let x = v.re * den;
        if !x.is_finite() || x.abs() > 4e15 || (x - x.round()).abs() > 0.25 {
            return None;
        }
        *slot = (BigInt::from(x.round() as i64), a_den.clone());
    }
    Some(Cyclo::from_coeffs(&coeffs))
}

/// [`nth_root`] lifted to scalars; the approximate backend takes the
/// principal root.
pub fn scalar_root(s: &Scalar, k: u32) -> Option<Scalar> {
    match s {
        Scalar::Exact(c) => nth_root(c, k).map(Scalar::Exact),
        Scalar::Approx(a) => Some(Scalar::approx(a.value.powf(1.0 / k as f64), a.eps)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_roots() {
        let r = nth_root(&Cyclo::from_int(2), 2).unwrap();
        assert_eq!(&r * &r, Cyclo::from_int(2));
        let r = nth_root(&Cyclo::from_int(-3), 2).unwrap();
        assert_eq!(&r * &r, Cyclo::from_int(-3));
        assert!(nth_root(&Cyclo::from_int(5), 2).is_none());
        let r = nth_root(&Cyclo::i(), 2).unwrap();
        assert_eq!(&r * &r, Cyclo::i());
    }

    #[test]
    fn cube_roots() {
        let a = Cyclo::from_ratio(BigInt::from(125), BigInt::from(27));
        let r = nth_root(&a, 3).unwrap();
        assert_eq!(pow(&r, 3), a);
        // cube roots of omega are primitive ninth roots of unity
        assert!(nth_root(&Cyclo::omega(), 3).is_none());
        let r = nth_root(&Cyclo::zeta_pow(6), 3).unwrap();
        assert_eq!(pow(&r, 3), Cyclo::zeta_pow(6));
        assert!(nth_root(&Cyclo::from_int(2), 3).is_none());
        let x = &Cyclo::one() + &Cyclo::zeta_pow(3);
        assert_eq!(pow(&nth_root(&pow(&x, 3), 3).unwrap(), 3), pow(&x, 3));
    }

    #[test]
    fn roots_with_large_denominators() {
        let x = Cyclo::from_coeffs(&[
            (BigInt::from(3), BigInt::from(4097)),
            (BigInt::from(-2048), BigInt::from(241)),
            (0.into(), 1.into()),
            (5.into(), 17.into()),
            (0.into(), 1.into()),
            (0.into(), 1.into()),
            (1.into(), 3.into()),
            (0.into(), 1.into()),
        ]);
        for k in [2, 3] {
            let a = pow(&x, k);
            assert_eq!(pow(&nth_root(&a, k).unwrap(), k), a);
        }
    }
}
