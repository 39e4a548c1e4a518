//! Exact arithmetic in the 24th cyclotomic field.
//!
//! An element is stored as `(c_0 + c_1 z + ... + c_7 z^7) / den` with integer
//! numerators, where `z` is a primitive 24th root of unity and the basis is
//! reduced modulo `z^8 - z^4 + 1`. The representation is kept canonical
//! (positive denominator, coprime with the numerator content) so structural
//! equality is field equality.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

pub const DEGREE: usize = 8;
pub const ORDER: i64 = 24;

/// Galois automorphisms other than the identity, by exponent.
const UNITS: [usize; 7] = [5, 7, 11, 13, 17, 19, 23];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    num: [BigInt; DEGREE],
    den: BigInt,
}

// z^j for j < 8, with the axis-aligned ones exact
fn unit(j: usize) -> Complex64 {
    let (c15, s15) = (0.965_925_826_289_068_3, 0.258_819_045_102_520_76);
    let h2 = std::f64::consts::FRAC_1_SQRT_2;
    let h3 = 0.866_025_403_784_438_6;
    let re = [1.0, c15, h3, h2, 0.5, s15, 0.0, -s15];
    let im = [0.0, s15, 0.5, h2, h3, c15, 1.0, c15];
    Complex64::new(re[j], im[j])
}

// reduce a coefficient vector of any length modulo z^8 - z^4 + 1
fn reduce(mut c: Vec<BigInt>) -> [BigInt; DEGREE] {
    for k in (DEGREE..c.len()).rev() {
        if c[k].is_zero() {
            continue;
        }
        let v = std::mem::take(&mut c[k]);
        c[k - 4] += &v;
        c[k - 8] -= v;
    }
    c.resize(DEGREE, BigInt::zero());
    let mut out: [BigInt; DEGREE] = Default::default();
    for (o, v) in out.iter_mut().zip(c) {
        *o = v;
    }
    out
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo {
            num: Default::default(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        let mut num: [BigInt; DEGREE] = Default::default();
        num[0] = BigInt::from(n);
        Cyclo { num, den: BigInt::one() }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        let mut num: [BigInt; DEGREE] = Default::default();
        num[0] = n;
        Cyclo { num, den: BigInt::one() }
    }

    /// `p / q`; panics if `q == 0`.
    pub fn from_ratio(p: BigInt, q: BigInt) -> Self {
        assert!(!q.is_zero(), "zero denominator");
        let mut num: [BigInt; DEGREE] = Default::default();
        num[0] = p;
        Self::normalized(num, q)
    }

    /// Build from rational coefficients given as (numerator, denominator) pairs.
    pub fn from_coeffs(coeffs: &[(BigInt, BigInt); DEGREE]) -> Self {
        let mut out = Cyclo::zero();
        for (j, (p, q)) in coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let term = Cyclo::from_ratio(p.clone(), q.clone()).mul_zeta_pow(j as i64);
            out = &out + &term;
        }
        out
    }

    /// `z^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        Cyclo::one().mul_zeta_pow(k)
    }

    pub fn i() -> Self {
        Self::zeta_pow(6)
    }

    pub fn sqrt2() -> Self {
        &Self::zeta_pow(3) + &Self::zeta_pow(-3)
    }

    pub fn sqrt3() -> Self {
        &Self::zeta_pow(2) + &Self::zeta_pow(-2)
    }

    pub fn omega() -> Self {
        Self::zeta_pow(8)
    }

    fn normalized(mut num: [BigInt; DEGREE], mut den: BigInt) -> Self {
        if num.iter().all(|c| c.is_zero()) {
            return Cyclo::zero();
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in num.iter() {
                if g.is_one() {
                    break;
                }
                if !c.is_zero() {
                    g = g.gcd(c);
                }
            }
            if !g.is_one() {
                den /= &g;
                for c in num.iter_mut() {
                    *c /= &g;
                }
            }
        }
        Cyclo { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// True when the element is a rational number.
    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn numerators(&self) -> &[BigInt; DEGREE] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Rational coefficient `j` as a reduced (numerator, denominator) pair.
    pub fn coeff(&self, j: usize) -> (BigInt, BigInt) {
        let g = self.num[j].gcd(&self.den);
        if g.is_zero() {
            return (BigInt::zero(), BigInt::one());
        }
        (&self.num[j] / &g, &self.den / &g)
    }

    /// Multiply by `z^k`; only additions, no big multiplications.
    pub fn mul_zeta_pow(&self, k: i64) -> Self {
        let k = k.rem_euclid(ORDER) as usize;
        if k == 0 {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); DEGREE + k];
        for (j, v) in self.num.iter().enumerate() {
            c[j + k] = v.clone();
        }
        // z^12 = -1 keeps the buffer short
        let mut buf = vec![BigInt::zero(); DEGREE + 12];
        for (j, v) in c.into_iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            if j >= 12 {
                buf[j - 12] -= v;
            } else {
                buf[j] += v;
            }
        }
        Cyclo {
            num: reduce(buf),
            den: self.den.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        let mut num = self.num.clone();
        for c in num.iter_mut() {
            *c = -std::mem::take(c);
        }
        Cyclo { num, den: self.den.clone() }
    }

    /// Apply the automorphism `z -> z^k` (k coprime to 24).
    pub fn galois(&self, k: usize) -> Self {
        let mut buf = vec![BigInt::zero(); ORDER as usize];
        for (j, v) in self.num.iter().enumerate() {
            if !v.is_zero() {
                buf[(j * k) % ORDER as usize] += v;
            }
        }
        let mut folded = vec![BigInt::zero(); 12];
        for (j, v) in buf.into_iter().enumerate() {
            if j >= 12 {
                folded[j - 12] -= v;
            } else {
                folded[j] += v;
            }
        }
        Cyclo::normalized(reduce(folded), self.den.clone())
    }

    /// Complex conjugation, `z -> z^-1`.
    pub fn conj(&self) -> Self {
        self.galois(23)
    }

    /// Field norm down to the rationals.
    pub fn norm(&self) -> Cyclo {
        let mut p = self.clone();
        for &k in UNITS.iter() {
            p = &p * &self.galois(k);
        }
        p
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            let mut num: [BigInt; DEGREE] = Default::default();
            num[0] = self.den.clone();
            return Some(Cyclo::normalized(num, self.num[0].clone()));
        }
        let mut conj_prod = Cyclo::one();
        for &k in UNITS.iter() {
            conj_prod = &conj_prod * &self.galois(k);
        }
        let n = self * &conj_prod;
        debug_assert!(n.is_rational());
        // divide by the rational n = n.num[0] / n.den
        let mut num = conj_prod.num.clone();
        for c in num.iter_mut() {
            *c *= &n.den;
        }
        Some(Cyclo::normalized(num, &conj_prod.den * &n.num[0]))
    }

    pub fn to_complex(&self) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc += unit(j) * (c.to_f64().unwrap_or(f64::INFINITY) / den);
        }
        acc
    }

    /// Largest absolute numerator/denominator bit length, a size measure.
    pub fn bits(&self) -> u64 {
        self.num.iter().map(|c| c.bits()).max().unwrap_or(0).max(self.den.bits())
    }
}

impl<'a> std::ops::Add<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            let mut num = self.num.clone();
            for (a, b) in num.iter_mut().zip(rhs.num.iter()) {
                *a += b;
            }
            return Cyclo::normalized(num, self.den.clone());
        }
        let mut num: [BigInt; DEGREE] = Default::default();
        for j in 0..DEGREE {
            num[j] = &self.num[j] * &rhs.den + &rhs.num[j] * &self.den;
        }
        Cyclo::normalized(num, &self.den * &rhs.den)
    }
}

impl<'a> std::ops::Sub<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        self + &rhs.neg()
    }
}

impl<'a> std::ops::Mul<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        if self.is_zero() || rhs.is_zero() {
            return Cyclo::zero();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return rhs.clone();
        }
        let mut c = vec![BigInt::zero(); 2 * DEGREE - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Cyclo::normalized(reduce(c), &self.den * &rhs.den)
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::literal::format_cyclo(self))
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::literal::format_cyclo(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&Cyclo::i() * &Cyclo::i(), Cyclo::from_int(-1));
    }

    #[test]
    fn sqrt2_squared_is_two() {
        assert_eq!(&Cyclo::sqrt2() * &Cyclo::sqrt2(), Cyclo::from_int(2));
        assert_eq!(&Cyclo::sqrt3() * &Cyclo::sqrt3(), Cyclo::from_int(3));
    }

    #[test]
    fn inverse_of_one_plus_i() {
        let a = &Cyclo::one() + &Cyclo::i();
        let want = Cyclo::from_coeffs(&{
            let mut c: [(BigInt, BigInt); DEGREE] = Default::default();
            for x in c.iter_mut() {
                *x = (BigInt::zero(), BigInt::one());
            }
            c[0] = (BigInt::from(1), BigInt::from(2));
            c[6] = (BigInt::from(-1), BigInt::from(2));
            c
        });
        assert_eq!(a.inv().unwrap(), want);
        assert!((&a * &want).is_one());
    }

    #[test]
    fn zeta_has_order_24() {
        assert!(Cyclo::zeta_pow(24).is_one());
        assert_eq!(Cyclo::zeta_pow(12), Cyclo::from_int(-1));
        assert!(!Cyclo::zeta_pow(8).is_one());
        let w = Cyclo::omega();
        assert!((&(&w * &w) * &w).is_one());
        assert_eq!(&Cyclo::zeta_pow(5) * &Cyclo::zeta_pow(-5), Cyclo::one());
    }

    #[test]
    fn conj_matches_complex() {
        for k in 0..24 {
            let z = Cyclo::zeta_pow(k);
            let a = z.conj().to_complex();
            let b = z.to_complex().conj();
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn inverses_of_mixed_elements() {
        let a = &(&Cyclo::from_int(3) + &Cyclo::zeta_pow(1)) + &Cyclo::zeta_pow(7).mul_zeta_pow(2);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert!(Cyclo::zero().inv().is_none());
    }
}
