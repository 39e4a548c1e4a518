#![allow(dead_code)]

use holant::scalar::Scalar;
use holant::signature::Signature;
use holant::transforms::Mat2;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type R = ChaCha8Rng;

pub fn rng(seed: u64) -> R {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small nonzero exact scalars, including irrational cyclotomic ones.
pub fn pool() -> Vec<Scalar> {
    vec![
        Scalar::int(1),
        Scalar::int(-1),
        Scalar::int(2),
        Scalar::int(-3),
        Scalar::i(),
        -Scalar::i(),
        &Scalar::one() + &Scalar::i(),
        &Scalar::int(2) - &Scalar::i(),
        Scalar::zeta(1),
        Scalar::zeta(5),
        Scalar::sqrt2(),
        Scalar::ratio(1, 2),
    ]
}

/// `a + b i` with `a, b` in `{-1, 0, 1}`, zero first.
pub fn gauss9() -> Vec<Scalar> {
    let mut out = Vec::new();
    for a in [0i64, 1, -1] {
        for b in [0i64, 1, -1] {
            out.push(&Scalar::int(a) + &(&Scalar::int(b) * &Scalar::i()));
        }
    }
    out
}

pub fn nonzero(r: &mut R) -> Scalar {
    pool().choose(r).unwrap().clone()
}

pub fn scalar(r: &mut R, zero_prob: f64) -> Scalar {
    if r.gen_bool(zero_prob) {
        Scalar::zero()
    } else {
        nonzero(r)
    }
}

pub fn sig(r: &mut R, n: usize, zero_prob: f64) -> Signature {
    Signature::from_table((0..1usize << n).map(|_| scalar(r, zero_prob)).collect()).unwrap()
}

pub fn nonzero_sig(r: &mut R, n: usize, zero_prob: f64) -> Signature {
    loop {
        let f = sig(r, n, zero_prob);
        if !f.is_trivial() {
            return f;
        }
    }
}

/// Random signature supported only where `keep` holds.
pub fn sig_on(r: &mut R, n: usize, keep: impl Fn(usize) -> bool) -> Signature {
    loop {
        let f = Signature::from_table((0..1usize << n).map(|a| if keep(a) { scalar(r, 0.3) } else { Scalar::zero() }).collect()).unwrap();
        if !f.is_trivial() {
            return f;
        }
    }
}

pub fn invertible(r: &mut R) -> Mat2 {
    loop {
        let m = Mat2::new(scalar(r, 0.2), scalar(r, 0.2), scalar(r, 0.2), scalar(r, 0.2));
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn permutation(r: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(r);
    p
}
