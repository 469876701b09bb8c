//! Univariate gcd over Q on dense coefficient vectors (constant term first):
//! a modular degree bound, then a primitive pseudo-remainder sequence over Z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut v);
    let mut c = content(&v);
    if v.last().is_some_and(Signed::is_negative) {
        c = -c;
    }
    if !c.is_zero() && !c.is_one() {
        for x in &mut v {
            *x = &*x / &c;
        }
    }
    v
}

fn integer_primitive(a: &[BigRational]) -> Vec<BigInt> {
    let den = a.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    primitive(a.iter().map(|c| c.numer() * (&den / c.denom())).collect())
}

fn image(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = a
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r, mut e, mut b) = (1u64, p - 2, a % p);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn degree_mod_p(mut f: Vec<u64>, mut g: Vec<u64>, p: u64) -> usize {
    while !g.is_empty() {
        let inv = inv_mod(*g.last().unwrap(), p);
        while f.len() >= g.len() {
            let q = f.last().unwrap() * inv % p;
            let shift = f.len() - g.len();
            for (k, gk) in g.iter().enumerate() {
                f[shift + k] = (f[shift + k] + p - q * gk % p) % p;
            }
            while f.last() == Some(&0) {
                f.pop();
            }
        }
        std::mem::swap(&mut f, &mut g);
    }
    f.len().saturating_sub(1)
}

fn prem(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let c = g.last().unwrap();
    let mut r = f.to_vec();
    while r.len() >= g.len() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - g.len();
        for x in r.iter_mut() {
            *x *= c;
        }
        for (k, gk) in g.iter().enumerate() {
            r[shift + k] -= &lr * gk;
        }
        trim(&mut r);
    }
    primitive(r)
}

/// Monic gcd of two nonzero polynomials.
pub fn rational_univariate_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (fa, fb) = (integer_primitive(a), integer_primitive(b));
    let bound = PRIMES
        .iter()
        .filter_map(|&p| {
            let (ia, ib) = (image(&fa, p), image(&fb, p));
            (ia.len() == fa.len() && ib.len() == fb.len()).then(|| degree_mod_p(ia, ib, p))
        })
        .min();
    let g = if bound == Some(0) {
        vec![BigInt::one()]
    } else {
        let (mut f, mut g) = if fa.len() >= fb.len() {
            (fa, fb)
        } else {
            (fb, fa)
        };
        loop {
            if g.len() == 1 {
                break vec![BigInt::one()];
            }
            let r = prem(&f, &g);
            if r.is_empty() {
                break g;
            }
            f = std::mem::replace(&mut g, r);
        }
    };
    let lc = BigRational::from_integer(g.last().unwrap().clone());
    g.into_iter()
        .map(|c| BigRational::from_integer(c) / &lc)
        .collect()
}
