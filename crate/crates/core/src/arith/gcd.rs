//! Multivariate gcd by content / primitive-part recursion and pseudo-remainder
//! sequences, plus exact division and squarefree parts.

use super::monomial::{Monomial, MonomialOrder};
use super::poly::MultiPoly;
use crate::scalar::Field;
use crate::Poly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `a / b` when `b` divides `a` exactly, otherwise `None`.
pub fn div_exact<C: Field>(a: &MultiPoly<C>, b: &MultiPoly<C>) -> Option<MultiPoly<C>> {
    assert!(!b.is_zero(), "division by the zero polynomial");
    let n = a.nvars();
    let (lm_b, lc_b) = {
        let (m, c) = b.lex_leading().unwrap();
        (m.clone(), c.clone())
    };
    if b.len() == 1 {
        let inv = lc_b.inv();
        let mut q = MultiPoly::zero(n);
        for (m, c) in a.terms() {
            if !lm_b.divides(m) {
                return None;
            }
            q.add_term(lm_b.quotient_of(m), c.mul_ref(&inv));
        }
        return Some(q);
    }
    let mut r = a.clone();
    let mut q = MultiPoly::zero(n);
    while let Some((lm_r, lc_r)) = r.lex_leading() {
        if !lm_b.divides(lm_r) {
            return None;
        }
        let t = lm_b.quotient_of(lm_r);
        let c = lc_r.div_ref(&lc_b);
        r = &r - &b.mul_monomial(&t, &c);
        q.add_term(t, c);
    }
    Some(q)
}

fn lc_in_var<C: Field>(p: &MultiPoly<C>, v: usize) -> (u32, MultiPoly<C>) {
    let d = p.degree_in(v);
    let mut lc = MultiPoly::zero(p.nvars());
    for (m, c) in p.terms() {
        if m.0[v] == d {
            let mut m2 = m.clone();
            m2.0[v] = 0;
            lc.add_term(m2, c.clone());
        }
    }
    (d, lc)
}

/// A nonzero scalar multiple of the pseudo-remainder of `f` by `g` in variable `v`.
fn prem<C: Field>(f: &MultiPoly<C>, g: &MultiPoly<C>, v: usize) -> MultiPoly<C> {
    let (dg, lcg) = lc_in_var(g, v);
    let n = f.nvars();
    let mut r = f.clone();
    while !r.is_zero() {
        let (dr, lcr) = lc_in_var(&r, v);
        if dr < dg {
            break;
        }
        let shift = Monomial::var(n, v, dr - dg);
        let sub = &(&lcr * g).mul_monomial(&shift, &C::one());
        r = &(&lcg * &r) - sub;
        if lcg.is_constant() {
            r = r.make_monic_lex();
        }
    }
    r
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in<C: Field>(p: &MultiPoly<C>, v: usize) -> MultiPoly<C> {
    let mut g = MultiPoly::zero(p.nvars());
    for c in p.univariate_coeffs(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return MultiPoly::one(p.nvars());
        }
    }
    g
}

fn primitive_in<C: Field>(p: &MultiPoly<C>, v: usize) -> MultiPoly<C> {
    let c = content_in(p, v);
    if c.is_constant() {
        return p.clone();
    }
    div_exact(p, &c).expect("content divides")
}

fn dense<C: Field>(p: &MultiPoly<C>, v: usize) -> Vec<C> {
    let mut out = vec![C::zero(); p.degree_in(v) as usize + 1];
    for (m, c) in p.terms() {
        out[m.0[v] as usize] = c.clone();
    }
    out
}

/// True only when `gcd(a, b)` is constant. For each shared variable `v` the
/// other variables are fixed at a point where `lc_v(a)` does not vanish; a
/// constant univariate gcd there bounds `deg_v` of the true gcd by 0.
fn certainly_coprime<C: Field>(a: &MultiPoly<C>, b: &MultiPoly<C>) -> bool {
    let ua = a.used_vars();
    let ub = b.used_vars();
    let mut all = ua.clone();
    all.extend(ub.iter().copied().filter(|v| !ua.contains(v)));
    if all.len() < 2 {
        return false;
    }
    let shared: Vec<usize> = ua.iter().copied().filter(|v| ub.contains(v)).collect();
    for &v in &shared {
        let (_, lc) = lc_in_var(a, v);
        let point = (0..4i64).find_map(|k| {
            let asg: Vec<(usize, C)> = all
                .iter()
                .filter(|&&w| w != v)
                .enumerate()
                .map(|(j, &w)| {
                    (
                        w,
                        C::from_i64(3 + 5 * k + 7 * j as i64 + (k * j as i64) % 4),
                    )
                })
                .collect();
            (!lc.specialize(&asg).constant_term().is_zero()).then_some(asg)
        });
        let Some(asg) = point else { return false };
        if !gcd(&a.specialize(&asg), &b.specialize(&asg)).is_constant() {
            return false;
        }
    }
    true
}

/// Greatest common divisor, normalized so its lex-leading coefficient is 1.
/// `gcd(0, 0) = 0`.
pub fn gcd<C: Field>(a: &MultiPoly<C>, b: &MultiPoly<C>) -> MultiPoly<C> {
    if a.is_zero() {
        return b.make_monic_lex();
    }
    if b.is_zero() {
        return a.make_monic_lex();
    }
    let n = a.nvars();
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(n);
    }
    if a == b {
        return a.make_monic_lex();
    }
    if certainly_coprime(a, b) {
        return MultiPoly::one(n);
    }
    let ua = a.used_vars();
    let ub = b.used_vars();
    let v = match ua.iter().rev().find(|i| ub.contains(i)) {
        Some(&v) => v,
        None => {
            // No shared variable: the gcd lives in the contents.
            let v = *ua.last().unwrap();
            return gcd(&content_in(a, v), b);
        }
    };
    if ua.len() == 1 && ub.len() == 1 {
        if let Some(g) = C::univariate_gcd(&dense(a, v), &dense(b, v)) {
            return MultiPoly::from_terms(
                n,
                g.into_iter()
                    .enumerate()
                    .map(|(k, c)| (Monomial::var(n, v, k as u32), c)),
            );
        }
    }
    if a.degree_in(v) == 0 {
        return gcd(a, &content_in(b, v));
    }
    if b.degree_in(v) == 0 {
        return gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let gc = gcd(&ca, &cb);
    let pa = if ca.is_constant() {
        a.clone()
    } else {
        div_exact(a, &ca).unwrap()
    };
    let pb = if cb.is_constant() {
        b.clone()
    } else {
        div_exact(b, &cb).unwrap()
    };
    let (mut f, mut g) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    g = g.make_monic_lex();
    loop {
        let r = prem(&f, &g, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            g = MultiPoly::one(n);
            break;
        }
        f = g;
        g = primitive_in(&r, v).make_monic_lex();
    }
    let g = primitive_in(&g, v);
    (&g * &gc).make_monic_lex()
}

/// Product of the distinct irreducible factors of `p`, up to a constant.
pub fn squarefree_part<C: Field>(p: &MultiPoly<C>) -> MultiPoly<C> {
    if p.is_constant() {
        return p.make_monic_lex();
    }
    let mut g = p.clone();
    for v in p.used_vars() {
        g = gcd(&g, &p.derivative(v));
        if g.is_constant() {
            return p.make_monic_lex();
        }
    }
    div_exact(p, &g).unwrap().make_monic_lex()
}

/// Scales `p` to a primitive integer polynomial whose leading coefficient
/// under `order` is positive.
pub fn primitive_integer(p: &Poly, order: &MonomialOrder) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for (_, c) in p.terms() {
        den = den.lcm(c.denom());
        num = num.gcd(c.numer());
    }
    let mut s = BigRational::new(den, num);
    let (_, lc) = p.leading(order).unwrap();
    if lc.is_negative() {
        s = -s;
    }
    p.scale(&s)
}
