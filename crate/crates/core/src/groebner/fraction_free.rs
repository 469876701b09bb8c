//! Buchberger's algorithm over `Q[y][x]` without fractions: a reduction step
//! replaces `f` by `(l/u)·f − (c/u)·x^t·g` with `l = lc(g)`, `c` the reduced
//! coefficient and `u = gcd(l, c)`, and each new element is made primitive
//! over `Q[y]`. The basis is the reduced basis over `Q(y)` up to scaling.

use super::buchberger::{Headed, State};
use crate::arith::{div_exact, gcd, Monomial, MonomialOrder};
use crate::error::{Error, Result};
use crate::{Poly, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

type Terms = Vec<(Monomial, Poly)>;

/// Terms in decreasing order, leading term first, coefficients in `Q[y]`.
#[derive(Clone, Debug)]
pub struct FfPoly {
    pub terms: Terms,
    sugar: u32,
}

impl Headed for FfPoly {
    fn head(&self) -> &Monomial {
        &self.terms[0].0
    }
    fn sugar_degree(&self) -> u32 {
        self.sugar
    }
}

impl FfPoly {
    pub fn new(mut terms: Terms, order: &MonomialOrder) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let sugar = terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        FfPoly { terms, sugar }
    }

    fn lc(&self) -> &Poly {
        &self.terms[0].1
    }
}

fn is_one(p: &Poly) -> bool {
    p.is_constant() && p.constant_term().is_one()
}

fn scale(terms: &mut [(Monomial, Poly)], a: &Poly) {
    if is_one(a) {
        return;
    }
    for (_, c) in terms.iter_mut() {
        *c = &*c * a;
    }
}

/// `a·f − b·x^t·g` on sorted term lists.
fn lin(
    a: &Poly,
    f: &[(Monomial, Poly)],
    b: &Poly,
    t: &Monomial,
    g: &[(Monomial, Poly)],
    order: &MonomialOrder,
) -> Terms {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let scaled = |c: &Poly| if is_one(a) { c.clone() } else { c * a };
    while i < f.len() || j < g.len() {
        let gm = g.get(j).map(|(m, _)| m.mul(t));
        let ord = match (&gm, f.get(i)) {
            (None, _) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(gm), Some((fm, _))) => order.cmp(fm, gm),
        };
        match ord {
            Ordering::Greater => {
                out.push((f[i].0.clone(), scaled(&f[i].1)));
                i += 1;
            }
            Ordering::Less => {
                out.push((gm.unwrap(), -&(b * &g[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = &scaled(&f[i].1) - &(b * &g[j].1);
                if !v.is_zero() {
                    out.push((f[i].0.clone(), v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Multipliers `(l/u, c/u)`; a constant `l` is inverted instead.
fn multipliers(l: &Poly, c: &Poly) -> (Poly, Poly) {
    if l.is_constant() {
        let inv = Rational::one() / l.constant_term();
        return (Poly::one(l.nvars()), c.scale(&inv));
    }
    let u = gcd(l, c);
    if u.is_constant() {
        (l.clone(), c.clone())
    } else {
        (
            div_exact(l, &u).expect("gcd divides"),
            div_exact(c, &u).expect("gcd divides"),
        )
    }
}

/// Divides out the `Q[y]` content and scales to integer coefficients with
/// trivial integer content. Returns the removed non-constant content.
fn make_primitive(p: &mut FfPoly) -> Option<Poly> {
    let mut content = Poly::zero(p.lc().nvars());
    for (_, c) in &p.terms {
        content = gcd(&content, c);
        if content.is_constant() {
            break;
        }
    }
    let removed = (!content.is_constant()).then(|| content.clone());
    if let Some(cn) = &removed {
        for (_, c) in p.terms.iter_mut() {
            *c = div_exact(c, cn).expect("content divides");
        }
    }
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for (_, c) in &p.terms {
        for (_, v) in c.terms() {
            den = den.lcm(v.denom());
            num = num.gcd(v.numer());
        }
    }
    let mut s = Rational::new(den, num);
    if p.lc()
        .terms()
        .next_back()
        .is_some_and(|(_, v)| v.is_negative())
    {
        s = -s;
    }
    if !s.is_one() {
        for (_, c) in p.terms.iter_mut() {
            *c = c.scale(&s);
        }
    }
    removed
}

/// Reduces every term of `p` after the first `keep` by `reducers`.
fn reduce(p: FfPoly, reducers: &[&FfPoly], order: &MonomialOrder, keep: usize) -> FfPoly {
    let mut sugar = p.sugar;
    let mut terms = p.terms;
    let mut done: Terms = terms.drain(..keep.min(terms.len())).collect();
    let mut rest = terms;
    while !rest.is_empty() {
        let m = rest[0].0.clone();
        match reducers.iter().find(|g| g.head().divides(&m)) {
            Some(g) => {
                let t = g.head().quotient_of(&m);
                sugar = sugar.max(g.sugar + t.degree());
                let (a, b) = multipliers(g.lc(), &rest[0].1);
                rest = lin(&a, &rest[1..], &b, &t, &g.terms[1..], order);
                scale(&mut done, &a);
            }
            None => done.push(rest.remove(0)),
        }
    }
    FfPoly { terms: done, sugar }
}

fn spoly(f: &FfPoly, g: &FfPoly, lcm: &Monomial, order: &MonomialOrder) -> FfPoly {
    let tf = f.head().quotient_of(lcm);
    let tg = g.head().quotient_of(lcm);
    let (a, b) = multipliers(g.lc(), f.lc());
    let ft: Terms = f.terms[1..]
        .iter()
        .map(|(m, c)| (m.mul(&tf), c.clone()))
        .collect();
    let terms = lin(&a, &ft, &b, &tg, &g.terms[1..], order);
    let sugar = (f.sugar + tf.degree()).max(g.sugar + tg.degree());
    FfPoly { terms, sugar }
}

/// Reduced basis over `Q(y)` with primitive elements in `Q[y][x]`, sorted by
/// increasing leading monomial, and the leading coefficients and contents
/// met along the way.
pub fn groebner_ff(
    gens: Vec<FfPoly>,
    order: &MonomialOrder,
    budget: usize,
) -> Result<(Vec<FfPoly>, Vec<Poly>)> {
    let mut st: State<FfPoly> = State::new();
    let mut pivots: Vec<Poly> = Vec::new();
    let install = |st: &mut State<FfPoly>, mut h: FfPoly, pivots: &mut Vec<Poly>| -> bool {
        if h.terms.is_empty() {
            return false;
        }
        pivots.extend(make_primitive(&mut h));
        pivots.push(h.lc().clone());
        if h.head().is_one() {
            h.terms = vec![(h.head().clone(), Poly::one(h.lc().nvars()))];
            st.polys = vec![h];
            st.active = vec![true];
            return true;
        }
        st.push(h);
        false
    };
    for g in gens {
        if g.terms.is_empty() {
            continue;
        }
        let h = reduce(g, &st.active_polys(), order, 0);
        if install(&mut st, h, &mut pivots) {
            return Ok((st.polys, pivots));
        }
    }
    let mut count = 0usize;
    while let Some(p) = st.select(order) {
        count += 1;
        if count > budget {
            return Err(Error::ResourceLimit { budget });
        }
        let s = spoly(&st.polys[p.i], &st.polys[p.j], &p.lcm, order);
        let h = reduce(s, &st.active_polys(), order, 0);
        if install(&mut st, h, &mut pivots) {
            return Ok((st.polys, pivots));
        }
    }
    let basis: Vec<FfPoly> = st.active_polys().into_iter().cloned().collect();
    let mut reduced = Vec::with_capacity(basis.len());
    for (k, g) in basis.iter().enumerate() {
        let others: Vec<&FfPoly> = basis
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != k)
            .map(|(_, p)| p)
            .collect();
        let mut r = reduce(g.clone(), &others, order, 1);
        pivots.extend(make_primitive(&mut r));
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(a.head(), b.head()));
    Ok((reduced, pivots))
}
