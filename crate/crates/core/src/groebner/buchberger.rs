//! Buchberger's algorithm with the sugar selection strategy and the
//! Gebauer–Möller pair criteria.

use crate::arith::{Monomial, MonomialOrder, MultiPoly};
use crate::error::{Error, Result};
use crate::scalar::Field;
use std::cmp::Ordering;

/// Default number of pair reductions before giving up.
pub const DEFAULT_PAIR_BUDGET: usize = 100_000;

/// Environment variable overriding [`DEFAULT_PAIR_BUDGET`].
pub const PAIR_BUDGET_ENV: &str = "PLMI_PAIR_BUDGET";

pub fn pair_budget() -> usize {
    std::env::var(PAIR_BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_PAIR_BUDGET)
}

/// Terms sorted decreasingly under the working order, leading term first.
#[derive(Clone, Debug)]
struct Sorted<C> {
    terms: Vec<(Monomial, C)>,
    sugar: u32,
}

impl<C: Field> Sorted<C> {
    fn from_poly(p: &MultiPoly<C>, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, C)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let sugar = p.total_degree();
        Sorted { terms, sugar }
    }

    fn to_poly(&self, nvars: usize) -> MultiPoly<C> {
        MultiPoly::from_terms(nvars, self.terms.iter().cloned())
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn make_monic(&mut self) {
        let inv = self.terms[0].1.inv();
        for t in &mut self.terms {
            t.1 = t.1.mul_ref(&inv);
        }
    }
}

/// `a - c·x^t·b` for sorted term lists.
fn sub_mul<C: Field>(
    a: &[(Monomial, C)],
    c: &C,
    t: &Monomial,
    b: &[(Monomial, C)],
    order: &MonomialOrder,
) -> Vec<(Monomial, C)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|(m, v)| (m.mul(t), v.mul_ref(c))).peekable();
    while i < a.len() || bi.peek().is_some() {
        match bi.peek() {
            None => {
                out.extend_from_slice(&a[i..]);
                break;
            }
            Some((bm, _)) => {
                if i == a.len() {
                    let (bm, bv) = bi.next().unwrap();
                    out.push((bm, bv.neg_ref()));
                    continue;
                }
                match order.cmp(&a[i].0, bm) {
                    Ordering::Greater => {
                        out.push(a[i].clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        let (bm, bv) = bi.next().unwrap();
                        out.push((bm, bv.neg_ref()));
                    }
                    Ordering::Equal => {
                        let (_, bv) = bi.next().unwrap();
                        let v = a[i].1.sub_ref(&bv);
                        if !v.is_zero() {
                            out.push((a[i].0.clone(), v));
                        }
                        i += 1;
                    }
                }
            }
        }
    }
    out
}

/// Fully reduces `p` by the monic polynomials `reducers`.
fn reduce<C: Field>(mut p: Sorted<C>, reducers: &[&Sorted<C>], order: &MonomialOrder) -> Sorted<C> {
    let mut done: Vec<(Monomial, C)> = Vec::new();
    let mut rest = std::mem::take(&mut p.terms);
    let mut sugar = p.sugar;
    while !rest.is_empty() {
        let (m, c) = rest[0].clone();
        match reducers.iter().find(|g| g.lm().divides(&m)) {
            Some(g) => {
                let t = g.lm().quotient_of(&m);
                sugar = sugar.max(g.sugar + t.degree());
                rest = sub_mul(&rest[1..], &c, &t, &g.terms[1..], order);
            }
            None => {
                done.push((m, c));
                rest.remove(0);
            }
        }
    }
    Sorted { terms: done, sugar }
}

#[derive(Clone, Debug)]
pub(super) struct Pair {
    pub i: usize,
    pub j: usize,
    pub lcm: Monomial,
    pub sugar: u32,
}

/// Leading monomial and sugar degree, all the pair bookkeeping needs.
pub(super) trait Headed {
    fn head(&self) -> &Monomial;
    fn sugar_degree(&self) -> u32;
}

impl<C: Field> Headed for Sorted<C> {
    fn head(&self) -> &Monomial {
        self.lm()
    }
    fn sugar_degree(&self) -> u32 {
        self.sugar
    }
}

fn spoly<C: Field>(
    f: &Sorted<C>,
    g: &Sorted<C>,
    lcm: &Monomial,
    order: &MonomialOrder,
) -> Sorted<C> {
    let tf = f.lm().quotient_of(lcm);
    let tg = g.lm().quotient_of(lcm);
    let a: Vec<(Monomial, C)> = f.terms[1..]
        .iter()
        .map(|(m, c)| (m.mul(&tf), c.clone()))
        .collect();
    let terms = sub_mul(&a, &C::one(), &tg, &g.terms[1..], order);
    let sugar = (f.sugar + tf.degree()).max(g.sugar + tg.degree());
    Sorted { terms, sugar }
}

pub(super) struct State<P> {
    pub polys: Vec<P>,
    pub active: Vec<bool>,
    pub pairs: Vec<Pair>,
}

impl<P: Headed> State<P> {
    pub fn new() -> Self {
        State {
            polys: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
        }
    }

    fn make_pair(&self, i: usize, j: usize) -> Pair {
        let lcm = self.polys[i].head().lcm(self.polys[j].head());
        let si = self.polys[i].sugar_degree() + self.polys[i].head().quotient_of(&lcm).degree();
        let sj = self.polys[j].sugar_degree() + self.polys[j].head().quotient_of(&lcm).degree();
        Pair {
            i,
            j,
            lcm,
            sugar: si.max(sj),
        }
    }

    /// Appends `p` and installs its pairs.
    pub fn push(&mut self, p: P) {
        self.polys.push(p);
        self.active.push(true);
        self.update(self.polys.len() - 1);
    }

    pub fn active_polys(&self) -> Vec<&P> {
        (0..self.polys.len())
            .filter(|&k| self.active[k])
            .map(|k| &self.polys[k])
            .collect()
    }

    /// Gebauer–Möller installation of the new polynomial at index `h`.
    fn update(&mut self, h: usize) {
        let lm_h = self.polys[h].head().clone();
        let mut c: Vec<Pair> = (0..h)
            .filter(|&g| self.active[g])
            .map(|g| self.make_pair(g, h))
            .collect();
        let mut d: Vec<Pair> = Vec::new();
        while let Some(p) = (!c.is_empty()).then(|| c.remove(0)) {
            let coprime = lm_h.coprime(self.polys[p.i].head());
            let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                d.push(p);
            }
        }
        let e: Vec<Pair> = d
            .into_iter()
            .filter(|p| !lm_h.coprime(self.polys[p.i].head()))
            .collect();
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && polys[p.i].head().lcm(&lm_h) != p.lcm
                && polys[p.j].head().lcm(&lm_h) != p.lcm)
        });
        self.pairs.extend(e);
        for g in 0..h {
            if self.active[g] && lm_h.divides(self.polys[g].head()) {
                self.active[g] = false;
            }
        }
    }

    pub fn select(&mut self, order: &MonomialOrder) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let key = a
                .sugar
                .cmp(&b.sugar)
                .then_with(|| order.cmp(&a.lcm, &b.lcm))
                .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)));
            if key == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`,
/// with monic elements sorted by increasing leading monomial.
pub fn groebner<C: Field>(
    gens: &[MultiPoly<C>],
    order: &MonomialOrder,
    budget: usize,
) -> Result<Vec<MultiPoly<C>>> {
    groebner_traced(gens, order, budget).map(|(g, _)| g)
}

/// [`groebner`], also returning every leading coefficient that was divided
/// by along the way.
pub fn groebner_traced<C: Field>(
    gens: &[MultiPoly<C>],
    order: &MonomialOrder,
    budget: usize,
) -> Result<(Vec<MultiPoly<C>>, Vec<C>)> {
    let nvars = gens.first().map_or(0, |g| g.nvars());
    let mut st: State<Sorted<C>> = State::new();
    let mut pivots: Vec<C> = Vec::new();
    let one = |pivots: &mut Vec<C>, h: &Sorted<C>| {
        pivots.push(h.terms[0].1.clone());
        (vec![MultiPoly::one(nvars)], std::mem::take(pivots))
    };
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let reducers = st.active_polys();
        let mut h = reduce(Sorted::from_poly(g, order), &reducers, order);
        if h.terms.is_empty() {
            continue;
        }
        if h.lm().is_one() {
            return Ok(one(&mut pivots, &h));
        }
        pivots.push(h.terms[0].1.clone());
        h.make_monic();
        st.push(h);
    }
    let mut count = 0usize;
    while let Some(p) = st.select(order) {
        count += 1;
        if count > budget {
            return Err(Error::ResourceLimit { budget });
        }
        let s = spoly(&st.polys[p.i], &st.polys[p.j], &p.lcm, order);
        let reducers = st.active_polys();
        let mut h = reduce(s, &reducers, order);
        if h.terms.is_empty() {
            continue;
        }
        if h.lm().is_one() {
            return Ok(one(&mut pivots, &h));
        }
        pivots.push(h.terms[0].1.clone());
        h.make_monic();
        st.push(h);
    }
    let basis: Vec<Sorted<C>> = (0..st.polys.len())
        .filter(|&k| st.active[k])
        .map(|k| st.polys[k].clone())
        .collect();
    let mut reduced = Vec::with_capacity(basis.len());
    for (k, g) in basis.iter().enumerate() {
        let others: Vec<&Sorted<C>> = basis
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != k)
            .map(|(_, p)| p)
            .collect();
        let head = g.terms[0].clone();
        let tail = Sorted {
            terms: g.terms[1..].to_vec(),
            sugar: g.sugar,
        };
        let mut r = reduce(tail, &others, order);
        r.terms.insert(0, head);
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    Ok((reduced.iter().map(|s| s.to_poly(nvars)).collect(), pivots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, VarSet};
    use crate::Poly;

    fn polys(src: &[&str], vars: &VarSet) -> Vec<Poly> {
        src.iter().map(|s| parse_poly(s, vars).unwrap()).collect()
    }

    #[test]
    fn grevlex_example() {
        let v = VarSet::params_primal(0, 2);
        let g = groebner(
            &polys(&["x1 + x2", "x1*x2 - 1"], &v),
            &MonomialOrder::grevlex_all(2),
            1000,
        )
        .unwrap();
        assert_eq!(g, polys(&["x1 + x2", "x2^2 + 1"], &v));
    }

    #[test]
    fn inconsistent() {
        let v = VarSet::params_primal(0, 1);
        let g = groebner(
            &polys(&["x1 - 1", "x1 - 2"], &v),
            &MonomialOrder::grevlex_all(1),
            1000,
        )
        .unwrap();
        assert_eq!(g, vec![Poly::one(1)]);
    }

    #[test]
    fn budget_is_enforced() {
        let v = VarSet::params_primal(0, 3);
        let gens = polys(
            &["x1^2 + x2*x3 - 1", "x2^2 + x1*x3 - 2", "x3^2 + x1*x2 - 3"],
            &v,
        );
        assert!(groebner(&gens, &MonomialOrder::Lex(vec![0, 1, 2]), 10_000).is_ok());
        assert_eq!(
            groebner(&gens, &MonomialOrder::Lex(vec![0, 1, 2]), 2),
            Err(Error::ResourceLimit { budget: 2 })
        );
    }

    #[test]
    fn cyclic3() {
        let v = VarSet::params_primal(0, 3);
        let gens = polys(
            &["x1 + x2 + x3", "x1*x2 + x2*x3 + x3*x1", "x1*x2*x3 - 1"],
            &v,
        );
        let g = groebner(&gens, &MonomialOrder::Lex(vec![0, 1, 2]), 10_000).unwrap();
        let expected = polys(&["x3^3 - 1", "x2^2 + x2*x3 + x3^2", "x1 + x2 + x3"], &v);
        assert_eq!(g, expected);
    }
}
