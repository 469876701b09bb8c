use super::monomial::{Monomial, MonomialOrder};
use crate::scalar::{Coeff, Field};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse multivariate polynomial with coefficients in `C`.
///
/// Terms are kept in a map keyed by exponent vectors, which iterates in
/// lexicographic order with the first variable most significant. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn from_int(nvars: usize, v: i64) -> Self {
        Self::constant(nvars, C::from_i64(v))
    }

    /// The variable at position `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, Monomial::var(nvars, i, 1), C::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: C) -> Self {
        debug_assert_eq!(m.nvars(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(nvars: usize, it: I) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                v.add_assign_ref(&c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Total degree counting only the listed positions.
    pub fn degree_in_set(&self, idx: &[usize]) -> u32 {
        self.terms
            .keys()
            .map(|m| m.degree_in(idx))
            .max()
            .unwrap_or(0)
    }

    /// Positions of variables that actually occur.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    pub fn involves_only(&self, idx: &[usize]) -> bool {
        self.terms
            .keys()
            .all(|m| (0..self.nvars).all(|i| m.0[i] == 0 || idx.contains(&i)))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.mul_ref(c)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &C) -> Self {
        MultiPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(k, v)| (k.mul(m), v.mul_ref(c))),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Leading term under `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, &C)> {
        let mut best: Option<(&Monomial, &C)> = None;
        for (m, c) in &self.terms {
            best = match best {
                None => Some((m, c)),
                Some((bm, bc)) => {
                    if order.cmp(m, bm) == std::cmp::Ordering::Greater {
                        Some((m, c))
                    } else {
                        Some((bm, bc))
                    }
                }
            };
        }
        best
    }

    /// Leading term in the lexicographic order of the storage map.
    pub fn lex_leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// Evaluates at a full point.
    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars);
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul_ref(&point[i]);
                }
            }
            acc.add_assign_ref(&t);
        }
        acc
    }

    /// Substitutes values for some variables; the variable count is kept.
    pub fn specialize(&self, assignment: &[(usize, C)]) -> Self {
        if assignment.is_empty() {
            return self.clone();
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let mut v = c.clone();
            for (i, val) in assignment {
                for _ in 0..m.0[*i] {
                    v = v.mul_ref(val);
                }
                m2.0[*i] = 0;
            }
            out.add_term(m2, v);
        }
        out
    }

    /// Replaces variable `i` by the polynomial `q`.
    pub fn substitute(&self, i: usize, q: &Self) -> Self {
        let d = self.degree_in(i) as usize;
        let mut powers = vec![Self::one(self.nvars)];
        for k in 1..=d {
            powers.push(&powers[k - 1] * q);
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            let mut rest = m.clone();
            rest.0[i] = 0;
            out = &out + &powers[e].mul_monomial(&rest, c);
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, c.mul_ref(&C::from_i64(e as i64)));
        }
        out
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> MultiPoly<D> {
        MultiPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// Pads or truncates exponent vectors to `nvars` positions.
    ///
    /// Truncation drops variables, so the caller must know they do not occur.
    pub fn resize(&self, nvars: usize) -> Self {
        MultiPoly::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| (m.resize(nvars), c.clone())),
        )
    }

    /// Renames variables: position `i` goes to `map[i]` in a ring of `nvars`.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Self {
        MultiPoly::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut v = vec![0; nvars];
                for (i, &e) in m.0.iter().enumerate() {
                    if e > 0 {
                        v[map[i]] += e;
                    }
                }
                (Monomial(v), c.clone())
            }),
        )
    }

    /// Splits by the exponents at `idx`: each key is a monomial supported on
    /// `idx` and each value is the cofactor in the remaining variables.
    pub fn coefficients_in(&self, idx: &[usize]) -> BTreeMap<Monomial, MultiPoly<C>> {
        let mut out: BTreeMap<Monomial, MultiPoly<C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = m.restrict(idx);
            let mut rest = m.clone();
            for &i in idx {
                rest.0[i] = 0;
            }
            out.entry(key)
                .or_insert_with(|| MultiPoly::zero(self.nvars))
                .add_term(rest, c.clone());
        }
        out
    }

    /// Coefficients of the powers of variable `i`, lowest first.
    pub fn univariate_coeffs(&self, i: usize) -> Vec<MultiPoly<C>> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![MultiPoly::zero(self.nvars); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            let mut rest = m.clone();
            rest.0[i] = 0;
            out[e].add_term(rest, c.clone());
        }
        out
    }
}

impl<C: Field> MultiPoly<C> {
    /// Scales so that the lexicographically leading coefficient is 1.
    pub fn make_monic_lex(&self) -> Self {
        match self.lex_leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    pub fn make_monic(&self, order: &MonomialOrder) -> Self {
        match self.leading(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }
}

/// Jacobian matrix: entry `(i, j)` is the derivative of `system[i]` by `vars[j]`.
pub fn jacobian<C: Coeff>(system: &[MultiPoly<C>], vars: &[usize]) -> Vec<Vec<MultiPoly<C>>> {
    system
        .iter()
        .map(|f| vars.iter().map(|&j| f.derivative(j)).collect())
        .collect()
}

impl<C: Coeff> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let (big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.neg_ref());
        }
        out
    }
}

impl<C: Coeff> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.mul_ref(cb));
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg_ref()))
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl<C: Coeff> $tr for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $f(self, rhs: MultiPoly<C>) -> MultiPoly<C> {
                (&self).$f(&rhs)
            }
        }
        impl<C: Coeff> $tr<&MultiPoly<C>> for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $f(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::Poly;
    use proptest::prelude::*;

    // layout [y1, x1, x2]
    fn y1() -> Poly {
        Poly::var(3, 0)
    }
    fn x1() -> Poly {
        Poly::var(3, 1)
    }
    fn x2() -> Poly {
        Poly::var(3, 2)
    }
    fn c(v: i64) -> Poly {
        Poly::from_int(3, v)
    }

    #[test]
    fn difference_of_squares() {
        let p = (x1() + y1()) * (x1() - y1());
        assert_eq!(p, x1().pow(2) - y1().pow(2));
        assert_eq!(&p + &Poly::zero(3), p);
    }

    #[test]
    fn square_matches_schoolbook() {
        let p = x1().pow(2) - y1();
        // expand term by term: x1^4 - 2 y1 x1^2 + y1^2
        let expected = Poly::from_terms(
            3,
            vec![
                (Monomial(vec![0, 4, 0]), int(1)),
                (Monomial(vec![1, 2, 0]), int(-2)),
                (Monomial(vec![2, 0, 0]), int(1)),
            ],
        );
        assert_eq!(&p * &p, expected);
    }

    #[test]
    fn specialize_examples() {
        let p = x1().pow(2) - y1();
        assert_eq!(p.specialize(&[(0, int(4))]), x1().pow(2) - c(4));
        assert_eq!(p.specialize(&[]), p);
        let q = (c(1) + y1()) * x1();
        assert!(q.specialize(&[(0, int(-1))]).is_zero());
    }

    #[test]
    fn jacobian_examples() {
        let f = x1().pow(2) + x2().pow(2) - c(1);
        let j = jacobian(&[f], &[1, 2]);
        assert_eq!(j[0], vec![c(2) * x1(), c(2) * x2()]);
        let j = jacobian(&[y1() * x1()], &[1]);
        assert_eq!(j[0][0], y1());
        let j = jacobian(&[x1() * x2(), x1() + x2()], &[1, 2]);
        assert_eq!(j, vec![vec![x2(), x1()], vec![c(1), c(1)]]);
    }

    #[test]
    fn substitute_var() {
        let p = x1().pow(2) + y1();
        let q = p.substitute(1, &(x2() + c(1)));
        assert_eq!(q, x2().pow(2) + c(2) * x2() + c(1) + y1());
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -5i64..6), 0..8)
            .prop_map(|ts| Poly::from_terms(3, ts.into_iter().map(|(e, v)| (Monomial(e), int(v)))))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn specialize_is_homomorphism(a in arb_poly(), b in arb_poly(), v in -4i64..5) {
            let s = [(0usize, int(v))];
            prop_assert_eq!((&a * &b).specialize(&s), &a.specialize(&s) * &b.specialize(&s));
            prop_assert_eq!((&a + &b).specialize(&s), &a.specialize(&s) + &b.specialize(&s));
        }
    }
}
