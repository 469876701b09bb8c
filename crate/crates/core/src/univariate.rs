//! Univariate real roots: Sturm sequences, dyadic isolation, exact signs at
//! algebraic points, one-dimensional cell decompositions and the
//! single-variable feasibility oracle.

use crate::arith::MultiPoly;
use crate::scalar::{Coeff, Field, OrderedField};
use crate::Rational;

/// Dense univariate polynomial, coefficients lowest degree first, no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> UniPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![C::zero(), C::one()])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&a| C::from_i64(a)).collect())
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn lc(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(C::zero)
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_ref(&C::from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = C::zero();
        Self::new(
            (0..n)
                .map(|i| {
                    self.coeffs
                        .get(i)
                        .unwrap_or(&z)
                        .add_ref(o.coeffs.get(i).unwrap_or(&z))
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.neg_ref()).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j].add_assign_ref(&a.mul_ref(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    /// Reads a multivariate polynomial that only involves variable `var`.
    pub fn from_multi(p: &MultiPoly<C>, var: usize) -> Option<Self> {
        let mut coeffs = vec![C::zero(); p.degree_in(var) as usize + 1];
        for (m, c) in p.terms() {
            if m.0.iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return None;
            }
            coeffs[m.0[var] as usize] = c.clone();
        }
        Some(Self::new(coeffs))
    }

    pub fn to_multi(&self, nvars: usize, var: usize) -> MultiPoly<C> {
        MultiPoly::from_terms(
            nvars,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (crate::arith::Monomial::var(nvars, var, i as u32), c.clone())),
        )
    }
}

impl<C: Field> UniPoly<C> {
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let inv = d.lc().inv();
        let mut q = vec![C::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul_ref(&inv);
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].sub_ref(&c.mul_ref(dc));
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree(&self) -> Self {
        if self.degree() <= 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }
}

impl<C: OrderedField> UniPoly<C> {
    pub fn sign_at(&self, x: &C) -> i8 {
        self.eval(x).sign()
    }

    /// A power of two strictly larger than the absolute value of every root.
    pub fn root_bound(&self) -> C {
        let lc = self.lc().abs_val();
        let mut m = C::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let v = c.abs_val().div_ref(&lc);
            if v > m {
                m = v;
            }
        }
        let bound = m.add_ref(&C::one());
        let mut b = C::one();
        let two = C::from_i64(2);
        while b <= bound {
            b = b.mul_ref(&two);
        }
        b
    }
}

/// Sturm sequence `p, p', -rem(p, p'), ...`.
pub fn sturm_sequence<C: OrderedField>(p: &UniPoly<C>) -> Vec<UniPoly<C>> {
    let mut seq = vec![p.clone()];
    if p.degree() <= 0 {
        return seq;
    }
    seq.push(p.derivative());
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn variations<C: OrderedField>(seq: &[UniPoly<C>], x: &C) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|q| q.sign_at(x))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in `(a, b]`.
pub fn sturm_count<C: OrderedField>(p: &UniPoly<C>, a: &C, b: &C) -> usize {
    if p.degree() <= 0 || a >= b {
        return 0;
    }
    let seq = sturm_sequence(p);
    sturm_count_seq(&seq, a, b)
}

fn sturm_count_seq<C: OrderedField>(seq: &[UniPoly<C>], a: &C, b: &C) -> usize {
    variations(seq, a).saturating_sub(variations(seq, b))
}

/// One real root of a squarefree polynomial, isolated in `(lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsolatingInterval<C> {
    pub poly: UniPoly<C>,
    pub lo: C,
    pub hi: C,
}

impl<C: OrderedField> IsolatingInterval<C> {
    /// Halves the interval, keeping the root.
    pub fn refine(&mut self) {
        let mid = self.lo.add_ref(&self.hi).div_ref(&C::from_i64(2));
        if sturm_count(&self.poly, &self.lo, &mid) == 1 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    /// The root, when it sits on the right endpoint.
    pub fn exact_value(&self) -> Option<C> {
        if self.poly.eval(&self.hi).is_zero() {
            Some(self.hi.clone())
        } else {
            None
        }
    }

    /// Exact sign of `q` at the isolated root.
    pub fn sign_of(&self, q: &UniPoly<C>) -> i8 {
        if q.is_zero() {
            return 0;
        }
        if q.degree() == 0 {
            return q.lc().sign();
        }
        let g = q.gcd(&self.poly);
        if g.degree() > 0 && sturm_count(&g, &self.lo, &self.hi) > 0 {
            return 0;
        }
        let qs = q.squarefree();
        let seq = sturm_sequence(&qs);
        let mut iv = self.clone();
        while sturm_count_seq(&seq, &iv.lo, &iv.hi) > 0 {
            iv.refine();
        }
        q.sign_at(&iv.hi)
    }
}

/// Isolates the distinct real roots of `p` in increasing order.
pub fn isolate_roots<C: OrderedField>(p: &UniPoly<C>) -> Vec<IsolatingInterval<C>> {
    assert!(!p.is_zero(), "isolating roots of the zero polynomial");
    let sq = p.squarefree();
    if sq.degree() <= 0 {
        return vec![];
    }
    let seq = sturm_sequence(&sq);
    let b = sq.root_bound();
    let mut out = Vec::new();
    let mut stack = vec![(b.neg_ref(), b)];
    let two = C::from_i64(2);
    while let Some((lo, hi)) = stack.pop() {
        match sturm_count_seq(&seq, &lo, &hi) {
            0 => {}
            1 => {
                let mut iv = IsolatingInterval {
                    poly: sq.clone(),
                    lo,
                    hi,
                };
                // shrink to width at most 1/4, snapping onto dyadic roots when hit
                let quarter = C::from_ratio(1, 4);
                while iv.hi.sub_ref(&iv.lo) > quarter && iv.exact_value().is_none() {
                    let mid = iv.lo.add_ref(&iv.hi).div_ref(&two);
                    if sq.eval(&mid).is_zero() {
                        iv.hi = mid;
                        break;
                    }
                    iv.refine();
                }
                out.push(iv);
            }
            _ => {
                let mid = lo.add_ref(&hi).div_ref(&two);
                // push the right half first so the left half is processed first
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out
}

/// A cell of the partition of the real line induced by finitely many roots.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell1D<C> {
    /// A root of the defining polynomials.
    Point(IsolatingInterval<C>),
    /// An open interval or ray between consecutive roots, with a rational sample.
    Open { sample: C },
}

/// Cells induced by the real roots of the nonzero polynomials in `polys`,
/// ordered left to right.
pub fn cell_decomposition<C: OrderedField>(polys: &[UniPoly<C>]) -> Vec<Cell1D<C>> {
    let mut prod = UniPoly::constant(C::one());
    for p in polys {
        if p.degree() > 0 {
            prod = prod.mul(&p.squarefree());
        }
    }
    if prod.degree() <= 0 {
        return vec![Cell1D::Open { sample: C::zero() }];
    }
    let mut roots = isolate_roots(&prod);
    if roots.is_empty() {
        return vec![Cell1D::Open { sample: C::zero() }];
    }
    let sq = roots[0].poly.clone();
    let left = roots[0]
        .exact_value()
        .unwrap_or_else(|| roots[0].lo.clone());
    let mut cells = vec![Cell1D::Open {
        sample: left.sub_ref(&C::one()),
    }];
    for k in 0..roots.len() {
        if k + 1 < roots.len() {
            let sample = loop {
                let (hi, lo) = (&roots[k].hi, &roots[k + 1].lo);
                if hi < lo {
                    break hi.add_ref(lo).div_ref(&C::from_i64(2));
                }
                if !sq.eval(hi).is_zero() {
                    break hi.clone();
                }
                roots[k + 1].refine();
            };
            cells.push(Cell1D::Point(roots[k].clone()));
            cells.push(Cell1D::Open { sample });
        } else {
            cells.push(Cell1D::Point(roots[k].clone()));
            cells.push(Cell1D::Open {
                sample: roots[k].hi.add_ref(&C::one()),
            });
        }
    }
    cells
}

/// Rational points meeting every open cell, plus every root that is
/// exactly detected as rational.
pub fn sample_points_1d<C: OrderedField>(polys: &[UniPoly<C>]) -> Vec<C> {
    cell_decomposition(polys)
        .into_iter()
        .filter_map(|c| match c {
            Cell1D::Open { sample } => Some(sample),
            Cell1D::Point(iv) => iv.exact_value(),
        })
        .collect()
}

/// True iff some real `x` satisfies `g_i(x) ≥ 0` for every `i`.
pub fn feasibility_oracle_1d<C: OrderedField>(gs: &[UniPoly<C>]) -> bool {
    for cell in cell_decomposition(gs) {
        let ok = match &cell {
            Cell1D::Open { sample } => gs.iter().all(|g| g.sign_at(sample) >= 0),
            Cell1D::Point(iv) => gs.iter().all(|g| iv.sign_of(g) >= 0),
        };
        if ok {
            return true;
        }
    }
    false
}

/// Rational-coefficient univariate polynomials.
pub type QUniPoly = UniPoly<Rational>;
