use super::gcd::{div_exact, gcd};
use super::monomial::MonomialOrder;
use crate::error::{Error, Result};
use crate::scalar::{Coeff, Field};
use crate::{Poly, Rational};
use num_traits::{One, Zero};
use std::ops::{Add, Mul};

/// Quotient of two polynomials in the parameters.
///
/// Canonical form: numerator and denominator are coprime and the
/// denominator's grevlex-leading coefficient is 1. Constants may be stored
/// with zero variables; binary operations pad to the larger ring.
#[derive(Debug, Clone)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

fn pad(a: &Poly, n: usize) -> Poly {
    if a.nvars() == n {
        a.clone()
    } else {
        a.resize(n)
    }
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = num.nvars().max(den.nvars());
        Ok(Self::normalize(pad(&num, n), pad(&den, n)))
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RatFunc {
            num: p,
            den: Poly::one(n),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc::from_poly(Poly::constant(0, c))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::one(n),
            };
        }
        let (num, den) = if den.is_constant() || num.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (div_exact(&num, &g).unwrap(), div_exact(&den, &g).unwrap())
            }
        };
        let order = MonomialOrder::grevlex_all(n);
        let lc = den.leading(&order).unwrap().1.clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// Scales a coprime pair to the canonical leading coefficient.
    fn with_monic_den(num: Poly, den: Poly) -> Self {
        let n = num.nvars().max(den.nvars());
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::one(n),
            };
        }
        let lc = den
            .leading(&MonomialOrder::grevlex_all(n))
            .unwrap()
            .1
            .clone();
        if lc.is_one() {
            return RatFunc { num, den };
        }
        let inv = lc.inv();
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The rational value when the function is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.num.constant_term() / self.den.constant_term())
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Value at a parameter point, `None` when the denominator vanishes.
    pub fn eval(&self, y: &[Rational]) -> Option<Rational> {
        let d = eval_padded(&self.den, y);
        if d.is_zero() {
            return None;
        }
        Some(eval_padded(&self.num, y) / d)
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul_ref(&rhs.inv_unchecked()))
    }

    fn inv_unchecked(&self) -> RatFunc {
        RatFunc::normalize(self.den.clone(), self.num.clone())
    }

    /// `Σ a_k b_k`, brought to a common denominator and normalized once.
    pub fn dot<'a>(pairs: impl IntoIterator<Item = (&'a RatFunc, &'a RatFunc)>) -> RatFunc {
        let terms: Vec<(Poly, Poly)> = pairs
            .into_iter()
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| {
                let (_, an, ad, bn, bd) = a.binop_pad(b);
                (&an * &bn, &ad * &bd)
            })
            .collect();
        let Some(n) = terms.iter().map(|(p, q)| p.nvars().max(q.nvars())).max() else {
            return RatFunc::zero();
        };
        let terms: Vec<(Poly, Poly)> = terms.iter().map(|(p, q)| (pad(p, n), pad(q, n))).collect();
        let mut lcm = Poly::one(n);
        for (_, d) in &terms {
            if d.is_constant() || d == &lcm {
                continue;
            }
            let g = gcd(&lcm, d);
            lcm = &lcm * &div_exact(d, &g).unwrap();
        }
        let mut num = Poly::zero(n);
        for (p, d) in &terms {
            num = &num + &(p * &div_exact(&lcm, d).unwrap());
        }
        RatFunc::normalize(num, lcm)
    }

    fn binop_pad(&self, rhs: &RatFunc) -> (usize, Poly, Poly, Poly, Poly) {
        let n = self.nvars().max(rhs.nvars());
        (
            n,
            pad(&self.num, n),
            pad(&self.den, n),
            pad(&rhs.num, n),
            pad(&rhs.den, n),
        )
    }
}

fn eval_padded(p: &Poly, y: &[Rational]) -> Rational {
    if p.nvars() == y.len() {
        p.eval(y)
    } else {
        let mut v = y.to_vec();
        v.resize(p.nvars(), Rational::zero());
        p.eval(&v)
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &RatFunc) -> bool {
        if self.nvars() == other.nvars() {
            self.num == other.num && self.den == other.den
        } else {
            let (_, a, b, c, d) = self.binop_pad(other);
            a == c && b == d
        }
    }
}

impl Coeff for RatFunc {
    fn add_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (_, a, b, c, d) = self.binop_pad(rhs);
        if b == d {
            return RatFunc::normalize(&a + &c, b);
        }
        if b.is_constant() && d.is_constant() {
            let s = b.constant_term() / d.constant_term();
            return RatFunc::normalize(&a + &c.scale(&s), b);
        }
        // a/b + c/d with g = gcd(b, d): only factors of g can cancel
        let g = gcd(&b, &d);
        if g.is_constant() {
            return RatFunc::with_monic_den(&(&a * &d) + &(&c * &b), &b * &d);
        }
        let b1 = div_exact(&b, &g).unwrap();
        let d1 = div_exact(&d, &g).unwrap();
        let t = &(&a * &d1) + &(&c * &b1);
        if t.is_zero() {
            return RatFunc::from_poly(t);
        }
        let h = gcd(&t, &g);
        let (t, g) = if h.is_constant() {
            (t, g)
        } else {
            (div_exact(&t, &h).unwrap(), div_exact(&g, &h).unwrap())
        };
        RatFunc::with_monic_den(t, &(&b1 * &d1) * &g)
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            let n = self.nvars().max(rhs.nvars());
            return RatFunc::from_poly(Poly::zero(n));
        }
        let (_, a, b, c, d) = self.binop_pad(rhs);
        if b.is_constant() && d.is_constant() {
            return RatFunc::normalize(&a * &c, &b * &d);
        }
        let g1 = gcd(&a, &d);
        let g2 = gcd(&c, &b);
        let (a, d) = if g1.is_constant() {
            (a, d)
        } else {
            (div_exact(&a, &g1).unwrap(), div_exact(&d, &g1).unwrap())
        };
        let (c, b) = if g2.is_constant() {
            (c, b)
        } else {
            (div_exact(&c, &g2).unwrap(), div_exact(&b, &g2).unwrap())
        };
        RatFunc::with_monic_den(&a * &c, &b * &d)
    }

    fn neg_ref(&self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    fn from_i64(v: i64) -> Self {
        RatFunc::from_poly(Poly::from_int(0, v))
    }
}

impl Field for RatFunc {
    fn div_ref(&self, rhs: &Self) -> Self {
        self.checked_div(rhs)
            .expect("division by the zero rational function")
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        self.add_ref(&rhs)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        self.mul_ref(&rhs)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(Poly::zero(0))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::from_poly(Poly::one(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn y1() -> Poly {
        Poly::var(1, 0)
    }
    fn c(v: i64) -> Poly {
        Poly::from_int(1, v)
    }

    #[test]
    fn examples() {
        let a = RatFunc::from_poly(y1());
        assert!(a.div_ref(&a).is_one());
        let inv = RatFunc::new(c(1), y1()).unwrap();
        assert_eq!(inv.add_ref(&inv), RatFunc::new(c(2), y1()).unwrap());
        let q = RatFunc::new(y1().pow(2) - c(1), y1() - c(1)).unwrap();
        assert_eq!(q, RatFunc::from_poly(y1() + c(1)));
        assert_eq!(a.checked_div(&RatFunc::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn canonical_uniqueness() {
        let a = RatFunc::new(&c(2) * &y1() + c(2), &c(4) * &y1().pow(2) - c(4)).unwrap();
        let b = RatFunc::new(c(1), &c(2) * &y1() - c(2)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.den(), &(y1() - c(1)));
        assert_eq!(a.eval(&[int(3)]), Some(crate::scalar::rat(1, 4)));
        assert_eq!(a.eval(&[int(1)]), None);
    }

    #[test]
    fn dot_matches_pairwise_sum() {
        let a = RatFunc::new(c(1), y1() - c(1)).unwrap();
        let b = RatFunc::new(y1(), y1() + c(1)).unwrap();
        let k = RatFunc::constant(int(3));
        let pairs = [(&a, &b), (&b, &a), (&k, &a), (&b, &b)];
        let want = pairs
            .iter()
            .fold(RatFunc::zero(), |acc, (x, z)| acc.add_ref(&x.mul_ref(z)));
        assert_eq!(RatFunc::dot(pairs), want);
        assert!(RatFunc::dot([(&a, &RatFunc::zero())]).is_zero());
        assert_eq!(
            RatFunc::dot([(&a, &b), (&a, &b.neg_ref())]),
            RatFunc::zero()
        );
    }

    #[test]
    fn mixed_arity_constants() {
        let one = RatFunc::one();
        let p = RatFunc::from_poly(y1());
        assert_eq!(one.mul_ref(&p), p);
        assert_eq!(p.sub_ref(&p), RatFunc::zero());
    }
}
