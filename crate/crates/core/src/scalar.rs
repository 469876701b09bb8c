//! Coefficient traits shared by the polynomial and linear-algebra layers.
//!
//! Everything above this module is written against [`Coeff`], [`Field`] or
//! [`OrderedField`]. The exact pipeline instantiates them with
//! [`BigRational`] and with rational functions in the parameters; the dense
//! linear algebra also runs on `f64` and `Ratio<i64>`.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Commutative ring element usable as a coefficient.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Zero + One + Send + Sync {
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_i64(v: i64) -> Self;

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.add_ref(rhs);
    }
}

/// A commutative field. `div_ref` panics on a zero divisor.
pub trait Field: Coeff {
    fn div_ref(&self, rhs: &Self) -> Self;

    fn inv(&self) -> Self {
        Self::one().div_ref(self)
    }

    /// Monic gcd of two nonzero dense univariate polynomials (constant term
    /// first), when the field has a faster method than generic Euclid.
    fn univariate_gcd(_a: &[Self], _b: &[Self]) -> Option<Vec<Self>> {
        None
    }
}

/// Field with exact sign information.
pub trait OrderedField: Field + PartialOrd {
    /// -1, 0 or 1.
    fn sign(&self) -> i8;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;

    fn abs_val(&self) -> Self {
        if self.sign() < 0 {
            self.neg_ref()
        } else {
            self.clone()
        }
    }
}

macro_rules! impl_ratio_like {
    ($t:ty, $from:expr, $ratio:expr, $ugcd:expr, $add:expr, $add_assign:expr, $sub:expr, $mul:expr) => {
        impl Coeff for $t {
            fn add_ref(&self, rhs: &Self) -> Self {
                $add(self, rhs)
            }
            fn sub_ref(&self, rhs: &Self) -> Self {
                $sub(self, rhs)
            }
            fn mul_ref(&self, rhs: &Self) -> Self {
                $mul(self, rhs)
            }
            fn neg_ref(&self) -> Self {
                -self
            }
            fn from_i64(v: i64) -> Self {
                $from(v)
            }
            fn add_assign_ref(&mut self, rhs: &Self) {
                $add_assign(self, rhs);
            }
        }

        impl Field for $t {
            fn div_ref(&self, rhs: &Self) -> Self {
                assert!(!rhs.is_zero(), "division by zero");
                self / rhs
            }
            fn univariate_gcd(a: &[Self], b: &[Self]) -> Option<Vec<Self>> {
                $ugcd(a, b)
            }
        }

        impl OrderedField for $t {
            fn sign(&self) -> i8 {
                if self.is_zero() {
                    0
                } else if self.is_positive() {
                    1
                } else {
                    -1
                }
            }
            fn from_ratio(num: i64, den: i64) -> Self {
                $ratio(num, den)
            }
            fn to_f64(&self) -> f64 {
                self.numer().to_f64().unwrap_or(f64::NAN)
                    / self.denom().to_f64().unwrap_or(f64::NAN)
            }
        }
    };
}

impl_ratio_like!(
    BigRational,
    |v: i64| BigRational::from_integer(BigInt::from(v)),
    |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d)),
    |a: &[BigRational], b: &[BigRational]| Some(crate::arith::zgcd::rational_univariate_gcd(a, b)),
    big_add,
    big_add_assign,
    big_sub,
    big_mul
);
impl_ratio_like!(
    Ratio<i64>,
    Ratio::from_integer,
    Ratio::new,
    |_: &[Ratio<i64>], _: &[Ratio<i64>]| None,
    |a: &Ratio<i64>, b: &Ratio<i64>| a + b,
    |a: &mut Ratio<i64>, b: &Ratio<i64>| *a += b,
    |a: &Ratio<i64>, b: &Ratio<i64>| a - b,
    |a: &Ratio<i64>, b: &Ratio<i64>| a * b
);

// Integer operands skip the normalizing gcds.
fn big_add(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() + b.numer())
    } else {
        a + b
    }
}

fn big_add_assign(a: &mut BigRational, b: &BigRational) {
    if a.is_integer() && b.is_integer() {
        *a = BigRational::from_integer(a.numer() + b.numer());
    } else {
        *a += b;
    }
}

fn big_sub(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() - b.numer())
    } else {
        a - b
    }
}

fn big_mul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

impl Coeff for f64 {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Field for f64 {
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl OrderedField for f64 {
    fn sign(&self) -> i8 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// `n / d` as a big rational.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a big rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Formats a rational as `a` or `a/b`.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `a`, `-a` or `a/b` (and finite decimals such as `-0.25`) exactly.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = ip.starts_with('-');
        let ip_abs = ip.trim_start_matches(['-', '+']);
        let whole: BigInt = if ip_abs.is_empty() {
            BigInt::zero()
        } else {
            ip_abs.parse().ok()?
        };
        let frac: BigInt = fp.parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let v = BigRational::new(whole * &scale + frac, scale);
        return Some(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(n))
}
