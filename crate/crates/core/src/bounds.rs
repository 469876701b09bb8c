//! Degree bounds: δ*, deg(g), the multilinear Bézout bound and its closed-form
//! majorant.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundInput {
    pub m: u64,
    pub r: u64,
    pub d: u64,
    pub n: u64,
    pub t: u64,
}

impl BoundInput {
    pub fn new(m: u64, r: u64, d: u64, n: u64, t: u64) -> Result<Self> {
        if m == 0 || r >= m {
            return Err(Error::Invalid(format!(
                "need 0 <= r < m, got m = {m}, r = {r}"
            )));
        }
        Ok(BoundInput { m, r, d, n, t })
    }

    /// `m(m+1)/2`.
    pub fn m_star(&self) -> u64 {
        self.m * (self.m + 1) / 2
    }

    /// `binom(m−r+1, 2)`.
    pub fn c(&self) -> u64 {
        let k = self.m - self.r + 1;
        k * (k - 1) / 2
    }
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn pow(base: u64, e: u64) -> BigInt {
    Pow::pow(big(base), e)
}

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        BigInt::zero()
    } else {
        binomial(big(n), big(k))
    }
}

fn multinom(n: u64, ks: &[u64]) -> BigInt {
    if ks.iter().sum::<u64>() != n {
        return BigInt::zero();
    }
    let mut rest = n;
    let mut out = BigInt::one();
    for &k in ks {
        out *= binom(rest, k);
        rest -= k;
    }
    out
}

/// `binom(n + m*, n)³` when `n ≤ m*`, else 0.
pub fn delta_star(n: u64, m: u64) -> BigInt {
    let ms = m * (m + 1) / 2;
    if n > ms {
        BigInt::zero()
    } else {
        Pow::pow(binom(n + ms, n), 3u32)
    }
}

/// `m(d+1)`.
pub fn deg_g_bound(m: u64, d: u64) -> u64 {
    m * (d + 1)
}

/// One element of Θ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ThetaTuple {
    pub alpha_u: u64,
    pub alpha_y: u64,
    pub alpha_x: u64,
    pub beta_u: u64,
    pub gamma_y: u64,
    pub gamma_x: u64,
    pub gamma_lambda: u64,
    pub delta_y: u64,
}

/// Θ, enumerated over the free indices `(γ_y, γ_x, δ_y)`; tuples where a
/// derived index would be negative are excluded.
pub fn theta(inp: &BoundInput) -> Vec<ThetaTuple> {
    let (ms, c, n, t) = (
        inp.m_star() as i64,
        inp.c() as i64,
        inp.n as i64,
        inp.t as i64,
    );
    let mut out = Vec::new();
    for gy in 0..=t {
        for gx in 0..=t.min(n) {
            for dy in 0..=t.min(n) {
                let au = gy + dy + gx + ms - t - n;
                let ay = t - gy - dy;
                let ax = n - gx;
                let gl = t - gy - gx;
                let bu = t + n - c - gy - dy - gx;
                if [au, ay, ax, gl, bu].iter().all(|&v| v >= 0) {
                    out.push(ThetaTuple {
                        alpha_u: au as u64,
                        alpha_y: ay as u64,
                        alpha_x: ax as u64,
                        beta_u: bu as u64,
                        gamma_y: gy as u64,
                        gamma_x: gx as u64,
                        gamma_lambda: gl as u64,
                        delta_y: dy as u64,
                    });
                }
            }
        }
    }
    out
}

pub fn theta_cardinality(inp: &BoundInput) -> u64 {
    theta(inp).len() as u64
}

/// `min{(t+1)³, (t+1)(n+1)²}`.
pub fn theta_cardinality_bound(inp: &BoundInput) -> u64 {
    let t1 = inp.t + 1;
    (t1 * t1 * t1).min(t1 * (inp.n + 1) * (inp.n + 1))
}

/// The multilinear Bézout bound; `0⁰ = 1`.
pub fn mbb_delta(inp: &BoundInput) -> BigInt {
    let (ms, d, r, t, n) = (inp.m_star(), inp.d, inp.r, inp.t, inp.n);
    let sum = theta(inp).iter().fold(BigInt::zero(), |acc, th| {
        let term = pow(d, th.alpha_y)
            * pow(r, th.beta_u)
            * pow(d.saturating_sub(1), th.gamma_y)
            * pow(d, th.delta_y)
            * multinom(ms, &[th.alpha_u, th.alpha_y, th.alpha_x])
            * binom(ms, th.beta_u)
            * multinom(t, &[th.gamma_y, th.gamma_x, th.gamma_lambda])
            * binom(n, th.delta_y);
        acc + term
    });
    pow(r + 1, inp.c()) * sum
}

/// Ceiling of `(6r+6)^{m*} d^{2t+m*} (e(m*+c+t)/(m*+c))^{m*+c} 3^t min{(t+1)³,(t+1)(n+1)²}`,
/// with `e` replaced by `2.7182818285`.
pub fn delta_bar_star(inp: &BoundInput) -> BigInt {
    let (ms, c, t) = (inp.m_star(), inp.c(), inp.t);
    let e = BigRational::new(big(27_182_818_285), Pow::pow(big(10), 10u32));
    let ratio = e * BigRational::new(big(ms + c + t), big(ms + c));
    let value =
        BigRational::from_integer(pow(6 * inp.r + 6, ms) * pow(inp.d, 2 * t + ms) * pow(3, t))
            * Pow::pow(ratio, (ms + c) as u32)
            * BigRational::from_integer(big(theta_cardinality_bound(inp)));
    let (q, rem) = value.numer().div_rem(value.denom());
    if rem.is_zero() {
        q
    } else {
        q + 1
    }
}

/// All bounds for one input.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    #[serde(flatten)]
    pub input: BoundInput,
    pub m_star: u64,
    pub c: u64,
    pub delta_star: String,
    pub deg_g: u64,
    pub mbb: String,
    pub theta: u64,
    pub theta_bound: u64,
    pub delta_bar_star: String,
}

pub fn bounds_report(inp: &BoundInput) -> BoundsReport {
    BoundsReport {
        input: *inp,
        m_star: inp.m_star(),
        c: inp.c(),
        delta_star: delta_star(inp.n, inp.m).to_string(),
        deg_g: deg_g_bound(inp.m, inp.d),
        mbb: mbb_delta(inp).to_string(),
        theta: theta_cardinality(inp),
        theta_bound: theta_cardinality_bound(inp),
        delta_bar_star: delta_bar_star(inp).to_string(),
    }
}
