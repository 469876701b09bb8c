//! Sign determination: counting real roots on which sign polynomials are
//! non-negative, from Tarski queries of their monomial powers.

use crate::error::{Error, Result};
use crate::hermite::{exponent_vectors, HermiteMatrix};
use crate::linalg::Matrix;
use crate::scalar::int;
use crate::Rational;
use num_traits::{ToPrimitive, Zero};

/// `s`-fold Kronecker power of `[[1,1,1],[0,1,-1],[0,1,1]]`: rows are
/// exponents `α ∈ {0,1,2}^s`, columns sign vectors `σ ∈ {0,1,-1}^s`.
pub fn sign_matrix(s: usize) -> Matrix<Rational> {
    let base = Matrix::from_rows(vec![
        vec![int(1), int(1), int(1)],
        vec![int(0), int(1), int(-1)],
        vec![int(0), int(1), int(1)],
    ]);
    (0..s).fold(Matrix::identity(1), |acc, _| acc.kron(&base))
}

/// Sign vector of column `k` of [`sign_matrix`].
pub fn sign_vector(s: usize, k: usize) -> Vec<i8> {
    let mut out = vec![0i8; s];
    let mut k = k;
    for i in (0..s).rev() {
        out[i] = [0, 1, -1][k % 3];
        k /= 3;
    }
    out
}

/// Coefficients `a_α` with `Σ_α a_α TaQ(g^α, f) = #{x ∈ V(f) ∩ R^n : g(x) ≥ 0}`.
pub fn count_coefficients(s: usize) -> Vec<Rational> {
    let inv = sign_matrix(s).inverse().expect("sign matrix is invertible");
    let n = inv.rows();
    (0..n)
        .map(|alpha| {
            (0..n)
                .filter(|&sigma| sign_vector(s, sigma).iter().all(|&e| e >= 0))
                .fold(Rational::zero(), |acc, sigma| acc + &inv[(sigma, alpha)])
        })
        .collect()
}

/// Count from Tarski queries listed in the order of [`exponent_vectors`].
pub fn count_from_queries(a: &[Rational], taq: &[i64]) -> Result<u64> {
    let total = a
        .iter()
        .zip(taq)
        .fold(Rational::zero(), |acc, (c, &q)| acc + c * int(q));
    if !total.is_integer() || total < Rational::zero() {
        return Err(Error::Invalid(format!(
            "inconsistent Tarski queries: count {total}"
        )));
    }
    Ok(total.to_integer().to_u64().expect("count fits in u64"))
}

/// Number of real solutions with all sign polynomials non-negative, at `y`.
/// `family` is the Hermite family of the sign polynomials.
pub fn count_nonneg_solutions(family: &[HermiteMatrix], y: &[Rational]) -> Result<u64> {
    let s = family.first().map_or(0, |h| h.alpha.len());
    debug_assert_eq!(family.len(), exponent_vectors(s).len());
    let a = count_coefficients(s);
    let mut taq = Vec::with_capacity(family.len());
    for (h, c) in family.iter().zip(&a) {
        if c.is_zero() {
            taq.push(0);
        } else {
            taq.push(h.specialize(y)?.signature()?.signature);
        }
    }
    count_from_queries(&a, &taq)
}
