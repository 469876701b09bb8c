//! Dense matrices over a coefficient ring, with exact elimination, the
//! Faddeev–LeVerrier characteristic polynomial and symmetric signatures.

use crate::error::{Error, Result};
use crate::scalar::{Coeff, Field, OrderedField};
use serde::Serialize;
use std::ops::{Index, IndexMut};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

/// Rank and signature of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SignatureResult {
    pub rank: usize,
    pub signature: i64,
}

impl<C> Index<(usize, usize)> for Matrix<C> {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.cols + j]
    }
}

impl<C> IndexMut<(usize, usize)> for Matrix<C> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.cols + j]
    }
}

impl<C: Coeff> Matrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> C>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<C>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> Matrix<D> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<D: Coeff, E, F: Fn(&C) -> std::result::Result<D, E>>(
        &self,
        f: F,
    ) -> std::result::Result<Matrix<D>, E> {
        let data = self
            .data
            .iter()
            .map(f)
            .collect::<std::result::Result<Vec<_>, E>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, rhs: &Matrix<C>) -> Matrix<C> {
        assert_eq!(self.cols, rhs.rows);
        let mut out: Matrix<C> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let t = a.mul_ref(b);
                        out[(i, j)].add_assign_ref(&t);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = C::zero();
                for (j, vj) in v.iter().enumerate() {
                    if !vj.is_zero() && !self[(i, j)].is_zero() {
                        acc.add_assign_ref(&self[(i, j)].mul_ref(vj));
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[C]) -> Vec<C> {
        assert_eq!(self.rows, v.len());
        (0..self.cols)
            .map(|j| {
                let mut acc = C::zero();
                for (i, vi) in v.iter().enumerate() {
                    if !vi.is_zero() && !self[(i, j)].is_zero() {
                        acc.add_assign_ref(&vi.mul_ref(&self[(i, j)]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix<C>) -> Matrix<C> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Matrix<C> {
        self.map(|a| a.mul_ref(c))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn trace(&self) -> C {
        let mut acc = C::zero();
        for i in 0..self.rows.min(self.cols) {
            acc.add_assign_ref(&self[(i, i)]);
        }
        acc
    }

    /// Kronecker product.
    pub fn kron(&self, rhs: &Matrix<C>) -> Matrix<C> {
        Matrix::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |i, j| {
            self[(i / rhs.rows, j / rhs.cols)].mul_ref(&rhs[(i % rhs.rows, j % rhs.cols)])
        })
    }

    /// Leading principal `k×k` submatrix.
    pub fn leading_principal(&self, k: usize) -> Matrix<C> {
        Matrix::from_fn(k, k, |i, j| self[(i, j)].clone())
    }

    /// Determinant by cofactor-free Bareiss elimination (exact in any domain
    /// where the intermediate divisions are exact).
    pub fn det_bareiss(&self) -> C
    where
        C: Field,
    {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return C::one();
        }
        let mut a = self.clone();
        let mut prev = C::one();
        let mut sign = false;
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(p) => {
                        a.swap_rows(k, p);
                        sign = !sign;
                    }
                    None => return C::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[(k, k)]
                        .mul_ref(&a[(i, j)])
                        .sub_ref(&a[(i, k)].mul_ref(&a[(k, j)]));
                    a[(i, j)] = v.div_ref(&prev);
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign {
            d.neg_ref()
        } else {
            d
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<C: Field> Matrix<C> {
    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix<C>, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let inv = a[(r, c)].inv();
            for j in c..a.cols {
                a[(r, j)] = a[(r, j)].mul_ref(&inv);
            }
            for i in 0..a.rows {
                if i != r && !a[(i, c)].is_zero() {
                    let f = a[(i, c)].clone();
                    for j in c..a.cols {
                        let v = a[(i, j)].sub_ref(&f.mul_ref(&a[(r, j)]));
                        a[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> C {
        self.det_bareiss()
    }

    pub fn inverse(&self) -> Option<Matrix<C>> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                C::one()
            } else {
                C::zero()
            }
        });
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }

    /// Basis of the right kernel, one vector per free column of the RREF.
    pub fn kernel(&self) -> Vec<Vec<C>> {
        let (r, piv) = self.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !piv.contains(c)) {
            let mut v = vec![C::zero(); self.cols];
            v[free] = C::one();
            for (row, &pc) in piv.iter().enumerate() {
                v[pc] = r[(row, free)].neg_ref();
            }
            out.push(v);
        }
        out
    }

    /// Coefficients `c_0..c_n` of `det(λI − A) = Σ c_k λ^k`, via Faddeev–LeVerrier.
    pub fn charpoly(&self) -> Vec<C> {
        assert!(self.is_square());
        let n = self.rows;
        let mut c = vec![C::zero(); n + 1];
        c[n] = C::one();
        let mut mk = Matrix::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&mk);
            for i in 0..n {
                next[(i, i)].add_assign_ref(&c[n - k + 1]);
            }
            let tr = self.mul(&next).trace();
            c[n - k] = tr.neg_ref().div_ref(&C::from_i64(k as i64));
            mk = next;
        }
        c
    }
}

impl<C: OrderedField> Matrix<C> {
    /// Rank and signature of a symmetric matrix, read off the sign pattern of
    /// its characteristic polynomial.
    pub fn signature(&self) -> Result<SignatureResult> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(signature_from_charpoly(&self.charpoly()))
    }
}

/// Rank and signature of a symmetric matrix from its characteristic
/// polynomial (real-rooted, so Descartes' rule is exact).
pub fn signature_from_charpoly<C: OrderedField>(c: &[C]) -> SignatureResult {
    let n = c.len() - 1;
    let zero_mult = c.iter().position(|v| !v.is_zero()).unwrap_or(n);
    let rank = n - zero_mult;
    let signs: Vec<i8> = c[zero_mult..]
        .iter()
        .map(|v| v.sign())
        .filter(|&s| s != 0)
        .collect();
    let pos = signs.windows(2).filter(|w| w[0] != w[1]).count();
    SignatureResult {
        rank,
        signature: 2 * pos as i64 - rank as i64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::Rational;
    use num_rational::Ratio;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn q(rows: Vec<Vec<i64>>) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(int).collect())
                .collect(),
        )
    }

    #[test]
    fn signature_examples() {
        let s = q(vec![vec![2, 0], vec![0, 8]]).signature().unwrap();
        assert_eq!(
            s,
            SignatureResult {
                rank: 2,
                signature: 2
            }
        );
        let s = q(vec![vec![0, 1], vec![1, 0]]).signature().unwrap();
        assert_eq!(
            s,
            SignatureResult {
                rank: 2,
                signature: 0
            }
        );
        let s = q(vec![vec![2, 0], vec![0, -8]]).signature().unwrap();
        assert_eq!(
            s,
            SignatureResult {
                rank: 2,
                signature: 0
            }
        );
        assert_eq!(
            q(vec![vec![1, 2], vec![0, 1]]).signature(),
            Err(Error::NotSymmetric)
        );
        let s = q(vec![vec![2, 0], vec![0, 0]]).signature().unwrap();
        assert_eq!(
            s,
            SignatureResult {
                rank: 1,
                signature: 1
            }
        );
    }

    #[test]
    fn ranks() {
        assert_eq!(q(vec![vec![1, 0], vec![0, 0]]).rank(), 1);
        assert_eq!(q(vec![vec![0, 0], vec![0, 0]]).rank(), 0);
        assert_eq!(q(vec![vec![1, 2], vec![2, 4]]).rank(), 1);
    }

    #[test]
    fn charpoly_and_det() {
        let a = q(vec![vec![2, 1], vec![1, 3]]);
        assert_eq!(a.charpoly(), vec![int(5), int(-5), int(1)]);
        assert_eq!(a.det(), int(5));
        let inv = a.inverse().unwrap();
        assert_eq!(inv[(0, 0)], rat(3, 5));
        assert!(q(vec![vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn generic_over_scalars() {
        let a: Matrix<Ratio<i64>> = Matrix::from_rows(vec![
            vec![Ratio::from_integer(4), Ratio::from_integer(1)],
            vec![Ratio::from_integer(1), Ratio::from_integer(-2)],
        ]);
        assert_eq!(a.signature().unwrap().signature, 0);
        let f: Matrix<f64> = Matrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 3.0]]);
        assert_eq!(f.signature().unwrap().signature, 2);
    }

    #[test]
    fn kernel_basis() {
        let a = q(vec![vec![1, 1, 0], vec![0, 0, 1]]);
        let k = a.kernel();
        assert_eq!(k, vec![vec![int(-1), int(1), int(0)]]);
    }

    // Signature of diagonal congruence D = P^T diag(d) P equals sign count of d.
    proptest! {
        #[test]
        fn signature_is_congruence_invariant(d in prop::collection::vec(-3i64..4, 1..5),
                                             p in prop::collection::vec(-2i64..3, 16)) {
            let n = d.len();
            let pm = Matrix::from_fn(n, n, |i, j| int(p[i * 4 + j] + if i == j { 5 } else { 0 }));
            prop_assume!(!pm.det().is_zero());
            let dm = Matrix::from_fn(n, n, |i, j| if i == j { int(d[i]) } else { int(0) });
            let a = pm.transpose().mul(&dm).mul(&pm);
            let s = a.signature().unwrap();
            let pos = d.iter().filter(|&&v| v > 0).count() as i64;
            let neg = d.iter().filter(|&&v| v < 0).count() as i64;
            prop_assert_eq!(s.rank as i64, pos + neg);
            prop_assert_eq!(s.signature, pos - neg);
        }
    }
}
