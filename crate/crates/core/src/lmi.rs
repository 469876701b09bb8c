//! Parametric linear matrices `A(y, x) = A_0 + x_1 A_1 + … + x_n A_n`.

use crate::arith::{Monomial, MonomialOrder, VarSet};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::int;
use crate::{Poly, Rational};
use num_traits::{One, Zero};
use std::collections::HashMap;

/// Symmetric `m×m` pencil whose coefficient matrices have entries in
/// `Q[y1..yt]`. Entries of `coeffs[k]` are stored over `t` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamLinearMatrix {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    /// `coeffs[k][i][j]` is entry `(i, j)` of `A_k`.
    pub coeffs: Vec<Vec<Vec<Poly>>>,
}

impl ParamLinearMatrix {
    /// Builds the pencil from coefficient matrices over `Q[y]`.
    pub fn new(t: usize, coeffs: Vec<Vec<Vec<Poly>>>) -> Result<Self> {
        let n = coeffs
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Invalid("no coefficient matrices".into()))?;
        let m = coeffs[0].len();
        for a in &coeffs {
            if a.len() != m || a.iter().any(|r| r.len() != m) {
                return Err(Error::Invalid(
                    "coefficient matrices must be square of equal size".into(),
                ));
            }
            for i in 0..m {
                for j in 0..i {
                    if a[i][j] != a[j][i] {
                        return Err(Error::NotSymmetric);
                    }
                }
            }
        }
        Ok(ParamLinearMatrix { m, n, t, coeffs })
    }

    /// Builds the pencil from entries over `Q[y, x]` (layout `y1..yt, x1..xn`).
    pub fn from_entries(t: usize, n: usize, entries: &[Vec<Poly>]) -> Result<Self> {
        let m = entries.len();
        let nv = t + n;
        let ys: Vec<usize> = (0..t).collect();
        let mut coeffs = vec![vec![vec![Poly::zero(t); m]; m]; n + 1];
        for i in 0..m {
            if entries[i].len() != m {
                return Err(Error::Invalid("matrix must be square".into()));
            }
            for j in 0..m {
                let e = &entries[i][j];
                for (mono, c) in e.terms() {
                    let xdeg: u32 = (t..nv).map(|k| mono.0[k]).sum();
                    if xdeg > 1 {
                        return Err(Error::Invalid(format!(
                            "entry ({}, {}) is not linear in x",
                            i + 1,
                            j + 1
                        )));
                    }
                    let k = (t..nv).find(|&k| mono.0[k] == 1).map_or(0, |k| k - t + 1);
                    coeffs[k][i][j].add_term(mono.restrict(&ys).resize(t), c.clone());
                }
            }
        }
        ParamLinearMatrix::new(t, coeffs)
    }

    /// `y1..yt, x1..xn`.
    pub fn vars(&self) -> VarSet {
        VarSet::params_primal(self.t, self.n)
    }

    /// Maximal total degree in `y` over all entries.
    pub fn degree(&self) -> u32 {
        self.coeffs
            .iter()
            .flat_map(|a| a.iter().flat_map(|r| r.iter().map(|p| p.total_degree())))
            .max()
            .unwrap_or(0)
    }

    /// Entry `(i, j)` of `A(y, x)` in a ring of `nvars ≥ t + n` variables
    /// whose first positions are `y1..yt, x1..xn`.
    pub fn entry_in(&self, i: usize, j: usize, nvars: usize) -> Poly {
        let mut e = self.coeffs[0][i][j].resize(nvars);
        for k in 1..=self.n {
            let c = &self.coeffs[k][i][j];
            if !c.is_zero() {
                e = &e
                    + &c.resize(nvars)
                        .mul_monomial(&Monomial::var(nvars, self.t + k - 1, 1), &int(1));
            }
        }
        e
    }

    pub fn entries_in(&self, nvars: usize) -> Vec<Vec<Poly>> {
        (0..self.m)
            .map(|i| (0..self.m).map(|j| self.entry_in(i, j, nvars)).collect())
            .collect()
    }

    /// Coefficients `g_0..g_m` of `det(A + λI)` in `Q[y, x]`; `A(y,x) ⪰ 0` iff all `g_i ≥ 0`.
    pub fn psd_matrix_cond(&self) -> Vec<Poly> {
        let nv = self.t + self.n;
        let lam = nv;
        let mut entries = self.entries_in(nv + 1);
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = &row[i] + &Poly::var(nv + 1, lam);
        }
        let det = det_minor_expansion(&entries, nv + 1);
        let coeffs = det.univariate_coeffs(lam);
        let mut g: Vec<Poly> = coeffs.into_iter().map(|p| p.resize(nv)).collect();
        g.resize(self.m + 1, Poly::zero(nv));
        g
    }

    /// Substitutes `x ← Mx`: `A'_l = Σ_k M_{kl} A_k`.
    pub fn change_vars(&self, mm: &Matrix<Rational>) -> Result<Self> {
        check_invertible(mm, self.n)?;
        let mut coeffs = vec![self.coeffs[0].clone()];
        for l in 0..self.n {
            let mut a = vec![vec![Poly::zero(self.t); self.m]; self.m];
            for k in 0..self.n {
                let c = &mm[(k, l)];
                if c.is_zero() {
                    continue;
                }
                for i in 0..self.m {
                    for j in 0..self.m {
                        a[i][j] = &a[i][j] + &self.coeffs[k + 1][i][j].scale(c);
                    }
                }
            }
            coeffs.push(a);
        }
        ParamLinearMatrix::new(self.t, coeffs)
    }

    /// `A_y`: the pencil with the parameters replaced by `y`.
    pub fn specialize_params(&self, y: &[Rational]) -> Self {
        assert_eq!(y.len(), self.t);
        let asg: Vec<(usize, Rational)> = y.iter().cloned().enumerate().collect();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                a.iter()
                    .map(|r| r.iter().map(|p| p.specialize(&asg).resize(0)).collect())
                    .collect()
            })
            .collect();
        ParamLinearMatrix {
            m: self.m,
            n: self.n,
            t: 0,
            coeffs,
        }
    }

    /// The rational matrix `A(y, x)`.
    pub fn eval(&self, y: &[Rational], x: &[Rational]) -> Matrix<Rational> {
        Matrix::from_fn(self.m, self.m, |i, j| {
            let mut v = self.coeffs[0][i][j].eval(y);
            for k in 0..self.n {
                v += self.coeffs[k + 1][i][j].eval(y) * &x[k];
            }
            v
        })
    }

    pub fn rank_at(&self, y: &[Rational], x: &[Rational]) -> usize {
        self.eval(y, x).rank()
    }
}

/// Determinant by Laplace expansion along rows, memoized over column subsets.
pub fn det_minor_expansion(a: &[Vec<Poly>], nvars: usize) -> Poly {
    let m = a.len();
    let mut memo: HashMap<u32, Poly> = HashMap::new();
    fn rec(a: &[Vec<Poly>], nvars: usize, cols: u32, memo: &mut HashMap<u32, Poly>) -> Poly {
        let m = a.len();
        let k = m - cols.count_ones() as usize;
        if k == m {
            return Poly::one(nvars);
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = Poly::zero(nvars);
        let mut sign_pos = 0;
        for j in 0..m {
            if cols & (1 << j) == 0 {
                continue;
            }
            if !a[k][j].is_zero() {
                let sub = rec(a, nvars, cols & !(1 << j), memo);
                let term = &a[k][j] * &sub;
                acc = if sign_pos % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            sign_pos += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    rec(a, nvars, (1u32 << m) - 1, &mut memo)
}

fn check_invertible(mm: &Matrix<Rational>, n: usize) -> Result<()> {
    if mm.rows() != n || mm.cols() != n {
        return Err(Error::Invalid(format!(
            "change of variables must be {n}×{n}"
        )));
    }
    if mm.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(())
}

/// `p(Mx)` for the variables at `positions` (`x_k ← Σ_l M_{kl} x_l`).
pub fn change_vars_poly(p: &Poly, mm: &Matrix<Rational>, positions: &[usize]) -> Result<Poly> {
    check_invertible(mm, positions.len())?;
    let nv = p.nvars();
    let images: Vec<Poly> = (0..positions.len())
        .map(|k| {
            Poly::from_terms(
                nv,
                positions
                    .iter()
                    .enumerate()
                    .map(|(l, &pos)| (Monomial::var(nv, pos, 1), mm[(k, l)].clone())),
            )
        })
        .collect();
    let mut out = Poly::zero(nv);
    let mut pow_cache: HashMap<(usize, u32), Poly> = HashMap::new();
    for (mono, c) in p.terms() {
        let mut rest = mono.clone();
        let mut term = Poly::constant(nv, c.clone());
        for (k, &pos) in positions.iter().enumerate() {
            let e = mono.0[pos];
            rest.0[pos] = 0;
            if e > 0 {
                let pw = pow_cache
                    .entry((k, e))
                    .or_insert_with(|| images[k].pow(e))
                    .clone();
                term = &term * &pw;
            }
        }
        out = &out + &term.mul_monomial(&rest, &Rational::one());
    }
    Ok(out)
}

/// Gram-matrix pencil of `p` over the monomial list `beta`.
///
/// `p` lives over `vars` (parameters `y` followed by the polynomial's own
/// variables); `beta` are monomials in that layout. The output pencil keeps
/// the parameters and introduces one `x` per free Gram coordinate.
pub fn sos_to_lmi(p: &Poly, vars: &VarSet, beta: &[Monomial]) -> Result<ParamLinearMatrix> {
    let t = vars.num_params();
    let d = beta.len();
    let nv = vars.len();
    let unknowns: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
    let mut monos: Vec<Monomial> = Vec::new();
    for &(i, j) in &unknowns {
        let mu = beta[i].mul(&beta[j]);
        if !monos.contains(&mu) {
            monos.push(mu);
        }
    }
    let ys: Vec<usize> = (0..t).collect();
    let zs: Vec<usize> = (t..nv).collect();
    let split = p.coefficients_in(&zs);
    for mu in split.keys() {
        if !monos.contains(mu) {
            let shown = crate::arith::format_poly(&Poly::monomial(nv, mu.clone(), int(1)), vars);
            return Err(Error::NotRepresentable(shown));
        }
    }
    let order = MonomialOrder::Grevlex(zs.clone());
    monos.sort_by(|a, b| order.cmp(b, a));
    let rows = monos.len();
    let cols = unknowns.len();
    // [L | I] so the row operations can be replayed on the right-hand side.
    let aug = Matrix::from_fn(rows, cols + rows, |r, c| {
        if c < cols {
            let (i, j) = unknowns[c];
            if beta[i].mul(&beta[j]) == monos[r] {
                int(if i == j { 1 } else { 2 })
            } else {
                int(0)
            }
        } else if c - cols == r {
            int(1)
        } else {
            int(0)
        }
    });
    let (rref, pivots) = aug.rref();
    let pivots: Vec<usize> = pivots.into_iter().filter(|&c| c < cols).collect();
    let rhs: Vec<Poly> = monos
        .iter()
        .map(|mu| {
            split
                .get(mu)
                .map_or_else(|| Poly::zero(nv), |c| c.clone())
                .restrict_to(&ys, t)
        })
        .collect();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let n = free.len();
    let mut coeffs = vec![vec![vec![Poly::zero(t); d]; d]; n + 1];
    let mut set = |c: usize, k: usize, v: Poly| {
        let (i, j) = unknowns[c];
        coeffs[k][i][j] = v.clone();
        coeffs[k][j][i] = v;
    };
    for (k, &fc) in free.iter().enumerate() {
        set(fc, k + 1, Poly::one(t));
    }
    for (r, &pc) in pivots.iter().enumerate() {
        let mut w0 = Poly::zero(t);
        for (s, rh) in rhs.iter().enumerate() {
            let tr = &rref[(r, cols + s)];
            if !tr.is_zero() {
                w0 = &w0 + &rh.scale(tr);
            }
        }
        set(pc, 0, w0);
        for (k, &fc) in free.iter().enumerate() {
            let v = &rref[(r, fc)];
            if !v.is_zero() {
                set(pc, k + 1, Poly::constant(t, -v.clone()));
            }
        }
    }
    ParamLinearMatrix::new(t, coeffs)
}

trait RestrictTo {
    fn restrict_to(&self, idx: &[usize], n: usize) -> Poly;
}

impl RestrictTo for Poly {
    /// Keeps the variables at `idx` (which must be `0..n`) and drops the rest.
    fn restrict_to(&self, idx: &[usize], n: usize) -> Poly {
        Poly::from_terms(
            n,
            self.terms()
                .map(|(m, c)| (m.restrict(idx).resize(n), c.clone())),
        )
    }
}
