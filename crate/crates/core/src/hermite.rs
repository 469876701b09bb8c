//! Hermite quadratic forms over `Q(y)` and their specializations.

use crate::arith::{primitive_integer, squarefree_part, MonomialOrder, RatFunc};
use crate::error::{Error, Result};
use crate::groebner::{parametric_basis, GroebnerBasis, PolySystem, Quotient};
use crate::linalg::{Matrix, SignatureResult};
use crate::scalar::Coeff;
use crate::{Poly, Rational};
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::HashMap;

/// Trace form of `g^α` on the quotient algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteMatrix {
    pub alpha: Vec<u32>,
    pub entries: Matrix<RatFunc>,
    /// Polynomials in `y` off whose zero sets the entries specialize.
    pub locus: Vec<Poly>,
}

impl HermiteMatrix {
    pub fn size(&self) -> usize {
        self.entries.rows()
    }

    pub fn specialize(&self, y: &[Rational]) -> Result<Matrix<Rational>> {
        specialize_hermite(self, y)
    }
}

/// Shared data for all Hermite matrices of one basis: the traces of the
/// basis elements, the products `NF(b_i b_j)` and the multiplication
/// matrices of the sign polynomials.
pub struct HermiteContext {
    pub quotient: Quotient,
    traces: Vec<RatFunc>,
    products: Vec<Vec<Vec<RatFunc>>>,
    locus: Vec<Poly>,
    t: usize,
}

impl HermiteContext {
    pub fn new(gb: &GroebnerBasis) -> Result<Self> {
        let quotient = Quotient::new(gb)?;
        let d = quotient.dim();
        let products = quotient.basis_products();
        let traces: Vec<RatFunc> = (0..d)
            .map(|l| {
                let mut s = RatFunc::zero();
                for k in 0..d {
                    s = s.add_ref(&products[l][k][k]);
                }
                s
            })
            .collect();
        let mut locus = gb.w_infty();
        for p in quotient.denominators() {
            push_squarefree(&mut locus, p, gb.t);
        }
        Ok(HermiteContext {
            quotient,
            traces,
            products,
            locus,
            t: gb.t,
        })
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// `M_g` built from `NF(g)` and the basis products.
    pub fn mult_matrix(&self, g: &Poly) -> Matrix<RatFunc> {
        let v = self.quotient.normal_form(g);
        self.quotient.mult_matrix_from_nf(&v, &self.products)
    }

    /// Hermite matrix of a single polynomial.
    pub fn hermite(&self, g: &Poly) -> HermiteMatrix {
        let w = row_times(&self.traces, &self.mult_matrix(g));
        self.from_trace_row(vec![1], &w)
    }

    /// Hermite matrices of `g^α` for all `α ∈ {0,1,2}^s`, lexicographic.
    pub fn hermite_family(&self, gs: &[Poly]) -> Vec<HermiteMatrix> {
        let s = gs.len();
        let mats: Vec<Matrix<RatFunc>> = gs.par_iter().map(|g| self.mult_matrix(g)).collect();
        let alphas = exponent_vectors(s);
        // w_α^T = τ^T Π M_{g_i}^{α_i}, built from the prefix that drops the last nonzero exponent.
        let mut rows: HashMap<Vec<u32>, Vec<RatFunc>> = HashMap::new();
        rows.insert(vec![0; s], self.traces.clone());
        for alpha in &alphas {
            if rows.contains_key(alpha) {
                continue;
            }
            let k = alpha.iter().rposition(|&a| a > 0).unwrap();
            let mut prev = alpha.clone();
            prev[k] -= 1;
            let w = row_times(&rows[&prev], &mats[k]);
            rows.insert(alpha.clone(), w);
        }
        alphas
            .par_iter()
            .map(|a| self.from_trace_row(a.clone(), &rows[a]))
            .collect()
    }

    fn from_trace_row(&self, alpha: Vec<u32>, w: &[RatFunc]) -> HermiteMatrix {
        let d = self.dim();
        let mut h: Matrix<RatFunc> = Matrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let acc = RatFunc::dot(w.iter().zip(&self.products[i][j]));
                h[(j, i)] = acc.clone();
                h[(i, j)] = acc;
            }
        }
        let mut locus = self.locus.clone();
        for i in 0..d {
            for j in i..d {
                let den = h[(i, j)].den().clone();
                if den.nvars() > 0 && !den.is_constant() {
                    push_squarefree(&mut locus, &den, self.t);
                }
            }
        }
        HermiteMatrix {
            alpha,
            entries: h,
            locus,
        }
    }
}

/// `vᵀ M`.
fn row_times(v: &[RatFunc], m: &Matrix<RatFunc>) -> Vec<RatFunc> {
    (0..m.cols())
        .map(|j| RatFunc::dot(v.iter().enumerate().map(|(i, vi)| (vi, &m[(i, j)]))))
        .collect()
}

fn push_squarefree(locus: &mut Vec<Poly>, p: &Poly, t: usize) {
    let p = p.resize(t);
    if p.is_constant() {
        return;
    }
    let sq = primitive_integer(&squarefree_part(&p), &MonomialOrder::grevlex_all(t));
    if !locus.contains(&sq) {
        locus.push(sq);
    }
}

/// `{0,1,2}^s` in lexicographic order.
pub fn exponent_vectors(s: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..s {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (0..3u32).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

/// Hermite matrix of `g` for the system's parametric basis.
pub fn hermite_matrix(gb: &GroebnerBasis, g: &Poly) -> Result<HermiteMatrix> {
    Ok(HermiteContext::new(gb)?.hermite(g))
}

fn on_locus(locus: &[Poly], y: &[Rational]) -> bool {
    locus.iter().any(|p| p.eval(y).is_zero())
}

pub fn specialize_hermite(h: &HermiteMatrix, y: &[Rational]) -> Result<Matrix<Rational>> {
    if on_locus(&h.locus, y) {
        return Err(Error::InvalidSpecialization(format!(
            "{} lies on the validity locus",
            fmt_point(y)
        )));
    }
    h.entries.try_map(|e| {
        if e.is_zero() {
            return Ok(Rational::zero());
        }
        e.eval(y).ok_or_else(|| {
            Error::InvalidSpecialization(format!("denominator vanishes at {}", fmt_point(y)))
        })
    })
}

fn fmt_point(y: &[Rational]) -> String {
    let parts: Vec<String> = y.iter().map(crate::scalar::fmt_rational).collect();
    format!("y = ({})", parts.join(", "))
}

/// `TaQ(g, f)` at the parameter value `y`, through the parametric Hermite matrix.
pub fn tarski_query(sys: &PolySystem, g: &Poly, y: &[Rational]) -> Result<i64> {
    let gb = parametric_basis(sys)?;
    let h = hermite_matrix(&gb, g)?;
    Ok(specialize_hermite(&h, y)?.signature()?.signature)
}

/// Rank and signature of a specialized Hermite matrix.
pub fn specialized_signature(h: &HermiteMatrix, y: &[Rational]) -> Result<SignatureResult> {
    specialize_hermite(h, y)?.signature()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, VarSet};
    use crate::scalar::{int, rat};
    use proptest::prelude::*;

    fn system(t: usize, n: usize, src: &[&str]) -> PolySystem {
        let vars = VarSet::params_primal(t, n);
        PolySystem::new(
            vars.clone(),
            src.iter().map(|s| parse_poly(s, &vars).unwrap()).collect(),
        )
    }

    fn rf(src: &str) -> RatFunc {
        RatFunc::from_poly(parse_poly(src, &VarSet::params(1)).unwrap())
    }

    fn herm(sys: &PolySystem, g: &str) -> HermiteMatrix {
        let gb = parametric_basis(sys).unwrap();
        hermite_matrix(&gb, &parse_poly(g, &sys.vars).unwrap()).unwrap()
    }

    #[test]
    fn hermite_examples() {
        let sys = system(1, 1, &["x1^2 - y1"]);
        let m = |rows: [[&str; 2]; 2]| {
            Matrix::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|s| rf(s)).collect())
                    .collect(),
            )
        };
        assert_eq!(herm(&sys, "1").entries, m([["2", "0"], ["0", "2*y1"]]));
        assert_eq!(herm(&sys, "x1").entries, m([["0", "2*y1"], ["2*y1", "0"]]));
        assert_eq!(
            herm(&sys, "x1^2").entries,
            m([["2*y1", "0"], ["0", "2*y1^2"]])
        );
    }

    #[test]
    fn family_matches_single() {
        let sys = system(1, 1, &["x1^3 - y1*x1 + 1"]);
        let gb = parametric_basis(&sys).unwrap();
        let ctx = HermiteContext::new(&gb).unwrap();
        let g1 = parse_poly("x1 - y1", &sys.vars).unwrap();
        let g2 = parse_poly("x1^2 + 1", &sys.vars).unwrap();
        let fam = ctx.hermite_family(&[g1.clone(), g2.clone()]);
        assert_eq!(fam.len(), 9);
        for h in &fam {
            let g = &g1.pow(h.alpha[0]) * &g2.pow(h.alpha[1]);
            assert_eq!(h.entries, ctx.hermite(&g).entries);
        }
    }

    #[test]
    fn tarski_examples() {
        let sys = system(1, 1, &["x1^2 - y1"]);
        let x1 = parse_poly("x1", &sys.vars).unwrap();
        let one = Poly::one(2);
        assert_eq!(tarski_query(&sys, &x1, &[int(4)]).unwrap(), 0);
        assert_eq!(tarski_query(&sys, &one, &[int(4)]).unwrap(), 2);
        assert_eq!(tarski_query(&sys, &one, &[int(-1)]).unwrap(), 0);
    }

    #[test]
    fn specialization_examples() {
        let sys = system(1, 1, &["x1^2 - y1"]);
        let h = herm(&sys, "1");
        assert_eq!(
            h.specialize(&[int(4)]).unwrap(),
            Matrix::from_rows(vec![vec![int(2), int(0)], vec![int(0), int(8)]])
        );
        let at0 = h.specialize(&[int(0)]).unwrap();
        assert_eq!(
            at0,
            Matrix::from_rows(vec![vec![int(2), int(0)], vec![int(0), int(0)]])
        );
        assert_eq!(at0.signature().unwrap().rank, 1);
        let direct = herm(&system(0, 1, &["x1^2 - 9"]), "1");
        let expect = direct.entries.map(|e| e.as_constant().unwrap());
        assert_eq!(h.specialize(&[int(9)]).unwrap(), expect);
        let h = herm(&system(1, 1, &["y1*x1^2 - 1"]), "1");
        assert!(matches!(
            h.specialize(&[int(0)]),
            Err(Error::InvalidSpecialization(_))
        ));
        assert_eq!(
            h.specialize(&[rat(1, 4)])
                .unwrap()
                .signature()
                .unwrap()
                .signature,
            2
        );
    }

    fn linear_product(roots: &[i64]) -> Poly {
        roots.iter().fold(Poly::one(1), |acc, &r| {
            &acc * &(&Poly::var(1, 0) - &Poly::from_int(1, r))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn rank_and_signature_identities(
            roots in prop::collection::btree_set(-6i64..7, 1..5),
            g in prop::collection::vec(-3i64..4, 1..4),
        ) {
            let roots: Vec<i64> = roots.into_iter().collect();
            let f = linear_product(&roots);
            let gp = Poly::from_terms(1, g.iter().enumerate().map(|(k, &c)| (crate::arith::Monomial::var(1, 0, k as u32), int(c))));
            let sys = PolySystem::new(VarSet::params_primal(0, 1), vec![f]);
            let gb = parametric_basis(&sys).unwrap();
            let h = hermite_matrix(&gb, &gp).unwrap();
            let s = h.specialize(&[]).unwrap().signature().unwrap();
            let vals: Vec<Rational> = roots.iter().map(|&r| gp.eval(&[int(r)])).collect();
            let nz = vals.iter().filter(|v| !v.is_zero()).count();
            let taq = vals.iter().filter(|v| **v > int(0)).count() as i64 - vals.iter().filter(|v| **v < int(0)).count() as i64;
            prop_assert_eq!(s.rank, nz);
            prop_assert_eq!(s.signature, taq);
            prop_assert_eq!((s.rank as i64 - s.signature).rem_euclid(2), 0);
        }

        #[test]
        fn specialization_commutes(a in -3i64..4, b in 1i64..4, y in -4i64..5) {
            let src = format!("x1^2 - {a}*y1*x1 - {b}");
            let sys = system(1, 1, &[&src]);
            let h = herm(&sys, "x1 + y1");
            let yv = int(y);
            let spec = PolySystem::new(sys.vars.clone(), sys.polys.iter().map(|p| p.specialize(&[(0, yv.clone())])).collect());
            let g = parse_poly("x1 + y1", &sys.vars).unwrap().specialize(&[(0, yv.clone())]);
            let direct = hermite_matrix(&parametric_basis(&spec).unwrap(), &g).unwrap();
            prop_assert_eq!(h.specialize(&[yv.clone()]).unwrap(), direct.specialize(&[yv]).unwrap());
        }
    }
}
