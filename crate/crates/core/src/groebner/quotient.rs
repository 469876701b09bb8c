use super::GroebnerBasis;
use crate::arith::{format_poly, Monomial, MonomialOrder, RatFunc};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Coeff;
use crate::Poly;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::Mutex;

#[derive(Debug)]
struct Reducer {
    lm: Monomial,
    /// Remaining terms divided by the leading coefficient.
    tail: Vec<(Monomial, RatFunc)>,
}

/// The quotient algebra `Q(y)[main] / <G>` of a zero-dimensional basis:
/// staircase monomials and normal forms with rational-function coordinates.
#[derive(Debug)]
pub struct Quotient {
    t: usize,
    main: Vec<usize>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    reducers: Vec<Reducer>,
    denominators: Vec<Poly>,
    cache: Mutex<HashMap<Monomial, Vec<RatFunc>>>,
}

impl Quotient {
    /// Reads the staircase off the leading monomials of `gb`. An element of
    /// `Q[y]` makes the quotient trivial (`δ = 0`).
    pub fn new(gb: &GroebnerBasis) -> Result<Quotient> {
        let nvars = gb.vars.len();
        let t = nvars - gb.main.len();
        let main = gb.main.clone();
        let main_order = MonomialOrder::Grevlex(main.clone());
        let mut elems: Vec<(Monomial, &Poly)> =
            gb.elements.iter().map(|g| (gb.lm_x(g), g)).collect();
        elems.sort_by(|a, b| main_order.cmp(&a.0, &b.0));
        let empty = |reducers| Quotient {
            t,
            main: main.clone(),
            basis: vec![],
            index: HashMap::new(),
            reducers,
            denominators: vec![],
            cache: Mutex::new(HashMap::new()),
        };
        if elems.iter().any(|(lm, _)| lm.is_one()) {
            return Ok(empty(vec![]));
        }
        let mut reducers: Vec<Reducer> = Vec::new();
        let mut denominators = Vec::new();
        for (lm, g) in elems {
            if reducers.iter().any(|r| r.lm.divides(&lm)) {
                continue;
            }
            let lc = gb.lc_x(g).resize(t);
            let mut tail = Vec::new();
            let mut parts: Vec<(Monomial, Poly)> = g.coefficients_in(&main).into_iter().collect();
            parts.sort_by(|a, b| main_order.cmp(&b.0, &a.0));
            for (mu, c) in parts {
                if mu == lm {
                    continue;
                }
                tail.push((mu, RatFunc::new(c.resize(t), lc.clone())?));
            }
            if !lc.is_constant() {
                denominators.push(lc);
            }
            reducers.push(Reducer { lm, tail });
        }
        for &v in &main {
            if !reducers
                .iter()
                .any(|r| r.lm.0[v] > 0 && r.lm.degree() == r.lm.0[v])
            {
                return Err(Error::NotZeroDimensional(gb.vars.name(v)));
            }
        }
        let mut basis = vec![Monomial::one(nvars)];
        let mut frontier = basis.clone();
        while let Some(m) = frontier.pop() {
            for &v in &main {
                let mut next = m.clone();
                next.0[v] += 1;
                if reducers.iter().any(|r| r.lm.divides(&next)) || basis.contains(&next) {
                    continue;
                }
                basis.push(next.clone());
                frontier.push(next);
            }
        }
        basis.sort_by(|a, b| main_order.cmp(a, b));
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        Ok(Quotient {
            t,
            main,
            basis,
            index,
            reducers,
            denominators,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// δ, the dimension over `Q(y)`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn num_params(&self) -> usize {
        self.t
    }

    /// Leading coefficients used as denominators in normal forms.
    pub fn denominators(&self) -> &[Poly] {
        &self.denominators
    }

    fn zero_vec(&self) -> Vec<RatFunc> {
        vec![RatFunc::zero(); self.dim()]
    }

    /// Normal form of a monomial in the main variables.
    pub fn nf_monomial(&self, m: &Monomial) -> Vec<RatFunc> {
        if let Some(&k) = self.index.get(m) {
            let mut v = self.zero_vec();
            v[k] = RatFunc::one();
            return v;
        }
        if let Some(v) = self.cache.lock().unwrap().get(m) {
            return v.clone();
        }
        let r = self
            .reducers
            .iter()
            .find(|r| r.lm.divides(m))
            .expect("monomial outside the staircase is reducible");
        let q = r.lm.quotient_of(m);
        let mut acc = self.zero_vec();
        for (s, c) in &r.tail {
            let v = self.nf_monomial(&s.mul(&q));
            for (a, b) in acc.iter_mut().zip(&v) {
                if !b.is_zero() {
                    *a = a.sub_ref(&c.mul_ref(b));
                }
            }
        }
        self.cache.lock().unwrap().insert(m.clone(), acc.clone());
        acc
    }

    /// Normal form of `Σ c_μ x^μ` with rational-function coefficients.
    pub fn nf_terms(&self, terms: &[(Monomial, RatFunc)]) -> Vec<RatFunc> {
        let mut acc = self.zero_vec();
        for (mu, c) in terms {
            if c.is_zero() {
                continue;
            }
            let v = self.nf_monomial(mu);
            for (a, b) in acc.iter_mut().zip(&v) {
                if !b.is_zero() {
                    *a = a.add_ref(&c.mul_ref(b));
                }
            }
        }
        acc
    }

    /// Splits a polynomial of the ambient ring into main-variable monomials
    /// with coefficients in `Q[y]`.
    pub fn split(&self, p: &Poly) -> Vec<(Monomial, RatFunc)> {
        p.coefficients_in(&self.main)
            .into_iter()
            .map(|(mu, c)| (mu, RatFunc::from_poly(c.resize(self.t))))
            .collect()
    }

    /// Coordinates of `p` modulo the ideal in the staircase basis.
    pub fn normal_form(&self, p: &Poly) -> Vec<RatFunc> {
        self.nf_terms(&self.split(p))
    }

    /// The normal form vector read back as terms over the staircase.
    pub fn as_terms(&self, v: &[RatFunc]) -> Vec<(Monomial, RatFunc)> {
        self.basis
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect()
    }

    /// Matrix of multiplication by `g`: column `k` is the normal form of `g·b_k`.
    pub fn mult_matrix(&self, g: &Poly) -> Matrix<RatFunc> {
        let parts = self.split(g);
        let cols: Vec<Vec<RatFunc>> = self
            .basis
            .iter()
            .map(|b| {
                let shifted: Vec<(Monomial, RatFunc)> =
                    parts.iter().map(|(m, c)| (m.mul(b), c.clone())).collect();
                self.nf_terms(&shifted)
            })
            .collect();
        let d = self.dim();
        Matrix::from_fn(d, d, |i, k| cols[k][i].clone())
    }

    /// Multiplication matrix from a normal-form vector, using the products
    /// of basis elements: column `k` is `Σ_l v_l · NF(b_l b_k)`.
    pub fn mult_matrix_from_nf(
        &self,
        v: &[RatFunc],
        products: &[Vec<Vec<RatFunc>>],
    ) -> Matrix<RatFunc> {
        let d = self.dim();
        let mut m: Matrix<RatFunc> = Matrix::zeros(d, d);
        for k in 0..d {
            for i in 0..d {
                m[(i, k)] = RatFunc::dot(
                    v.iter()
                        .zip(products.iter())
                        .map(|(vl, pl)| (vl, &pl[k][i])),
                );
            }
        }
        m
    }

    /// `NF(b_i b_j)` for all pairs.
    pub fn basis_products(&self) -> Vec<Vec<Vec<RatFunc>>> {
        let d = self.dim();
        let mut out = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in i..d {
                let v = self.nf_monomial(&self.basis[i].mul(&self.basis[j]));
                out[j][i] = v.clone();
                out[i][j] = v;
            }
        }
        out
    }

    /// Printable staircase.
    pub fn basis_strings(&self, vars: &crate::arith::VarSet) -> Vec<String> {
        self.basis
            .iter()
            .map(|m| {
                format_poly(
                    &Poly::monomial(m.nvars(), m.clone(), crate::scalar::int(1)),
                    vars,
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, VarSet};
    use crate::groebner::{buchberger, parametric_basis, PolySystem};
    use crate::scalar::int;

    fn quotient(t: usize, n: usize, src: &[&str]) -> (VarSet, Quotient) {
        let vars = VarSet::params_primal(t, n);
        let sys = PolySystem::new(
            vars.clone(),
            src.iter().map(|s| parse_poly(s, &vars).unwrap()).collect(),
        );
        let gb = parametric_basis(&sys).unwrap();
        (vars, Quotient::new(&gb).unwrap())
    }

    fn rf(v: &VarSet, s: &str) -> RatFunc {
        RatFunc::from_poly(parse_poly(s, v).unwrap().resize(v.num_params()))
    }

    #[test]
    fn staircase_examples() {
        let (v, q) = quotient(1, 1, &["x1^2 - y1"]);
        assert_eq!(q.basis_strings(&v), vec!["1", "x1"]);
        let (v, q) = quotient(0, 1, &["x1 - 1"]);
        assert_eq!(q.basis_strings(&v), vec!["1"]);
        let vars = VarSet::params_primal(0, 2);
        let sys = PolySystem::new(vars.clone(), vec![parse_poly("x1*x2 - 1", &vars).unwrap()]);
        let gb = buchberger(&sys, &sys.block_order()).unwrap();
        assert!(matches!(
            Quotient::new(&gb),
            Err(Error::NotZeroDimensional(_))
        ));
        assert_eq!(gb.is_zero_dimensional(), (false, 0));
    }

    #[test]
    fn normal_forms() {
        let (v, q) = quotient(1, 1, &["x1^2 - y1"]);
        let nf = q.normal_form(&parse_poly("x1^2", &v).unwrap());
        assert_eq!(nf, vec![rf(&v, "y1"), RatFunc::zero()]);
        let nf = q.normal_form(&parse_poly("x1^3", &v).unwrap());
        assert_eq!(nf, vec![RatFunc::zero(), rf(&v, "y1")]);
        let nf = q.normal_form(&parse_poly("x1", &v).unwrap());
        assert_eq!(nf, vec![RatFunc::zero(), RatFunc::one()]);
    }

    #[test]
    fn mult_matrices() {
        let (v, q) = quotient(1, 1, &["x1^2 - y1"]);
        let m = q.mult_matrix(&parse_poly("x1", &v).unwrap());
        assert_eq!(
            m.to_rows(),
            vec![
                vec![RatFunc::zero(), rf(&v, "y1")],
                vec![RatFunc::one(), RatFunc::zero()]
            ]
        );
        let m = q.mult_matrix(&parse_poly("x1^2", &v).unwrap());
        assert_eq!(
            m.to_rows(),
            vec![
                vec![rf(&v, "y1"), RatFunc::zero()],
                vec![RatFunc::zero(), rf(&v, "y1")]
            ]
        );
        assert_eq!(q.mult_matrix(&Poly::one(2)), Matrix::identity(2));
    }

    #[test]
    fn rational_denominators() {
        let (v, q) = quotient(1, 1, &["y1*x1^2 - 1"]);
        let nf = q.normal_form(&parse_poly("x1^2", &v).unwrap());
        assert_eq!(nf[0], RatFunc::new(Poly::one(1), Poly::var(1, 0)).unwrap());
        assert_eq!(nf[0].eval(&[int(2)]), Some(crate::scalar::rat(1, 2)));
        assert_eq!(q.denominators().len(), 1);
    }

    #[test]
    fn trivial_quotient() {
        let (_, q) = quotient(1, 1, &["x1 - 1", "x1 - y1", "y1 - 2"]);
        assert_eq!(q.dim(), 0);
    }

    #[test]
    fn idempotent_and_commuting() {
        let (v, q) = quotient(1, 2, &["x1^2 + x2 - y1", "x2^2 - x1 + 1"]);
        let p = parse_poly("x1^3*x2 + y1*x2^3 - 2", &v).unwrap();
        let nf = q.normal_form(&p);
        assert_eq!(q.nf_terms(&q.as_terms(&nf)), nf);
        let a = parse_poly("x1 + x2^2", &v).unwrap();
        let b = parse_poly("x1*x2 - y1", &v).unwrap();
        let ma = q.mult_matrix(&a);
        let mb = q.mult_matrix(&b);
        assert_eq!(ma.mul(&mb), q.mult_matrix(&(&a * &b)));
        assert_eq!(ma.mul(&mb), mb.mul(&ma));
        let products = q.basis_products();
        assert_eq!(q.mult_matrix_from_nf(&q.normal_form(&a), &products), ma);
    }
}
