//! Gröbner bases over `Q[y][main]` under a block order with the main
//! variables above the parameters, and the zero-dimensional quotient
//! algebra over `Q(y)`.

mod buchberger;
mod fraction_free;
mod quotient;

pub use buchberger::{
    groebner, groebner_traced, pair_budget, DEFAULT_PAIR_BUDGET, PAIR_BUDGET_ENV,
};
pub use fraction_free::{groebner_ff, FfPoly};
pub use quotient::Quotient;

use crate::arith::{primitive_integer, squarefree_part, Monomial, MonomialOrder, VarKind, VarSet};
use crate::error::Result;
use crate::Poly;

/// A finite list of polynomials over a declared variable layout.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySystem {
    pub vars: VarSet,
    pub polys: Vec<Poly>,
}

impl PolySystem {
    pub fn new(vars: VarSet, polys: Vec<Poly>) -> Self {
        let polys = polys.into_iter().filter(|p| !p.is_zero()).collect();
        PolySystem { vars, polys }
    }

    pub fn num_params(&self) -> usize {
        self.vars.num_params()
    }

    /// Positions of the non-parameter variables.
    pub fn main_vars(&self) -> Vec<usize> {
        self.vars.main_indices()
    }

    /// Block order: grevlex on the main variables, ties by grevlex on `y`.
    pub fn block_order(&self) -> MonomialOrder {
        MonomialOrder::block(self.main_vars(), self.vars.indices_of_kind(VarKind::Param))
    }

    /// Substitutes parameter values; the layout is kept.
    pub fn specialize_params(&self, y: &[crate::Rational]) -> PolySystem {
        let assignment: Vec<(usize, crate::Rational)> = y.iter().cloned().enumerate().collect();
        PolySystem::new(
            self.vars.clone(),
            self.polys
                .iter()
                .map(|p| p.specialize(&assignment))
                .collect(),
        )
    }
}

/// Reduced Gröbner basis together with its order and variable roles.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis {
    pub vars: VarSet,
    pub order: MonomialOrder,
    pub elements: Vec<Poly>,
    /// Positions of the eliminated (main) variables.
    pub main: Vec<usize>,
    /// Number of leading parameter positions `0..t`.
    pub t: usize,
    /// Polynomials in `y` divided by while computing over `Q(y)`.
    pub pivots: Vec<Poly>,
}

/// Computes the reduced basis of `sys` under `order`. The main variables are
/// those of the order's highest block.
///
/// Each element is scaled so that its leading coefficient with respect to
/// the main variables is a primitive integer polynomial in `y` with positive
/// leading coefficient.
pub fn buchberger(sys: &PolySystem, order: &MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with_budget(sys, order, pair_budget())
}

pub fn buchberger_with_budget(
    sys: &PolySystem,
    order: &MonomialOrder,
    budget: usize,
) -> Result<GroebnerBasis> {
    let n = sys.vars.len();
    let elements = if sys.polys.is_empty() {
        vec![]
    } else {
        groebner(&sys.polys, order, budget)?
    };
    let main = match order {
        MonomialOrder::Block { .. } => order.high_positions(),
        _ => (0..n).collect(),
    };
    let t = sys.num_params();
    debug_assert!(sys.vars.indices_of_kind(VarKind::Param) == (0..t).collect::<Vec<_>>());
    let mut gb = GroebnerBasis {
        vars: sys.vars.clone(),
        order: order.clone(),
        elements,
        main,
        t,
        pivots: vec![],
    };
    gb.elements = gb.elements.iter().map(|g| gb.normalize(g)).collect();
    Ok(gb)
}

/// The basis used throughout the pipeline.
///
/// Buchberger runs fraction-free over `Q[y]` with grevlex on the main
/// variables. Every leading coefficient and content met is kept in
/// [`GroebnerBasis::pivots`]: off their zero sets the computation, hence the
/// staircase and the normal forms, specializes.
pub fn parametric_basis(sys: &PolySystem) -> Result<GroebnerBasis> {
    parametric_basis_with_budget(sys, pair_budget())
}

pub fn parametric_basis_with_budget(sys: &PolySystem, budget: usize) -> Result<GroebnerBasis> {
    let t = sys.num_params();
    let nv = sys.vars.len();
    let main = sys.main_vars();
    let ys: Vec<usize> = (0..t).collect();
    let to_y = |c: &Poly| {
        Poly::from_terms(
            t,
            c.terms()
                .map(|(m, v)| (Monomial(ys.iter().map(|&i| m.0[i]).collect()), v.clone())),
        )
    };
    let x_order = MonomialOrder::grevlex_all(main.len());
    let gens: Vec<FfPoly> = sys
        .polys
        .iter()
        .map(|p| {
            let terms = p
                .coefficients_in(&main)
                .into_iter()
                .map(|(mu, c)| (Monomial(main.iter().map(|&i| mu.0[i]).collect()), to_y(&c)))
                .collect();
            FfPoly::new(terms, &x_order)
        })
        .collect();
    let (basis, raw_pivots) = groebner_ff(gens, &x_order, budget)?;
    let order = sys.block_order();
    let elements: Vec<Poly> = basis
        .iter()
        .map(|g| {
            let mut out = Poly::zero(nv);
            for (mu, c) in &g.terms {
                for (ym, v) in c.terms() {
                    let mut e = vec![0u32; nv];
                    e[..t].copy_from_slice(&ym.0);
                    for (k, &pos) in main.iter().enumerate() {
                        e[pos] = mu.0[k];
                    }
                    out.add_term(Monomial(e), v.clone());
                }
            }
            out
        })
        .collect();
    let mut pivots: Vec<Poly> = Vec::new();
    for p in &raw_pivots {
        if p.is_constant() {
            continue;
        }
        let sq = primitive_integer(&squarefree_part(p), &MonomialOrder::grevlex_all(t));
        if !pivots.contains(&sq) {
            pivots.push(sq);
        }
    }
    let mut gb = GroebnerBasis {
        vars: sys.vars.clone(),
        order: order.clone(),
        elements,
        main,
        t,
        pivots,
    };
    gb.elements = gb.elements.iter().map(|g| gb.normalize(g)).collect();
    gb.elements
        .sort_by(|a, b| order.cmp(a.leading(&order).unwrap().0, b.leading(&order).unwrap().0));
    Ok(gb)
}

impl GroebnerBasis {
    fn param_positions(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|i| !self.main.contains(i))
            .collect()
    }

    /// Leading monomial restricted to the main variables.
    pub fn lm_x(&self, g: &Poly) -> Monomial {
        g.leading(&self.order).unwrap().0.restrict(&self.main)
    }

    /// Coefficient of `lm_x(g)` as a polynomial in the parameters, with the
    /// full variable count.
    pub fn lc_x(&self, g: &Poly) -> Poly {
        let lm = self.lm_x(g);
        let mut out = Poly::zero(g.nvars());
        for (m, c) in g.terms() {
            if m.restrict(&self.main) == lm {
                out.add_term(m.restrict(&self.param_positions()), c.clone());
            }
        }
        out
    }

    fn normalize(&self, g: &Poly) -> Poly {
        let lc = self.lc_x(g);
        let prim = primitive_integer(&lc, &MonomialOrder::grevlex_all(g.nvars()));
        let (m, c) = lc.terms().next().unwrap();
        let s = prim.coeff(m) / c;
        g.scale(&s)
    }

    pub fn is_one(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    /// Leading coefficients in `y`, as polynomials in `y1..yt`.
    pub fn leading_coefficients(&self) -> Vec<Poly> {
        self.elements
            .iter()
            .map(|g| self.lc_x(g).resize(self.t))
            .collect()
    }

    /// Squarefree parts of the non-constant leading coefficients and of the
    /// recorded pivots, deduplicated.
    pub fn w_infty(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for p in &self.pivots {
            if !out.contains(p) {
                out.push(p.clone());
            }
        }
        for lc in self.leading_coefficients() {
            if lc.is_constant() {
                continue;
            }
            let sq = primitive_integer(&squarefree_part(&lc), &MonomialOrder::grevlex_all(self.t));
            if !out.contains(&sq) {
                out.push(sq);
            }
        }
        out
    }

    /// Whether the staircase is finite, with its size `δ`.
    pub fn is_zero_dimensional(&self) -> (bool, usize) {
        match Quotient::new(self) {
            Ok(q) => (true, q.dim()),
            Err(_) => (false, 0),
        }
    }
}
