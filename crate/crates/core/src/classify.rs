//! Classification of real solution counts over the parameter space, and the
//! parametric LMI driver built on it.

use crate::arith::{primitive_integer, squarefree_part, MonomialOrder, RatFunc};
use crate::error::{Error, Result};
use crate::formula::{CountAssertion, Formula, ParamFormula, Rel};
use crate::groebner::{parametric_basis, GroebnerBasis, PolySystem};
use crate::hermite::{HermiteContext, HermiteMatrix};
use crate::incidence::{
    choose_randomness, real_det, RealDetEntry, SaturationMode, NON_GENERIC_WARNING,
};
use crate::linalg::Matrix;
use crate::lmi::ParamLinearMatrix;
use crate::scalar::{int, rat, OrderedField};
use crate::sign::{count_coefficients, count_nonneg_solutions};
use crate::univariate::{cell_decomposition, Cell1D, UniPoly};
use crate::{Poly, Rational};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

/// How classification formulas are expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ClassifyOption {
    /// Signature assertion `Σ a_α Sign(H_α) > 0`; any number of parameters.
    #[default]
    Assertion,
    /// Sample cells off the zero sets of maximal non-vanishing principal minors (t = 1).
    Cells,
    /// Sign conditions on leading principal minors (t = 1).
    Minors,
}

impl ClassifyOption {
    pub fn name(self) -> &'static str {
        match self {
            ClassifyOption::Assertion => "assertion",
            ClassifyOption::Cells => "cells",
            ClassifyOption::Minors => "minors",
        }
    }
}

impl FromStr for ClassifyOption {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "assertion" | "1" => Ok(ClassifyOption::Assertion),
            "cells" | "2" => Ok(ClassifyOption::Cells),
            "minors" | "3" => Ok(ClassifyOption::Minors),
            _ => Err(Error::Invalid(format!(
                "unknown classification option `{s}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryCount {
    Exact(u64),
    /// At least one solution.
    Positive,
}

impl EntryCount {
    pub fn is_positive(self) -> bool {
        !matches!(self, EntryCount::Exact(0))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationEntry {
    pub formula: Formula,
    pub witness: Option<Vec<Rational>>,
    pub count: EntryCount,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub entries: Vec<ClassificationEntry>,
    pub exceptions: Vec<Poly>,
    pub delta: usize,
    pub option: ClassifyOption,
    pub warning: Option<String>,
}

impl Classification {
    /// Disjunction of the entries with a positive count.
    pub fn positive_formula(&self) -> Formula {
        Formula::or(
            self.entries
                .iter()
                .filter(|e| e.count.is_positive())
                .map(|e| e.formula.clone())
                .collect(),
        )
    }
}

fn push_locus(out: &mut Vec<Poly>, p: &Poly, t: usize) {
    let p = p.resize(t);
    if p.is_constant() {
        return;
    }
    let sq = primitive_integer(&squarefree_part(&p), &MonomialOrder::grevlex_all(t));
    if !out.contains(&sq) {
        out.push(sq);
    }
}

fn push_ratfunc(out: &mut Vec<Poly>, r: &RatFunc, t: usize) {
    if r.nvars() == 0 {
        return;
    }
    push_locus(out, r.num(), t);
    push_locus(out, r.den(), t);
}

/// Classifies the number of real solutions of `sys` with all `gs ≥ 0`.
pub fn classification(
    sys: &PolySystem,
    gs: &[Poly],
    option: ClassifyOption,
) -> Result<Classification> {
    classify_basis(&parametric_basis(sys)?, gs, option)
}

pub fn classify_basis(
    gb: &GroebnerBasis,
    gs: &[Poly],
    option: ClassifyOption,
) -> Result<Classification> {
    let t = gb.t;
    let (option, warning) = match option {
        ClassifyOption::Cells | ClassifyOption::Minors if t != 1 => {
            let msg = Error::UnsupportedDimension {
                option: option.name().into(),
                t,
            }
            .to_string();
            log::warn!("{msg}; using the signature assertion");
            (ClassifyOption::Assertion, Some(msg))
        }
        o => (o, None),
    };
    let ctx = HermiteContext::new(gb)?;
    let delta = ctx.dim();
    let mut exceptions: Vec<Poly> = Vec::new();
    if delta == 0 {
        for p in gb.w_infty() {
            push_locus(&mut exceptions, &p, t);
        }
        let entry = ClassificationEntry {
            formula: Formula::True,
            witness: None,
            count: EntryCount::Exact(0),
        };
        return Ok(Classification {
            entries: vec![entry],
            exceptions,
            delta,
            option,
            warning,
        });
    }
    let family = ctx.hermite_family(gs);
    for h in &family {
        for p in &h.locus {
            push_locus(&mut exceptions, p, t);
        }
    }
    let a = count_coefficients(gs.len());
    let entries = match option {
        ClassifyOption::Assertion => {
            let assertion = CountAssertion {
                coefficients: a,
                matrices: family,
            };
            vec![ClassificationEntry {
                formula: Formula::CountPositive(Arc::new(assertion)),
                witness: None,
                count: EntryCount::Positive,
            }]
        }
        ClassifyOption::Minors => {
            let mut atoms = Vec::new();
            for (h, c) in family.iter().zip(&a) {
                if !c.is_zero() {
                    for v in minor_atoms(h) {
                        push_ratfunc(&mut atoms, &v, t);
                    }
                }
            }
            for p in &atoms {
                push_locus(&mut exceptions, p, t);
            }
            let mut entries: Vec<ClassificationEntry> = Vec::new();
            for y in open_samples(&exceptions) {
                let count = count_nonneg_solutions(&family, &[y.clone()])?;
                let conds: Vec<Formula> = atoms
                    .iter()
                    .map(|p| {
                        let rel = if p.eval(&[y.clone()]).sign() > 0 {
                            Rel::Gt
                        } else {
                            Rel::Lt
                        };
                        Formula::sign(p.clone(), rel)
                    })
                    .collect();
                let formula = Formula::and(conds);
                match entries.iter().find(|e| e.formula == formula) {
                    Some(e) => debug_assert_eq!(e.count, EntryCount::Exact(count)),
                    None => entries.push(ClassificationEntry {
                        formula,
                        witness: Some(vec![y]),
                        count: EntryCount::Exact(count),
                    }),
                }
            }
            entries
        }
        ClassifyOption::Cells => {
            let mut atoms = Vec::new();
            for (h, c) in family.iter().zip(&a) {
                if !c.is_zero() {
                    if let Some(d) = maximal_principal_minor(h) {
                        push_ratfunc(&mut atoms, &d, t);
                    }
                }
            }
            for p in &atoms {
                push_locus(&mut exceptions, p, t);
            }
            let unis: Vec<UniPoly<Rational>> = exceptions
                .iter()
                .filter_map(|p| UniPoly::from_multi(p, 0))
                .collect();
            let mut prod = UniPoly::constant(int(1));
            for u in &unis {
                if u.degree() > 0 {
                    prod = prod.mul(&u.squarefree());
                }
            }
            let prod = if prod.degree() > 0 {
                prod.squarefree()
            } else {
                prod
            };
            let cell_poly = prod.to_multi(1, 0);
            let mut entries: Vec<ClassificationEntry> = Vec::new();
            let mut index = 0;
            for cell in cell_decomposition(&[prod.clone()]) {
                match cell {
                    Cell1D::Point(_) => index += 1,
                    Cell1D::Open { sample } => {
                        let count = count_nonneg_solutions(&family, &[sample.clone()])?;
                        let formula = if prod.degree() > 0 {
                            Formula::RootCell {
                                poly: cell_poly.clone(),
                                index,
                            }
                        } else {
                            Formula::True
                        };
                        entries.push(ClassificationEntry {
                            formula,
                            witness: Some(vec![sample]),
                            count: EntryCount::Exact(count),
                        });
                    }
                }
            }
            entries
        }
    };
    Ok(Classification {
        entries,
        exceptions,
        delta,
        option,
        warning,
    })
}

/// Leading principal minors, or the characteristic polynomial coefficients
/// when some leading principal minor vanishes identically.
fn minor_atoms(h: &HermiteMatrix) -> Vec<RatFunc> {
    let d = h.size();
    let lpm: Vec<RatFunc> = (1..=d)
        .map(|k| h.entries.leading_principal(k).det())
        .collect();
    if lpm.iter().all(|v| !v.is_zero()) {
        lpm
    } else {
        let cp = h.entries.charpoly();
        cp[..d].iter().filter(|c| !c.is_zero()).cloned().collect()
    }
}

/// Determinant of a non-vanishing principal minor of maximal size.
fn maximal_principal_minor(h: &HermiteMatrix) -> Option<RatFunc> {
    let rho = h.entries.rank();
    if rho == 0 {
        return None;
    }
    let d = h.size();
    let sub = |idx: &[usize]| {
        Matrix::from_fn(idx.len(), idx.len(), |i, j| {
            h.entries[(idx[i], idx[j])].clone()
        })
    };
    // a specialization picks the candidate; the symbolic determinant confirms it
    let y0 = (1..)
        .map(|k| rat(k, 7 * k + 3))
        .find(|y| {
            h.locus.iter().all(|p| !p.eval(&[y.clone()]).is_zero())
                && h.specialize(&[y.clone()]).is_ok()
        })
        .unwrap();
    let spec = h.specialize(&[y0]).ok()?;
    for idx in crate::incidence::subsets(d, rho) {
        let s = Matrix::from_fn(rho, rho, |i, j| spec[(idx[i], idx[j])].clone());
        if !s.det().is_zero() {
            let det = sub(&idx).det();
            if !det.is_zero() {
                return Some(det);
            }
        }
    }
    crate::incidence::subsets(d, rho)
        .into_iter()
        .map(|idx| sub(&idx).det())
        .find(|v| !v.is_zero())
}

/// Rational samples of the open cells cut out by univariate polynomials.
fn open_samples(polys: &[Poly]) -> Vec<Rational> {
    let unis: Vec<UniPoly<Rational>> = polys
        .iter()
        .filter_map(|p| UniPoly::from_multi(p, 0))
        .collect();
    cell_decomposition(&unis)
        .into_iter()
        .filter_map(|c| match c {
            Cell1D::Open { sample } => Some(sample),
            Cell1D::Point(_) => None,
        })
        .collect()
}

/// Settings of the parametric driver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub seed: u64,
    pub option: ClassifyOption,
    pub max_retries: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            seed: 0,
            option: ClassifyOption::Assertion,
            max_retries: 5,
        }
    }
}

/// Diagnostics of one `(r, ι, i)` branch.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchReport {
    pub r: usize,
    pub iota: Vec<usize>,
    pub i: usize,
    pub delta: Option<usize>,
    pub zero_dimensional: bool,
    pub saturation: Option<Vec<i64>>,
    pub entries: usize,
    #[serde(skip)]
    pub millis: u128,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParametricResult {
    pub formula: ParamFormula,
    pub seed: u64,
    pub attempts: usize,
    pub change: Matrix<Rational>,
    pub tau: Vec<Rational>,
    pub branches: Vec<BranchReport>,
    pub option: ClassifyOption,
    /// `None` when every branch was zero-dimensional.
    pub failure: Option<Error>,
    pub warnings: Vec<String>,
}

impl ParametricResult {
    pub fn is_sound(&self) -> bool {
        self.failure.is_none()
    }
}

/// `g_i(y, 0)` for the coefficients of `det(A + λI)`.
pub fn origin_conditions(a: &ParamLinearMatrix) -> Vec<Poly> {
    let asg: Vec<(usize, Rational)> = (0..a.n).map(|k| (a.t + k, Rational::zero())).collect();
    a.psd_matrix_cond()
        .iter()
        .map(|g| g.specialize(&asg).resize(a.t))
        .collect()
}

struct BranchOutcome {
    report: BranchReport,
    classification: Option<Classification>,
    fatal: Option<Error>,
}

fn run_branch(entry: &RealDetEntry, g: &[Poly], option: ClassifyOption) -> BranchOutcome {
    let start = Instant::now();
    let lag = &entry.system;
    let gs: Vec<Poly> = g.iter().map(|p| lag.embed_primal(p)).collect();
    let result = classification(&lag.polys, &gs, option);
    let mut report = BranchReport {
        r: entry.r,
        iota: entry.iota.clone(),
        i: entry.i,
        delta: None,
        zero_dimensional: false,
        saturation: lag.saturation.clone(),
        entries: 0,
        millis: 0,
        error: None,
    };
    let (classification, fatal) = match result {
        Ok(c) => {
            report.delta = Some(c.delta);
            report.zero_dimensional = true;
            report.entries = c.entries.len();
            (Some(c), None)
        }
        Err(e @ Error::NotZeroDimensional(_)) => {
            report.error = Some(e.to_string());
            (None, None)
        }
        Err(e) => {
            report.error = Some(e.to_string());
            (None, Some(e))
        }
    };
    report.millis = start.elapsed().as_millis();
    BranchOutcome {
        report,
        classification,
        fatal,
    }
}

/// Formula for the parameters at which the pencil has a positive
/// semidefinite point, up to the exception locus.
pub fn parametric_solve_lmi(
    a: &ParamLinearMatrix,
    opts: &SolveOptions,
) -> Result<ParametricResult> {
    if a.t == 0 {
        return Err(Error::Invalid(
            "no parameters: use the decision procedure".into(),
        ));
    }
    let t = a.t;
    let g = a.psd_matrix_cond();
    let origin = origin_conditions(a);
    let initial = Formula::and(
        origin[..a.m]
            .iter()
            .map(|p| Formula::sign(p.clone(), Rel::Gt))
            .collect(),
    );
    let mut base_exceptions = Vec::new();
    for p in &origin {
        push_locus(&mut base_exceptions, p, t);
    }
    let sign_polys = &g[..a.m];
    let attempts = opts.max_retries.max(1);
    let mut last: Option<ParametricResult> = None;
    for attempt in 0..attempts {
        let seed = opts.seed.wrapping_add(attempt as u64);
        let (mm, tau) = choose_randomness(seed, a.n);
        let mode = if attempt == 0 {
            SaturationMode::Off
        } else {
            SaturationMode::Rabinowitsch
        };
        let rd = real_det(a, &mm, &tau, mode, seed)?;
        log::info!(
            "attempt {} (seed {seed}): {} branch systems",
            attempt + 1,
            rd.systems.len()
        );
        let outcomes: Vec<BranchOutcome> = rd
            .systems
            .par_iter()
            .map(|e| run_branch(e, sign_polys, opts.option))
            .collect();
        if let Some(e) = outcomes.iter().find_map(|o| o.fatal.clone()) {
            return Err(e);
        }
        let mut exceptions = base_exceptions.clone();
        let mut parts = vec![initial.clone()];
        let mut warnings = Vec::new();
        if mode == SaturationMode::Rabinowitsch {
            warnings.push(NON_GENERIC_WARNING.to_string());
        }
        let mut option_used = opts.option;
        for o in &outcomes {
            if let Some(c) = &o.classification {
                for p in &c.exceptions {
                    push_locus(&mut exceptions, p, t);
                }
                parts.push(c.positive_formula());
                option_used = c.option;
                if let Some(w) = &c.warning {
                    if !warnings.contains(w) {
                        warnings.push(w.clone());
                    }
                }
            }
        }
        let failed: Vec<String> = outcomes
            .iter()
            .filter(|o| o.classification.is_none())
            .map(|o| format!("r={} iota={:?} i={}", o.report.r, o.report.iota, o.report.i))
            .collect();
        let failure = (!failed.is_empty()).then(|| Error::GenericityFailure {
            attempts: attempt + 1,
            detail: format!("not zero-dimensional: {}", failed.join(", ")),
        });
        let result = ParametricResult {
            formula: ParamFormula {
                t,
                formula: Formula::or(parts),
                exceptions,
            },
            seed,
            attempts: attempt + 1,
            change: mm,
            tau,
            branches: outcomes.into_iter().map(|o| o.report).collect(),
            option: option_used,
            failure,
            warnings,
        };
        if result.is_sound() {
            return Ok(result);
        }
        log::warn!(
            "attempt {} failed: {}",
            attempt + 1,
            result.failure.as_ref().unwrap()
        );
        last = Some(result);
    }
    Ok(last.expect("at least one attempt"))
}
