//! Exact feasibility of non-parametric pencils.

use crate::error::{Error, Result};
use crate::groebner::parametric_basis;
use crate::hermite::HermiteContext;
use crate::incidence::{
    choose_randomness, incidence_only_systems, real_det, RealDetEntry, SaturationMode,
    NON_GENERIC_WARNING,
};
use crate::lmi::ParamLinearMatrix;
use crate::scalar::OrderedField;
use crate::sign::count_nonneg_solutions;
use crate::Rational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointStatus {
    Interior,
    Boundary,
    Outside,
}

/// Position of `x` relative to the spectrahedron of a non-parametric pencil.
pub fn check_point(a: &ParamLinearMatrix, x: &[Rational]) -> Result<PointStatus> {
    if a.t != 0 || x.len() != a.n {
        return Err(Error::Invalid(format!(
            "expected t = 0 and {} coordinates",
            a.n
        )));
    }
    let g = a.psd_matrix_cond();
    let signs: Vec<i8> = g[..a.m].iter().map(|p| p.eval(x).sign()).collect();
    Ok(if signs.iter().all(|&s| s > 0) {
        PointStatus::Interior
    } else if signs.iter().all(|&s| s >= 0) {
        PointStatus::Boundary
    } else {
        PointStatus::Outside
    })
}

/// How a decision was reached.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecideReport {
    pub feasible: bool,
    /// `origin` or `boundary`.
    pub step: &'static str,
    /// `(r, ι, i)` of a branch with a non-negative solution.
    pub witness_branch: Option<(usize, Vec<usize>, usize)>,
    pub seed: u64,
    pub attempts: usize,
    pub branches: usize,
}

enum BranchCount {
    Count(u64),
    Degenerate,
}

fn branch_count(entry: &RealDetEntry, g: &[crate::Poly]) -> Result<BranchCount> {
    let lag = &entry.system;
    let gb = match parametric_basis(&lag.polys) {
        Ok(gb) => gb,
        Err(Error::NotZeroDimensional(_)) => return Ok(BranchCount::Degenerate),
        Err(e) => return Err(e),
    };
    let ctx = match HermiteContext::new(&gb) {
        Ok(c) => c,
        Err(Error::NotZeroDimensional(_)) => return Ok(BranchCount::Degenerate),
        Err(e) => return Err(e),
    };
    if ctx.dim() == 0 {
        return Ok(BranchCount::Count(0));
    }
    let gs: Vec<_> = g.iter().map(|p| lag.embed_primal(p)).collect();
    Ok(BranchCount::Count(count_nonneg_solutions(
        &ctx.hermite_family(&gs),
        &[],
    )?))
}

/// True iff the spectrahedron of `a` (with `t = 0`) is nonempty.
pub fn solve_lmi(a: &ParamLinearMatrix, seed: u64) -> Result<bool> {
    Ok(solve_lmi_report(a, seed, 5)?.feasible)
}

pub fn solve_lmi_report(
    a: &ParamLinearMatrix,
    seed: u64,
    max_retries: usize,
) -> Result<DecideReport> {
    if a.t != 0 {
        return Err(Error::Invalid("the decision procedure needs t = 0".into()));
    }
    let g = a.psd_matrix_cond();
    let origin = vec![Rational::zero(); a.n];
    if g[..a.m].iter().all(|p| p.eval(&origin).sign() >= 0) {
        return Ok(DecideReport {
            feasible: true,
            step: "origin",
            witness_branch: None,
            seed,
            attempts: 0,
            branches: 0,
        });
    }
    let attempts = max_retries.max(1);
    let mut failed = Vec::new();
    for attempt in 0..attempts {
        let s = seed.wrapping_add(attempt as u64);
        let (mm, tau) = choose_randomness(s, a.n);
        let mode = if attempt == 0 {
            SaturationMode::Off
        } else {
            SaturationMode::Rabinowitsch
        };
        let mut systems = real_det(a, &mm, &tau, mode, s)?.systems;
        // finite incidence varieties are counted directly, which also covers
        // points where the critical point equations are not transversal
        systems.extend(incidence_only_systems(a, SaturationMode::Off, s)?);
        if attempt > 0 {
            systems.extend(incidence_only_systems(a, mode, s)?);
        }
        let counts: Vec<Result<BranchCount>> = systems
            .par_iter()
            .map(|e| branch_count(e, &g[..a.m]))
            .collect();
        failed.clear();
        for (e, c) in systems.iter().zip(counts) {
            match c? {
                BranchCount::Count(k) if k > 0 => {
                    return Ok(DecideReport {
                        feasible: true,
                        step: "boundary",
                        witness_branch: Some((e.r, e.iota.clone(), e.i)),
                        seed: s,
                        attempts: attempt + 1,
                        branches: systems.len(),
                    });
                }
                BranchCount::Count(_) => {}
                BranchCount::Degenerate if e.i == 0 => {}
                BranchCount::Degenerate => {
                    failed.push(format!("r={} iota={:?} i={}", e.r, e.iota, e.i))
                }
            }
        }
        if failed.is_empty() {
            if attempt > 0 {
                log::warn!("{NON_GENERIC_WARNING}");
            }
            return Ok(DecideReport {
                feasible: false,
                step: "boundary",
                witness_branch: None,
                seed: s,
                attempts: attempt + 1,
                branches: systems.len(),
            });
        }
        log::warn!(
            "attempt {} (seed {s}): degenerate branches {}",
            attempt + 1,
            failed.join(", ")
        );
    }
    Err(Error::GenericityFailure {
        attempts,
        detail: format!("not zero-dimensional: {}", failed.join(", ")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, VarSet};
    use crate::scalar::int;
    use crate::univariate::feasibility_oracle_1d;
    use crate::Poly;
    use proptest::prelude::*;

    fn lmi(n: usize, rows: &[&[&str]]) -> ParamLinearMatrix {
        let v = VarSet::params_primal(0, n);
        let e: Vec<Vec<Poly>> = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_poly(s, &v).unwrap()).collect())
            .collect();
        ParamLinearMatrix::from_entries(0, n, &e).unwrap()
    }

    #[test]
    fn examples() {
        assert!(solve_lmi(&lmi(1, &[&["1", "x1"], &["x1", "1"]]), 0).unwrap());
        assert!(!solve_lmi(&lmi(1, &[&["1", "x1"], &["x1", "-1"]]), 0).unwrap());
        let r = solve_lmi_report(&lmi(1, &[&["x1", "1"], &["1", "x1"]]), 0, 5).unwrap();
        assert!(r.feasible);
        assert_eq!(r.step, "boundary");
    }

    #[test]
    fn points() {
        let id = lmi(1, &[&["1", "0"], &["0", "1"]]);
        assert_eq!(check_point(&id, &[int(0)]).unwrap(), PointStatus::Interior);
        let a = lmi(1, &[&["x1", "0"], &["0", "1"]]);
        assert_eq!(check_point(&a, &[int(0)]).unwrap(), PointStatus::Boundary);
        assert_eq!(check_point(&a, &[int(-1)]).unwrap(), PointStatus::Outside);
    }

    #[test]
    fn two_variables() {
        // disc x1^2 + x2^2 <= 1 shifted away from the origin
        let a = lmi(2, &[&["1 + x1 - 3", "x2"], &["x2", "1 - x1 + 3"]]);
        assert!(solve_lmi(&a, 1).unwrap());
        let b = lmi(2, &[&["x1", "1"], &["1", "-x1 - 1"]]);
        assert!(!solve_lmi(&b, 1).unwrap());
    }

    fn random_lmi(m: usize, vals: &[i64]) -> ParamLinearMatrix {
        let v = VarSet::params_primal(0, 1);
        let mut rows = vec![vec![Poly::zero(2); m]; m];
        let mut k = 0;
        for i in 0..m {
            for j in i..m {
                let s = format!("{} + {}*x1", vals[k], vals[k + 1]);
                k += 2;
                let p = parse_poly(&s, &v).unwrap();
                rows[i][j] = p.clone();
                rows[j][i] = p;
            }
        }
        ParamLinearMatrix::from_entries(0, 1, &rows).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn agrees_with_univariate_oracle(m in 1usize..4, vals in prop::collection::vec(-3i64..4, 12)) {
            let a = random_lmi(m, &vals);
            let g: Vec<_> = a.psd_matrix_cond()[..m]
                .iter()
                .map(|p| crate::univariate::UniPoly::from_multi(p, 0).unwrap())
                .collect();
            prop_assert_eq!(solve_lmi(&a, 0).unwrap(), feasibility_oracle_1d(&g));
        }
    }
}
