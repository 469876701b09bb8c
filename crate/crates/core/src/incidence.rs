//! Incidence varieties of rank-deficient points and their Lagrange systems.

use crate::arith::{jacobian, Var, VarKind, VarSet};
use crate::error::{Error, Result};
use crate::groebner::PolySystem;
use crate::linalg::Matrix;
use crate::lmi::{change_vars_poly, det_minor_expansion, ParamLinearMatrix};
use crate::scalar::int;
use crate::{Poly, Rational};
use num_integer::binomial;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// `A(y,x)·U = 0` with `U_ι = Id`, over `y, x, u`.
#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceSystem {
    pub r: usize,
    /// 1-based row indices, increasing.
    pub iota: Vec<usize>,
    pub polys: PolySystem,
}

/// `y1..yt, x1..xn, u1_1..um_{m-r}` (row-major).
pub fn incidence_vars(t: usize, n: usize, m: usize, r: usize) -> VarSet {
    let mut v = VarSet::params_primal(t, n);
    for i in 1..=m {
        for j in 1..=m - r {
            v.push(Var::U(i, j));
        }
    }
    v
}

pub fn incidence_system(
    a: &ParamLinearMatrix,
    r: usize,
    iota: &[usize],
) -> Result<IncidenceSystem> {
    let m = a.m;
    let k = m
        .checked_sub(r)
        .filter(|&k| k >= 1)
        .ok_or_else(|| Error::Invalid(format!("rank {r} out of range")))?;
    let mut sorted = iota.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if iota.len() != k || sorted.len() != k || sorted.iter().any(|&i| i == 0 || i > m) {
        return Err(Error::BadIndexSet {
            iota: iota.to_vec(),
            got: iota.len(),
            expected: k,
        });
    }
    let vars = incidence_vars(a.t, a.n, m, r);
    let nv = vars.len();
    let upos = |i: usize, j: usize| a.t + a.n + i * k + j;
    // U with the rows of ι pinned to the identity.
    let u: Vec<Vec<Poly>> = (0..m)
        .map(|i| {
            (0..k)
                .map(|j| match sorted.iter().position(|&s| s == i + 1) {
                    Some(p) => Poly::from_int(nv, (p == j) as i64),
                    None => Poly::var(nv, upos(i, j)),
                })
                .collect()
        })
        .collect();
    let entries = a.entries_in(nv);
    let mut polys = Vec::new();
    for j in 0..k {
        for i in j..m {
            let mut e = Poly::zero(nv);
            for l in 0..m {
                if !entries[i][l].is_zero() && !u[l][j].is_zero() {
                    e = &e + &(&entries[i][l] * &u[l][j]);
                }
            }
            polys.push(e);
        }
    }
    for (p, &row) in sorted.iter().enumerate() {
        for j in 0..k {
            polys.push(&Poly::var(nv, upos(row - 1, j)) - &Poly::from_int(nv, (p == j) as i64));
        }
    }
    // `PolySystem::new` drops zero entries; the counts are kept by building it directly.
    Ok(IncidenceSystem {
        r,
        iota: sorted,
        polys: PolySystem { vars, polys },
    })
}

/// Lagrange system of a base system over `y, x, …` with `x ← Mx` and the
/// prefix `x_1..x_{i-1}` fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct LagrangeSystem {
    pub i: usize,
    pub tau_prefix: Vec<Rational>,
    pub change: Matrix<Rational>,
    pub num_base: usize,
    pub t: usize,
    pub n: usize,
    pub polys: PolySystem,
    /// Coefficients of the minor combination when saturated.
    pub saturation: Option<Vec<i64>>,
}

impl LagrangeSystem {
    /// Image of a polynomial over `y, x` (layout `t + n`): applies `x ← Mx`,
    /// fixes the prefix and embeds into this system's ring.
    pub fn embed_primal(&self, p: &Poly) -> Poly {
        let base = p.resize(self.t + self.n);
        let xs: Vec<usize> = (self.t..self.t + self.n).collect();
        let q = change_vars_poly(&base, &self.change, &xs).expect("invertible change of variables");
        let asg: Vec<(usize, Rational)> = self
            .tau_prefix
            .iter()
            .enumerate()
            .map(|(k, v)| (self.t + k, v.clone()))
            .collect();
        let q = q.specialize(&asg);
        let map: Vec<usize> = (0..self.t + self.n)
            .map(|p| {
                if p < self.t {
                    p
                } else {
                    (p + 1).saturating_sub(self.i).max(self.t)
                }
            })
            .collect();
        q.remap(&map, self.polys.vars.len())
    }
}

pub fn lagrange_system(
    f: &PolySystem,
    i: usize,
    tau: &[Rational],
    mm: &Matrix<Rational>,
) -> Result<LagrangeSystem> {
    let t = f.vars.num_params();
    let xs = f.vars.indices_of_kind(VarKind::Primal);
    let n = xs.len();
    if i == 0 || i > n + 1 || tau.len() < i - 1 {
        return Err(Error::Invalid(format!("projection index {i} out of range")));
    }
    debug_assert_eq!(xs, (t..t + n).collect::<Vec<_>>());
    let prefix: Vec<Rational> = tau[..i - 1].to_vec();
    let asg: Vec<(usize, Rational)> = prefix
        .iter()
        .enumerate()
        .map(|(k, v)| (t + k, v.clone()))
        .collect();
    let map: Vec<usize> = (0..f.vars.len())
        .map(|p| {
            if p < t {
                p
            } else if p < t + i - 1 {
                0
            } else {
                p - (i - 1)
            }
        })
        .collect();
    let mut base = Vec::with_capacity(f.polys.len());
    for g in &f.polys {
        let h = change_vars_poly(g, mm, &xs)?.specialize(&asg);
        // an identically zero equation would leave its multiplier free
        if !h.is_zero() {
            base.push(h);
        }
    }
    let nb = base.len();
    let mut vars = VarSet::params(t);
    for k in i..=n {
        vars.push(Var::X(k));
    }
    let rest: Vec<usize> = (t + n..f.vars.len()).collect();
    for &p in &rest {
        vars.push(f.vars.get(p));
    }
    let first_lambda = vars.len();
    for k in 1..=nb {
        vars.push(Var::Lambda(k));
    }
    let nv = vars.len();
    let base: Vec<Poly> = base.iter().map(|h| h.remap(&map, nv)).collect();
    let diff_vars: Vec<usize> = (t..first_lambda).collect();
    let jac = jacobian(&base, &diff_vars);
    let mut polys = base;
    for (c, &_v) in diff_vars.iter().enumerate() {
        let mut e = Poly::from_int(nv, -((c == 0) as i64));
        for k in 0..nb {
            if !jac[k][c].is_zero() {
                e = &e + &(&Poly::var(nv, first_lambda + k) * &jac[k][c]);
            }
        }
        polys.push(e);
    }
    Ok(LagrangeSystem {
        i,
        tau_prefix: prefix,
        change: mm.clone(),
        num_base: nb,
        t,
        n,
        polys: PolySystem { vars, polys },
        saturation: None,
    })
}

/// Attached to answers obtained after saturation. Real points at
/// singularities of an incidence variety satisfy no critical point equation,
/// so a negative answer may be wrong there.
pub const NON_GENERIC_WARNING: &str =
    "non-generic pencil: positive-dimensional branches were saturated; points at singularities of incidence varieties may be missed";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SaturationMode {
    Off,
    Rabinowitsch,
}

/// Pairs `(rows, cols)` of `r`-subsets with `rows ≤ cols`, lexicographic.
fn minor_index_sets(m: usize, r: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let subs = subsets(m, r);
    let mut out = Vec::new();
    for a in 0..subs.len() {
        for b in a..subs.len() {
            out.push((subs[a].clone(), subs[b].clone()));
        }
    }
    out
}

/// All `k`-subsets of `0..m` in lexicographic order.
pub fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in start..m {
            cur.push(s);
            rec(s + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Appends `z·h − 1` with `h` a random combination of the `r×r` minors of
/// `entries` (given in the ring of `sys`).
pub fn saturate_rank_defect(
    sys: &PolySystem,
    entries: &[Vec<Poly>],
    r: usize,
    mode: SaturationMode,
    rng: &mut impl Rng,
) -> (PolySystem, Option<Vec<i64>>) {
    if mode == SaturationMode::Off || r == 0 {
        return (sys.clone(), None);
    }
    let mut vars = sys.vars.clone();
    let z = vars.push(Var::Z);
    let nv = vars.len();
    let mut h = Poly::zero(nv);
    let mut cs = Vec::new();
    for (rows, cols) in minor_index_sets(entries.len(), r) {
        let c: i64 = loop {
            let c = rng.gen_range(-5i64..=5);
            if c != 0 {
                break c;
            }
        };
        cs.push(c);
        let sub: Vec<Vec<Poly>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| entries[i][j].resize(nv)).collect())
            .collect();
        h = &h + &det_minor_expansion(&sub, nv).scale(&int(c));
    }
    let mut polys: Vec<Poly> = sys.polys.iter().map(|p| p.resize(nv)).collect();
    polys.push(&(&Poly::var(nv, z) * &h) - &Poly::one(nv));
    (PolySystem { vars, polys }, Some(cs))
}

/// One candidate system of the enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct RealDetEntry {
    pub r: usize,
    pub iota: Vec<usize>,
    pub i: usize,
    pub system: LagrangeSystem,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealDetOutput {
    pub systems: Vec<RealDetEntry>,
    pub change: Matrix<Rational>,
    pub tau: Vec<Rational>,
}

/// `n − binom(m−r+1, 2)`.
pub fn expected_fiber_dim(m: usize, n: usize, r: usize) -> i64 {
    n as i64 - binomial(m - r + 1, 2) as i64
}

pub fn real_det(
    a: &ParamLinearMatrix,
    mm: &Matrix<Rational>,
    tau: &[Rational],
    mode: SaturationMode,
    seed: u64,
) -> Result<RealDetOutput> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5a7u64);
    let mut systems = Vec::new();
    for r in 0..a.m {
        let d = expected_fiber_dim(a.m, a.n, r);
        if d < 0 {
            continue;
        }
        for iota in subsets(a.m, a.m - r) {
            let iota: Vec<usize> = iota.iter().map(|s| s + 1).collect();
            let inc = incidence_system(a, r, &iota)?;
            for i in 1..=(d as usize + 1) {
                let mut lag = lagrange_system(&inc.polys, i, tau, mm)?;
                if mode == SaturationMode::Rabinowitsch && r > 0 {
                    let nv = a.t + a.n;
                    let entries: Vec<Vec<Poly>> = a
                        .entries_in(nv)
                        .iter()
                        .map(|row| row.iter().map(|e| lag.embed_primal(e)).collect())
                        .collect();
                    let (sys, cs) = saturate_rank_defect(&lag.polys, &entries, r, mode, &mut rng);
                    lag.polys = sys;
                    lag.saturation = cs;
                }
                systems.push(RealDetEntry {
                    r,
                    iota: iota.clone(),
                    i,
                    system: lag,
                });
            }
        }
    }
    Ok(RealDetOutput {
        systems,
        change: mm.clone(),
        tau: tau.to_vec(),
    })
}

/// Incidence systems of expected dimension at most zero, without projection;
/// entries carry `i = 0`. Real points of negative expected dimension only
/// exist for non-generic pencils.
pub fn incidence_only_systems(
    a: &ParamLinearMatrix,
    mode: SaturationMode,
    seed: u64,
) -> Result<Vec<RealDetEntry>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x10e7u64);
    let mut systems = Vec::new();
    for r in 0..a.m {
        if expected_fiber_dim(a.m, a.n, r) > 0 {
            continue;
        }
        for iota in subsets(a.m, a.m - r) {
            let iota: Vec<usize> = iota.iter().map(|s| s + 1).collect();
            let inc = incidence_system(a, r, &iota)?;
            let nv = a.t + a.n;
            let entries: Vec<Vec<Poly>> = a
                .entries_in(nv)
                .iter()
                .map(|row| row.iter().map(|e| e.resize(inc.polys.vars.len())).collect())
                .collect();
            let (polys, saturation) = saturate_rank_defect(&inc.polys, &entries, r, mode, &mut rng);
            let system = LagrangeSystem {
                i: 1,
                tau_prefix: vec![],
                change: Matrix::identity(a.n),
                num_base: inc.polys.polys.len(),
                t: a.t,
                n: a.n,
                polys,
                saturation,
            };
            systems.push(RealDetEntry {
                r,
                iota,
                i: 0,
                system,
            });
        }
    }
    Ok(systems)
}

/// Invertible integer `M` with entries in `[−5, 5]` and distinct integer `τ`.
pub fn choose_randomness(seed: u64, n: usize) -> (Matrix<Rational>, Vec<Rational>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mm = loop {
        let cand = Matrix::from_fn(n, n, |_, _| int(rng.gen_range(-5i64..=5)));
        if n == 0 || !cand.det().is_zero() {
            break cand;
        }
    };
    let bound = 7.max(n as i64);
    let mut pool: Vec<i64> = (-bound..=bound).collect();
    pool.shuffle(&mut rng);
    let tau = pool[..n].iter().map(|&v| int(v)).collect();
    (mm, tau)
}

/// Upper bound on the number of systems produced by [`real_det`].
pub fn real_det_count(m: usize, n: usize) -> usize {
    (0..m)
        .filter_map(|r| {
            let d = expected_fiber_dim(m, n, r);
            (d >= 0).then(|| binomial(m, m - r) * (d as usize + 1))
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{format_poly, parse_poly, Monomial};
    use proptest::prelude::*;

    fn lmi(t: usize, n: usize, rows: &[&[&str]]) -> ParamLinearMatrix {
        let v = VarSet::params_primal(t, n);
        let e: Vec<Vec<Poly>> = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_poly(s, &v).unwrap()).collect())
            .collect();
        ParamLinearMatrix::from_entries(t, n, &e).unwrap()
    }

    fn show(s: &PolySystem) -> Vec<String> {
        s.polys.iter().map(|p| format_poly(p, &s.vars)).collect()
    }

    #[test]
    fn incidence_examples() {
        let a = lmi(3, 0, &[&["y1", "y2"], &["y2", "y3"]]);
        let inc = incidence_system(&a, 1, &[1]).unwrap();
        assert_eq!(
            show(&inc.polys),
            vec!["y2*u2_1 + y1", "y3*u2_1 + y2", "u1_1 - 1"]
        );
        let inc = incidence_system(&a, 1, &[2]).unwrap();
        assert_eq!(
            show(&inc.polys),
            vec!["y1*u1_1 + y2", "y2*u1_1 + y3", "u2_1 - 1"]
        );
        let inc = incidence_system(&a, 0, &[1, 2]).unwrap();
        assert_eq!(inc.polys.vars.indices_of_kind(VarKind::Incidence).len(), 4);
        assert_eq!(&show(&inc.polys)[..3], &["y1", "y2", "y3"]);
        assert!(matches!(
            incidence_system(&a, 1, &[1, 2]),
            Err(Error::BadIndexSet { .. })
        ));
    }

    #[test]
    fn incidence_counts() {
        for m in 1..5 {
            let rows: Vec<Vec<Poly>> = (0..m)
                .map(|_| (0..m).map(|_| Poly::one(1)).collect())
                .collect();
            let a = ParamLinearMatrix::from_entries(0, 1, &rows).unwrap();
            for r in 0..m {
                let k = m - r;
                for iota in subsets(m, k) {
                    let iota: Vec<usize> = iota.iter().map(|s| s + 1).collect();
                    let inc = incidence_system(&a, r, &iota).unwrap();
                    assert_eq!(inc.polys.polys.len(), m * k - binomial(k, 2) + k * k);
                    assert_eq!(inc.polys.vars.len(), 1 + m * k);
                }
            }
        }
    }

    #[test]
    fn lagrange_examples() {
        let v = VarSet::params_primal(0, 2);
        let f = PolySystem::new(v.clone(), vec![parse_poly("x1^2 + x2^2 - 1", &v).unwrap()]);
        let lag = lagrange_system(&f, 1, &[], &Matrix::identity(2)).unwrap();
        assert_eq!(
            show(&lag.polys),
            vec!["x1^2 + x2^2 - 1", "2*x1*l1 - 1", "2*x2*l1"]
        );
        let lag = lagrange_system(&f, 2, &[int(0)], &Matrix::identity(2)).unwrap();
        assert_eq!(show(&lag.polys), vec!["x2^2 - 1", "2*x2*l1 - 1"]);
        let v1 = VarSet::params_primal(0, 1);
        let f = PolySystem::new(v1.clone(), vec![parse_poly("x1 - 1", &v1).unwrap()]);
        let lag = lagrange_system(&f, 1, &[], &Matrix::identity(1)).unwrap();
        assert_eq!(show(&lag.polys), vec!["x1 - 1", "l1 - 1"]);
    }

    #[test]
    fn lagrange_is_square() {
        let a = lmi(
            1,
            3,
            &[
                &["1 + x1", "x2", "y1"],
                &["x2", "x3", "1"],
                &["y1", "1", "x1 - x3"],
            ],
        );
        let (mm, tau) = choose_randomness(3, 3);
        for r in 0..3 {
            for iota in subsets(3, 3 - r) {
                let iota: Vec<usize> = iota.iter().map(|s| s + 1).collect();
                let inc = incidence_system(&a, r, &iota).unwrap();
                for i in 1..=3 {
                    let lag = lagrange_system(&inc.polys, i, &tau, &mm).unwrap();
                    let nf = inc.polys.polys.len();
                    let nu = 3 * (3 - r);
                    assert_eq!(lag.polys.polys.len(), nf + (3 - (i - 1)) + nu);
                    assert_eq!(lag.polys.vars.len() - 1, (3 - (i - 1)) + nu + nf);
                }
            }
        }
    }

    #[test]
    fn embed_matches_direct_substitution() {
        let v = VarSet::params_primal(1, 2);
        let g = parse_poly("y1*x1^2 + x2 - 3", &v).unwrap();
        let f = PolySystem::new(v.clone(), vec![g.clone()]);
        let mm = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(0), int(1)]]);
        let lag = lagrange_system(&f, 2, &[int(5)], &mm).unwrap();
        assert_eq!(lag.embed_primal(&g), lag.polys.polys[0]);
        assert_eq!(
            format_poly(&lag.polys.polys[0], &lag.polys.vars),
            "4*y1*x2^2 + 20*y1*x2 + 25*y1 + x2 - 3"
        );
    }

    #[test]
    fn saturation_examples() {
        let a = lmi(3, 0, &[&["y1", "y2"], &["y2", "y3"]]);
        let inc = incidence_system(&a, 1, &[1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let e = a.entries_in(inc.polys.vars.len());
        let (same, none) = saturate_rank_defect(&inc.polys, &e, 1, SaturationMode::Off, &mut rng);
        assert_eq!((same, none), (inc.polys.clone(), None));
        let (sat, cs) =
            saturate_rank_defect(&inc.polys, &e, 1, SaturationMode::Rabinowitsch, &mut rng);
        let cs = cs.unwrap();
        assert_eq!(cs.len(), 3);
        let nv = sat.vars.len();
        let z = Poly::var(nv, nv - 1);
        let h = Poly::from_terms(nv, (0..3).map(|k| (Monomial::var(nv, k, 1), int(cs[k]))));
        assert_eq!(sat.polys.last().unwrap(), &(&(&z * &h) - &Poly::one(nv)));
        let zero = lmi(0, 0, &[&["0", "0"], &["0", "0"]]);
        let inc = incidence_system(&zero, 1, &[1]).unwrap();
        let e = zero.entries_in(inc.polys.vars.len());
        let (sat, _) =
            saturate_rank_defect(&inc.polys, &e, 1, SaturationMode::Rabinowitsch, &mut rng);
        assert_eq!(
            sat.polys.last().unwrap(),
            &Poly::from_int(sat.vars.len(), -1)
        );
    }

    #[test]
    fn enumeration_counts() {
        let a = lmi(1, 1, &[&["1", "x1"], &["x1", "y1"]]);
        let (mm, tau) = choose_randomness(0, 1);
        let out = real_det(&a, &mm, &tau, SaturationMode::Off, 0).unwrap();
        assert_eq!(out.systems.len(), 2);
        assert!(out.systems.iter().all(|s| s.r == 1 && s.i == 1));
        let a = lmi(0, 1, &[&["x1"]]);
        let out = real_det(&a, &Matrix::identity(1), &[int(0)], SaturationMode::Off, 0).unwrap();
        assert_eq!(out.systems.len(), 1);
        assert_eq!(out.systems[0].r, 0);
        let n = 6;
        let rows: Vec<Vec<Poly>> = vec![
            vec![Poly::var(n, 0), Poly::one(n)],
            vec![Poly::one(n), Poly::var(n, 1)],
        ];
        let a = ParamLinearMatrix::from_entries(0, n, &rows).unwrap();
        let (mm, tau) = choose_randomness(2, n);
        let out = real_det(&a, &mm, &tau, SaturationMode::Off, 0).unwrap();
        assert_eq!(out.systems.iter().filter(|s| s.r == 1).count(), 2 * n);
        assert_eq!(out.systems.iter().filter(|s| s.r == 0).count(), n - 2);
        assert_eq!(out.systems.len(), real_det_count(2, n));
    }

    #[test]
    fn randomness_contract() {
        let (m1, t1) = choose_randomness(0, 3);
        assert_eq!(choose_randomness(0, 3), (m1.clone(), t1.clone()));
        assert_ne!(choose_randomness(1, 3).0, m1);
        for seed in 0..50 {
            let (mm, tau) = choose_randomness(seed, 4);
            assert!(!mm.det().is_zero());
            let mut s = tau.clone();
            s.sort();
            s.dedup();
            assert_eq!(s.len(), 4);
            assert!(tau.iter().all(|v| *v <= int(7) && *v >= int(-7)));
        }
    }

    proptest! {
        #[test]
        fn specialization_commutes(e in prop::collection::vec(-3i64..4, 6), y in -5i64..6) {
            let v = VarSet::params_primal(1, 1);
            let yv = Poly::var(2, 0);
            let xv = Poly::var(2, 1);
            let ent = |k: usize| &(&yv.scale(&int(e[k])) + &xv.scale(&int(e[k + 3]))) + &Poly::one(2);
            let rows = vec![vec![ent(0), ent(1)], vec![ent(1), ent(2)]];
            let a = ParamLinearMatrix::from_entries(1, 1, &rows).unwrap();
            let _ = v;
            let sa = a.specialize_params(&[int(y)]);
            for iota in [[1usize], [2]] {
                let lhs = incidence_system(&sa, 1, &iota).unwrap();
                let rhs = incidence_system(&a, 1, &iota).unwrap();
                let spec: Vec<Poly> = rhs.polys.polys.iter()
                    .map(|p| p.specialize(&[(0, int(y))]).remap(&[0, 0, 1, 2], 3))
                    .collect();
                prop_assert_eq!(lhs.polys.polys, spec);
            }
        }
    }
}
