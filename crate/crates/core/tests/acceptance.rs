//! Acceptance run: one PASS/FAIL line per criterion.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use plmi_core::arith::{format_poly, parse_poly, Monomial, VarSet};
use plmi_core::bounds::{
    delta_bar_star, mbb_delta, theta_cardinality, theta_cardinality_bound, BoundInput,
};
use plmi_core::classify::{parametric_solve_lmi, SolveOptions};
use plmi_core::decide::solve_lmi;
use plmi_core::formula::Truth;
use plmi_core::groebner::{parametric_basis, parametric_basis_with_budget, PolySystem};
use plmi_core::hermite::{specialize_hermite, HermiteContext};
use plmi_core::io::read_instance;
use plmi_core::lmi::{sos_to_lmi, ParamLinearMatrix};
use plmi_core::scalar::{int, rat};
use plmi_core::sign::count_nonneg_solutions;
use plmi_core::univariate::{feasibility_oracle_1d, UniPoly};
use plmi_core::{Poly, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use std::path::PathBuf;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn instances() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances")
}

fn load(name: &str) -> ParamLinearMatrix {
    read_instance(&std::fs::read_to_string(instances().join(name)).unwrap()).unwrap()
}

fn grid_201() -> Vec<Rational> {
    (0..=200).map(|k| int(-5) + rat(k, 20)).collect()
}

/// Classifies `name` and compares with `expected` on the 201-point grid.
/// Returns the serialized formula for the determinism check.
fn end_to_end(name: &str, expected: impl Fn(&Rational) -> bool) -> (Outcome, String) {
    let a = load(name);
    let start = Instant::now();
    let res = match parametric_solve_lmi(&a, &SolveOptions::default()) {
        Ok(r) => r,
        Err(e) => return (Err(e.to_string()), String::new()),
    };
    let elapsed = start.elapsed();
    let serialized = serde_json::to_string(&res.formula.to_json()).unwrap();
    let mut bad = Vec::new();
    let mut skipped = 0;
    for y in grid_201() {
        match res.formula.evaluate(&[y.clone()]) {
            Truth::Exception => skipped += 1,
            t => {
                if (t == Truth::True) != expected(&y) {
                    bad.push(y.to_string());
                }
            }
        }
    }
    let detail = format!(
        "{} points compared, {skipped} on exceptions, {elapsed:.2?}",
        201 - skipped
    );
    let out = if !res.is_sound() {
        Err(format!("unsound result: {:?}", res.failure))
    } else if !bad.is_empty() {
        Err(format!("disagreements at {bad:?}; {detail}"))
    } else if elapsed >= Duration::from_secs(60) {
        Err(format!("too slow: {detail}"))
    } else {
        Ok(detail)
    };
    (out, serialized)
}

fn roots_poly(roots: &[Rational], v: &VarSet) -> Poly {
    let x = parse_poly("x1", v).unwrap();
    roots.iter().fold(Poly::one(v.len()), |acc, r| {
        &acc * &(&x - &Poly::constant(v.len(), r.clone()))
    })
}

fn random_uni(rng: &mut ChaCha8Rng, deg: usize, v: &VarSet) -> Poly {
    let x = parse_poly("x1", v).unwrap();
    (0..=deg).rev().fold(Poly::zero(v.len()), |acc, _| {
        &(&acc * &x) + &Poly::from_int(v.len(), rng.gen_range(-4i64..=4))
    })
}

fn distinct_roots(rng: &mut ChaCha8Rng, k: usize) -> Vec<Rational> {
    let mut roots: Vec<Rational> = Vec::new();
    while roots.len() < k {
        let r = rat(rng.gen_range(-12i64..=12), rng.gen_range(1i64..=3));
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    roots
}

fn sign(v: &Rational) -> i64 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn criterion_3() -> Outcome {
    let v = VarSet::params_primal(0, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..200 {
        let k = rng.gen_range(1..=6);
        let roots = distinct_roots(&mut rng, k);
        let dg = rng.gen_range(0..=3);
        let g = random_uni(&mut rng, dg, &v);
        let sys = PolySystem::new(v.clone(), vec![roots_poly(&roots, &v)]);
        let ctx = HermiteContext::new(&parametric_basis(&sys).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let sig = ctx
            .hermite(&g)
            .specialize(&[])
            .map_err(|e| e.to_string())?
            .signature()
            .map_err(|e| e.to_string())?;
        let values: Vec<i64> = roots.iter().map(|r| sign(&g.eval(&[r.clone()]))).collect();
        let rank = values.iter().filter(|&&s| s != 0).count();
        let taq: i64 = values.iter().sum();
        if sig.rank != rank || sig.signature != taq {
            return Err(format!(
                "case {case}: roots {roots:?}, g = {}",
                format_poly(&g, &v)
            ));
        }
    }
    Ok("200 systems".into())
}

fn criterion_4() -> Outcome {
    let v = VarSet::params_primal(0, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for case in 0..100 {
        let k = rng.gen_range(1..=6);
        let roots = distinct_roots(&mut rng, k);
        let s = case % 3;
        let gs: Vec<Poly> = (0..s)
            .map(|_| {
                let dg = rng.gen_range(0..=3);
                random_uni(&mut rng, dg, &v)
            })
            .collect();
        let sys = PolySystem::new(v.clone(), vec![roots_poly(&roots, &v)]);
        let ctx = HermiteContext::new(&parametric_basis(&sys).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let got =
            count_nonneg_solutions(&ctx.hermite_family(&gs), &[]).map_err(|e| e.to_string())?;
        let want = roots
            .iter()
            .filter(|r| gs.iter().all(|g| !g.eval(&[(*r).clone()]).is_negative()))
            .count() as u64;
        if got != want {
            return Err(format!("case {case}: counted {got}, expected {want}"));
        }
    }
    Ok("100 cases, s <= 2".into())
}

/// Zero-dimensional systems with leading coefficients in the parameters.
fn random_parametric_system(rng: &mut ChaCha8Rng, t: usize) -> (PolySystem, Poly) {
    let v = VarSet::params_primal(t, 2);
    let nv = v.len();
    let y = |k: usize| Poly::var(nv, k);
    let x1 = Poly::var(nv, t);
    let x2 = Poly::var(nv, t + 1);
    let lin_y = |rng: &mut ChaCha8Rng| {
        let c0 = rng.gen_range(-3i64..=3);
        (0..t).fold(Poly::from_int(nv, c0), |acc, k| {
            &acc + &y(k).scale(&int(rng.gen_range(-2i64..=2)))
        })
    };
    let (a, b) = [
        (1u32, 1u32),
        (2, 1),
        (3, 1),
        (2, 2),
        (3, 2),
        (1, 3),
        (6, 1),
        (1, 5),
    ][rng.gen_range(0..8)];
    let lc = &Poly::from_int(nv, 2) + &lin_y(rng);
    let lc = if lc.is_zero() { Poly::one(nv) } else { lc };
    let mut f1 = &lc * &x1.pow(a);
    for e in 0..a {
        f1 = &f1 + &(&lin_y(rng) * &x1.pow(e));
    }
    let mut f2 = x2.pow(b);
    for e in 0..b {
        let c = &lin_y(rng) + &x1.scale(&int(rng.gen_range(-2i64..=2)));
        f2 = &f2 + &(&c * &x2.pow(e));
    }
    let g = &(&x1 + &x2.scale(&int(rng.gen_range(-2i64..=2)))) + &lin_y(rng);
    (PolySystem::new(v, vec![f1, f2]), g)
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 50 {
        attempts += 1;
        if attempts > 500 {
            return Err(format!("only {checked} systems generated"));
        }
        let t = 1 + checked % 2;
        let (sys, g) = random_parametric_system(&mut rng, t);
        let Ok(gb) = parametric_basis_with_budget(&sys, 2_000) else {
            continue;
        };
        let Ok(ctx) = HermiteContext::new(&gb) else {
            continue;
        };
        if ctx.dim() == 0 || ctx.dim() > 6 {
            continue;
        }
        let h = ctx.hermite(&g);
        let locus: Vec<Poly> = h.locus.iter().chain(gb.w_infty().iter()).cloned().collect();
        let Some(y) = (0..100).find_map(|_| {
            let y: Vec<Rational> = (0..t).map(|_| int(rng.gen_range(-9i64..=9))).collect();
            locus.iter().all(|p| !p.eval(&y).is_zero()).then_some(y)
        }) else {
            continue;
        };
        let special = specialize_hermite(&h, &y).map_err(|e| e.to_string())?;
        let asg: Vec<(usize, Rational)> = y.iter().cloned().enumerate().collect();
        let fresh_sys = sys.specialize_params(&y);
        let fresh_ctx =
            HermiteContext::new(&parametric_basis(&fresh_sys).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
        let fresh = fresh_ctx
            .hermite(&g.specialize(&asg))
            .specialize(&y)
            .map_err(|e| e.to_string())?;
        if special != fresh {
            return Err(format!("system {checked} at y = {y:?}"));
        }
        checked += 1;
    }
    Ok("50 systems".into())
}

fn criterion_6() -> Outcome {
    let v = VarSet::params_primal(0, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut feasible = 0;
    for case in 0..100 {
        let m = rng.gen_range(1..=3usize);
        let mut rows = vec![vec![Poly::zero(1); m]; m];
        for i in 0..m {
            for j in i..m {
                let p = parse_poly(
                    &format!("{} + {}*x1", rng.gen_range(-3..=3), rng.gen_range(-3..=3)),
                    &v,
                )
                .unwrap();
                rows[i][j] = p.clone();
                rows[j][i] = p;
            }
        }
        let a = ParamLinearMatrix::from_entries(0, 1, &rows).unwrap();
        let g: Vec<UniPoly<Rational>> = a.psd_matrix_cond()[..m]
            .iter()
            .map(|p| UniPoly::from_multi(p, 0).unwrap())
            .collect();
        let want = feasibility_oracle_1d(&g);
        let got = solve_lmi(&a, case).map_err(|e| format!("case {case}: {e}"))?;
        if got != want {
            return Err(format!("case {case}: decided {got}, oracle {want}"));
        }
        feasible += usize::from(want);
    }
    Ok(format!("100 instances, {feasible} feasible"))
}

/// Coefficient extraction from the expanded product of linear forms.
fn mbb_by_expansion(inp: &BoundInput) -> BigInt {
    let (ms, c) = (inp.m_star(), inp.c());
    let th = |k: usize| Poly::var(4, k);
    let lin =
        |coef: [i64; 4]| (0..4).fold(Poly::zero(4), |acc, k| &acc + &th(k).scale(&int(coef[k])));
    let (d, r) = (inp.d as i64, inp.r as i64);
    let p = &(&(&lin([1, d, 1, 0]).pow(ms as u32) * &lin([r, 0, 0, 1]).pow(ms as u32))
        * &lin([0, d - 1, 1, 1]).pow(inp.t as u32))
        * &lin([0, d, 0, 1]).pow(inp.n as u32);
    if c > ms {
        return BigInt::zero();
    }
    let target = Monomial(vec![
        (ms - c) as u32,
        inp.t as u32,
        inp.n as u32,
        (c + ms) as u32,
    ]);
    let coeff = p
        .terms()
        .find(|(m, _)| **m == target)
        .map(|(_, c)| c.clone())
        .unwrap_or_else(Rational::zero);
    let scale = num_traits::pow(BigInt::from(inp.r + 1), c as usize);
    assert!(coeff.is_integer());
    coeff.to_integer() * scale
}

fn criterion_7() -> Outcome {
    let mut n_inputs = 0;
    for m in 1..=3u64 {
        for r in 0..m {
            for d in 1..=2u64 {
                for n in 0..=5u64 {
                    for t in 0..=2u64 {
                        let inp = BoundInput::new(m, r, d, n, t).unwrap();
                        let mbb = mbb_delta(&inp);
                        let oracle = mbb_by_expansion(&inp);
                        if mbb != oracle {
                            return Err(format!("{inp:?}: mbb {mbb}, oracle {oracle}"));
                        }
                        if n > inp.m_star() + t && !mbb.is_zero() {
                            return Err(format!("{inp:?}: nonzero bound beyond m* + t"));
                        }
                        if theta_cardinality(&inp) > theta_cardinality_bound(&inp) {
                            return Err(format!("{inp:?}: |Theta| above its bound"));
                        }
                        if delta_bar_star(&inp) < mbb {
                            return Err(format!("{inp:?}: closed form below the bound"));
                        }
                        n_inputs += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{n_inputs} inputs"))
}

/// `βᵀ W(x) β − p` over `(y, polynomial variables, Gram variables)`.
fn gram_identity(file: &str) -> Result<(), String> {
    let spec: Value =
        serde_json::from_str(&std::fs::read_to_string(instances().join(file)).unwrap()).unwrap();
    let t = spec["t"].as_u64().unwrap() as usize;
    let np = spec["n"].as_u64().unwrap() as usize;
    let vars = VarSet::params_primal(t, np);
    let p = parse_poly(spec["polynomial"].as_str().unwrap(), &vars).unwrap();
    let beta_polys: Vec<Poly> = spec["monomials"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| parse_poly(m.as_str().unwrap(), &vars).unwrap())
        .collect();
    let beta: Vec<Monomial> = beta_polys
        .iter()
        .map(|b| b.terms().next().unwrap().0.clone())
        .collect();
    let a = sos_to_lmi(&p, &vars, &beta).map_err(|e| e.to_string())?;
    let total = t + np + a.n;
    // pencil ring (y, x) into (y, z, x)
    let pencil_map: Vec<usize> = (0..t + a.n)
        .map(|k| if k < t { k } else { k + np })
        .collect();
    let poly_map: Vec<usize> = (0..t + np).collect();
    let mut lhs = Poly::zero(total);
    for i in 0..a.m {
        for j in 0..a.m {
            let w = a.entry_in(i, j, t + a.n).remap(&pencil_map, total);
            let bb = (&beta_polys[i] * &beta_polys[j]).remap(&poly_map, total);
            lhs = &lhs + &(&w * &bb);
        }
    }
    let diff = &lhs - &p.remap(&poly_map, total);
    if diff.is_zero() {
        Ok(())
    } else {
        Err(format!("{file}: identity fails"))
    }
}

fn criterion_8() -> Outcome {
    for f in [
        "motzkin.poly.json",
        "motzkin_perturbed.poly.json",
        "motzkin_slice.poly.json",
    ] {
        gram_identity(f)?;
    }
    let mut details = Vec::new();
    let runs: [(&str, fn(&Rational) -> bool); 2] = [
        ("motzkin_perturbed_gram.json", |y| *y >= int(3)),
        ("motzkin_slice_gram.json", |y| *y >= int(0)),
    ];
    for (name, expected) in runs {
        let a = load(name);
        let start = Instant::now();
        let res = parametric_solve_lmi(&a, &SolveOptions::default())
            .map_err(|e| format!("{name}: {e}"))?;
        let elapsed = start.elapsed();
        if elapsed > Duration::from_secs(600) {
            return Err(format!("{name}: {elapsed:.2?}"));
        }
        for y in grid_201() {
            match res.formula.evaluate(&[y.clone()]) {
                Truth::Exception => {}
                t if (t == Truth::True) != expected(&y) => {
                    return Err(format!("{name}: wrong at y1 = {y}"))
                }
                _ => {}
            }
        }
        details.push(format!("{name} (m={}, n={}) {elapsed:.2?}", a.m, a.n));
    }
    Ok(format!("Gram identities hold; {}", details.join(", ")))
}

fn report(k: usize, name: &str, outcome: &Outcome) {
    match outcome {
        Ok(d) => println!("criterion {k} ({name}): PASS [{d}]"),
        Err(d) => println!("criterion {k} ({name}): FAIL [{d}]"),
    }
}

fn main() {
    // `cargo test` passes harness flags; only `--list` needs an answer
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let mut failed = 0;
    let mut run = |k: usize, name: &str, outcome: Outcome| {
        report(k, name, &outcome);
        failed += usize::from(outcome.is_err());
    };
    let (c1, f1) = end_to_end("parametric_small.json", |y| y.is_positive());
    run(1, "end-to-end [[1,x1],[x1,y1]]", c1);
    let (c2, f2) = end_to_end("parametric_interval.json", |y| *y > int(-1) && *y < int(1));
    run(2, "end-to-end [[1+x1,y1],[y1,1-x1]]", c2);
    run(3, "Hermite rank and signature", criterion_3());
    run(4, "sign determination", criterion_4());
    run(5, "specialization", criterion_5());
    run(6, "decision oracle", criterion_6());
    run(7, "bounds", criterion_7());
    run(8, "SOS pipeline", criterion_8());
    let (_, g1) = end_to_end("parametric_small.json", |y| y.is_positive());
    let (_, g2) = end_to_end("parametric_interval.json", |y| *y > int(-1) && *y < int(1));
    let det = if !f1.is_empty() && f1 == g1 && f2 == g2 {
        Ok(format!("{} and {} bytes identical", f1.len(), f2.len()))
    } else {
        Err("formula output differs between runs".into())
    };
    run(9, "determinism", det);
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
