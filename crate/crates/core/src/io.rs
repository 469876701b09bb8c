//! JSON instance and result files, rational grids and the grid cross-check.

use crate::arith::{format_poly, parse_poly_at, VarSet};
use crate::classify::{ParametricResult, SolveOptions};
use crate::decide::solve_lmi;
use crate::error::{Error, Result};
use crate::formula::{ParamFormula, Truth};
use crate::lmi::ParamLinearMatrix;
use crate::scalar::{fmt_rational, parse_rational};
use crate::{Poly, Rational};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const SCHEMA: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub schema: u64,
    pub m: usize,
    pub n: usize,
    pub t: usize,
    /// Row `i` holds the entries `(i, i), …, (i, m−1)`.
    pub entries: Vec<Vec<String>>,
}

fn json_error(e: serde_json::Error, location: &str) -> Error {
    Error::Parse {
        location: format!("{location} line {}", e.line()),
        column: e.column(),
        message: e.to_string(),
    }
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let f: InstanceFile = serde_json::from_str(text).map_err(|e| json_error(e, "instance"))?;
        if f.schema != SCHEMA {
            return Err(Error::Invalid(format!("unsupported schema {}", f.schema)));
        }
        if f.entries.len() != f.m
            || f.entries
                .iter()
                .enumerate()
                .any(|(i, row)| row.len() != f.m - i)
        {
            return Err(Error::Invalid(format!(
                "entries must be the upper triangle of a {0}x{0} matrix",
                f.m
            )));
        }
        Ok(f)
    }

    pub fn to_matrix(&self) -> Result<ParamLinearMatrix> {
        let vars = VarSet::params_primal(self.t, self.n);
        let mut rows = vec![vec![Poly::zero(vars.len()); self.m]; self.m];
        for (i, row) in self.entries.iter().enumerate() {
            for (k, src) in row.iter().enumerate() {
                let j = i + k;
                let p = parse_poly_at(src, &vars, &format!("entries[{i}][{k}]"))?;
                rows[i][j] = p.clone();
                rows[j][i] = p;
            }
        }
        ParamLinearMatrix::from_entries(self.t, self.n, &rows)
    }

    pub fn from_matrix(a: &ParamLinearMatrix) -> Self {
        let vars = a.vars();
        let entries = (0..a.m)
            .map(|i| {
                (i..a.m)
                    .map(|j| format_poly(&a.entry_in(i, j, vars.len()), &vars))
                    .collect()
            })
            .collect();
        InstanceFile {
            schema: SCHEMA,
            m: a.m,
            n: a.n,
            t: a.t,
            entries,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

pub fn read_instance(text: &str) -> Result<ParamLinearMatrix> {
    InstanceFile::parse(text)?.to_matrix()
}

fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

/// Result file contents; `timings` is the only non-reproducible field.
pub fn result_json(
    a: &ParamLinearMatrix,
    opts: &SolveOptions,
    res: &ParametricResult,
    total_ms: u128,
) -> Value {
    let change: Vec<Vec<String>> = res.change.to_rows().iter().map(|r| rationals(r)).collect();
    let pf = res.formula.to_json();
    json!({
        "schema": SCHEMA,
        "m": a.m,
        "n": a.n,
        "t": a.t,
        "option": res.option,
        "requested_option": opts.option,
        "formula": pf["formula"],
        "exceptions": pf["exceptions"],
        "seed": opts.seed,
        "seed_used": res.seed,
        "attempts": res.attempts,
        "M": change,
        "tau": rationals(&res.tau),
        "branches": res.branches,
        "sound": res.is_sound(),
        "failure": res.failure.as_ref().map(|e| e.to_string()),
        "warnings": res.warnings,
        "genericity_assumed": true,
        "timings": {
            "total_ms": total_ms,
            "branch_ms": res.branches.iter().map(|b| b.millis).collect::<Vec<_>>(),
        },
    })
}

/// Formula and exceptions of a result file.
pub fn read_result(text: &str, t: usize) -> Result<ParamFormula> {
    let v: Value = serde_json::from_str(text).map_err(|e| json_error(e, "result"))?;
    if v.get("schema").and_then(Value::as_u64) != Some(SCHEMA) {
        return Err(Error::Invalid("result file lacks `\"schema\": 1`".into()));
    }
    if let Some(rt) = v.get("t").and_then(Value::as_u64) {
        if rt as usize != t {
            return Err(Error::Invalid(format!(
                "result has t = {rt}, instance has t = {t}"
            )));
        }
    }
    ParamFormula::from_json(t, &v)
}

/// Exact points `a, a + step, …` up to `b`, from `"a:b:step"`.
pub fn parse_grid(spec: &str) -> Result<Vec<Rational>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::Invalid(format!("grid `{spec}` is not `a:b:step` with rationals"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let vals: Vec<Rational> = parts
        .iter()
        .map(|p| parse_rational(p).ok_or_else(bad))
        .collect::<Result<_>>()?;
    let (a, b, step) = (&vals[0], &vals[1], &vals[2]);
    if step <= &Rational::zero() || a > b {
        return Err(bad());
    }
    let mut out = Vec::new();
    let mut y = a.clone();
    while &y <= b {
        out.push(y.clone());
        y += step;
    }
    Ok(out)
}

/// Cartesian product of per-parameter grids, first parameter slowest.
pub fn grid_points(axes: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    axes.iter().fold(vec![vec![]], |acc, axis| {
        acc.iter()
            .flat_map(|p| {
                axis.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v.clone());
                    q
                })
            })
            .collect()
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Disagreement {
    pub y: Vec<String>,
    pub formula: bool,
    pub decided: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub schema: u64,
    pub points: usize,
    pub on_exceptions: usize,
    pub compared: usize,
    pub agreements: usize,
    pub agreement_percent: f64,
    pub disagreements: Vec<Disagreement>,
    pub skipped: Vec<Vec<String>>,
}

/// Compares the formula with the decision procedure at every grid point off
/// the exception locus.
pub fn check_grid(
    a: &ParamLinearMatrix,
    pf: &ParamFormula,
    points: &[Vec<Rational>],
    seed: u64,
) -> Result<CheckReport> {
    let outcomes: Vec<Result<Option<(bool, bool)>>> = points
        .par_iter()
        .map(|y| match pf.evaluate(y) {
            Truth::Exception => Ok(None),
            truth => Ok(Some((
                truth == Truth::True,
                solve_lmi(&a.specialize_params(y), seed)?,
            ))),
        })
        .collect();
    let mut report = CheckReport {
        schema: SCHEMA,
        points: points.len(),
        on_exceptions: 0,
        compared: 0,
        agreements: 0,
        agreement_percent: 100.0,
        disagreements: vec![],
        skipped: vec![],
    };
    for (y, o) in points.iter().zip(outcomes) {
        match o? {
            None => {
                report.on_exceptions += 1;
                report.skipped.push(rationals(y));
            }
            Some((f, d)) => {
                report.compared += 1;
                if f == d {
                    report.agreements += 1;
                } else {
                    report.disagreements.push(Disagreement {
                        y: rationals(y),
                        formula: f,
                        decided: d,
                    });
                }
            }
        }
    }
    if report.compared > 0 {
        report.agreement_percent = 100.0 * report.agreements as f64 / report.compared as f64;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::parametric_solve_lmi;
    use crate::scalar::{int, rat};

    const SMALL: &str =
        r#"{"schema": 1, "m": 2, "n": 1, "t": 1, "entries": [["1", "x1"], ["y1"]]}"#;

    #[test]
    fn instance_round_trip() {
        let a = read_instance(SMALL).unwrap();
        assert_eq!(a.m, 2);
        let text = InstanceFile::from_matrix(&a).to_json_string();
        assert_eq!(read_instance(&text).unwrap(), a);
    }

    #[test]
    fn parse_errors_have_positions() {
        let bad = SMALL.replace("y1\"", "y1 +\"");
        match read_instance(&bad) {
            Err(Error::Parse {
                location, column, ..
            }) => {
                assert_eq!(location, "entries[1][0]");
                assert_eq!(column, 5);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            read_instance("{\"schema\": 1,\n \"m\": }"),
            Err(Error::Parse { .. })
        ));
        let nonlinear = SMALL.replace("\"x1\"", "\"x1^2\"");
        assert!(read_instance(&nonlinear).is_err());
    }

    #[test]
    fn grids() {
        let g = parse_grid("-5:5:0.5").unwrap();
        assert_eq!(g.len(), 21);
        assert_eq!(g[1], rat(-9, 2));
        assert_eq!(
            parse_grid("0:1:1/3").unwrap(),
            vec![int(0), rat(1, 3), rat(2, 3), int(1)]
        );
        assert!(parse_grid("1:0:1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert_eq!(
            grid_points(&[vec![int(0), int(1)], vec![int(2), int(3)]]).len(),
            4
        );
    }

    #[test]
    fn check_small_instance() {
        let a = read_instance(SMALL).unwrap();
        let opts = SolveOptions::default();
        let res = parametric_solve_lmi(&a, &opts).unwrap();
        let text = serde_json::to_string(&result_json(&a, &opts, &res, 0)).unwrap();
        let pf = read_result(&text, 1).unwrap();
        let points = grid_points(&[parse_grid("-5:5:0.5").unwrap()]);
        let report = check_grid(&a, &pf, &points, 0).unwrap();
        assert!(report.disagreements.is_empty());
        // y1 = 0 from the branches, y1 = -1 from the trace at the origin
        assert_eq!(
            report.skipped,
            vec![vec!["-1".to_string()], vec!["0".to_string()]]
        );
        assert_eq!(report.compared, 19);
        let inside = grid_points(&[vec![int(0)]]);
        assert_eq!(check_grid(&a, &pf, &inside, 0).unwrap().compared, 0);
    }
}
