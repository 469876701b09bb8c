//! Semi-algebraic formulas in the parameters, with exact evaluation.

use crate::arith::{format_poly, parse_poly, parse_poly_at, RatFunc, VarSet};
use crate::error::{Error, Result};
use crate::hermite::HermiteMatrix;
use crate::linalg::Matrix;
use crate::scalar::{fmt_rational, parse_rational, OrderedField};
use crate::univariate::{sturm_count, UniPoly};
use crate::{Poly, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rel {
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "!=")]
    Ne,
}

impl Rel {
    fn symbol(self) -> &'static str {
        match self {
            Rel::Gt => ">",
            Rel::Ge => ">=",
            Rel::Lt => "<",
            Rel::Eq => "=",
            Rel::Ne => "!=",
        }
    }

    fn from_symbol(s: &str) -> Option<Rel> {
        Some(match s {
            ">" => Rel::Gt,
            ">=" => Rel::Ge,
            "<" => Rel::Lt,
            "=" => Rel::Eq,
            "!=" => Rel::Ne,
            _ => return None,
        })
    }

    fn holds(self, sign: i8) -> bool {
        match self {
            Rel::Gt => sign > 0,
            Rel::Ge => sign >= 0,
            Rel::Lt => sign < 0,
            Rel::Eq => sign == 0,
            Rel::Ne => sign != 0,
        }
    }
}

/// `Σ_α a_α · Sign(H_α(y)) > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountAssertion {
    pub coefficients: Vec<Rational>,
    pub matrices: Vec<HermiteMatrix>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Formula {
    True,
    False,
    /// `poly(y) rel 0`.
    Sign {
        poly: Poly,
        rel: Rel,
    },
    /// `poly(y1) ≠ 0` and exactly `index` real roots of `poly` lie below `y1`.
    RootCell {
        poly: Poly,
        index: usize,
    },
    CountPositive(Arc<CountAssertion>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

/// Three-valued evaluation result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    True,
    False,
    Exception,
}

impl Formula {
    pub fn sign(poly: Poly, rel: Rel) -> Formula {
        if poly.is_constant() {
            return if rel.holds(poly.constant_term().sign()) {
                Formula::True
            } else {
                Formula::False
            };
        }
        Formula::Sign { poly, rel }
    }

    /// Conjunction with constant folding and duplicate removal.
    pub fn and(parts: Vec<Formula>) -> Formula {
        let mut out: Vec<Formula> = Vec::new();
        for p in parts {
            match p {
                Formula::True => {}
                Formula::False => return Formula::False,
                Formula::And(inner) => {
                    for q in inner {
                        if !out.contains(&q) {
                            out.push(q);
                        }
                    }
                }
                p => {
                    if !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
        }
        match out.len() {
            0 => Formula::True,
            1 => out.pop().unwrap(),
            _ => Formula::And(out),
        }
    }

    /// Disjunction with constant folding and duplicate removal.
    pub fn or(parts: Vec<Formula>) -> Formula {
        let mut out: Vec<Formula> = Vec::new();
        for p in parts {
            match p {
                Formula::False => {}
                Formula::True => return Formula::True,
                Formula::Or(inner) => {
                    for q in inner {
                        if !out.contains(&q) {
                            out.push(q);
                        }
                    }
                }
                p => {
                    if !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
        }
        match out.len() {
            0 => Formula::False,
            1 => out.pop().unwrap(),
            _ => Formula::Or(out),
        }
    }

    /// Evaluates at `y`; `Err` only when a count assertion cannot be specialized.
    pub fn eval(&self, y: &[Rational]) -> Result<bool> {
        Ok(match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Sign { poly, rel } => rel.holds(poly.eval(y).sign()),
            Formula::RootCell { poly, index } => {
                let u = UniPoly::from_multi(poly, 0)
                    .ok_or_else(|| Error::Invalid("root cell needs t = 1".into()))?;
                if u.eval(&y[0]).is_zero() {
                    false
                } else {
                    let below = -u.root_bound();
                    sturm_count(&u, &below, &y[0]) == *index
                }
            }
            Formula::CountPositive(c) => {
                let mut total = Rational::zero();
                for (a, h) in c.coefficients.iter().zip(&c.matrices) {
                    if a.is_zero() {
                        continue;
                    }
                    let sig = h.specialize(y)?.signature()?.signature;
                    total += a * Rational::from_integer(sig.into());
                }
                total > Rational::zero()
            }
            Formula::And(parts) => {
                for p in parts {
                    if !p.eval(y)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Or(parts) => {
                for p in parts {
                    if p.eval(y)? {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }

    /// Readable rendering; count assertions are summarized.
    pub fn render(&self, vars: &VarSet) -> String {
        match self {
            Formula::True => "true".into(),
            Formula::False => "false".into(),
            Formula::Sign { poly, rel } => {
                format!("{} {} 0", format_poly(poly, vars), rel.symbol())
            }
            Formula::RootCell { poly, index } => {
                format!("root_cell({}, {})", format_poly(poly, vars), index)
            }
            Formula::CountPositive(c) => {
                format!(
                    "count({} hermite matrices of size {}) > 0",
                    c.matrices.len(),
                    c.matrices.first().map_or(0, |h| h.size())
                )
            }
            Formula::And(parts) => {
                let v: Vec<String> = parts
                    .iter()
                    .map(|p| format!("({})", p.render(vars)))
                    .collect();
                v.join(" and ")
            }
            Formula::Or(parts) => {
                let v: Vec<String> = parts
                    .iter()
                    .map(|p| format!("({})", p.render(vars)))
                    .collect();
                v.join(" or ")
            }
        }
    }

    pub fn to_json(&self, vars: &VarSet) -> Value {
        match self {
            Formula::True => json!({"op": "true"}),
            Formula::False => json!({"op": "false"}),
            Formula::Sign { poly, rel } => {
                json!({"op": "sign", "poly": format_poly(poly, vars), "rel": rel.symbol()})
            }
            Formula::RootCell { poly, index } => {
                json!({"op": "root_cell", "poly": format_poly(poly, vars), "index": index})
            }
            Formula::CountPositive(c) => {
                let mats: Vec<Value> = c
                    .matrices
                    .iter()
                    .map(|h| {
                        let rows: Vec<Vec<Value>> = h
                            .entries
                            .to_rows()
                            .iter()
                            .map(|r| r.iter().map(|e| ratfunc_json(e, vars)).collect())
                            .collect();
                        json!({"alpha": h.alpha, "entries": rows})
                    })
                    .collect();
                let coeffs: Vec<String> = c.coefficients.iter().map(fmt_rational).collect();
                json!({"op": "count_positive", "coefficients": coeffs, "matrices": mats})
            }
            Formula::And(parts) => {
                json!({"op": "and", "args": parts.iter().map(|p| p.to_json(vars)).collect::<Vec<_>>()})
            }
            Formula::Or(parts) => {
                json!({"op": "or", "args": parts.iter().map(|p| p.to_json(vars)).collect::<Vec<_>>()})
            }
        }
    }

    pub fn from_json(v: &Value, vars: &VarSet) -> Result<Formula> {
        let bad = |msg: &str| Error::Invalid(format!("formula JSON: {msg}"));
        let op = v
            .get("op")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing op"))?;
        let poly_of = |key: &str| -> Result<Poly> {
            let s = v
                .get(key)
                .and_then(Value::as_str)
                .ok_or_else(|| bad("missing poly"))?;
            parse_poly_at(s, vars, "formula")
        };
        let args = || -> Result<Vec<Formula>> {
            v.get("args")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("missing args"))?
                .iter()
                .map(|a| Formula::from_json(a, vars))
                .collect()
        };
        Ok(match op {
            "true" => Formula::True,
            "false" => Formula::False,
            "sign" => {
                let rel = v
                    .get("rel")
                    .and_then(Value::as_str)
                    .and_then(Rel::from_symbol)
                    .ok_or_else(|| bad("bad rel"))?;
                Formula::Sign {
                    poly: poly_of("poly")?,
                    rel,
                }
            }
            "root_cell" => {
                let index = v
                    .get("index")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| bad("bad index"))? as usize;
                Formula::RootCell {
                    poly: poly_of("poly")?,
                    index,
                }
            }
            "count_positive" => {
                let coefficients = v
                    .get("coefficients")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("missing coefficients"))?
                    .iter()
                    .map(|c| {
                        c.as_str()
                            .and_then(parse_rational)
                            .ok_or_else(|| bad("bad coefficient"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let matrices = v
                    .get("matrices")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("missing matrices"))?
                    .iter()
                    .map(|m| {
                        let alpha: Vec<u32> =
                            serde_json::from_value(m.get("alpha").cloned().unwrap_or(Value::Null))
                                .map_err(|_| bad("bad alpha"))?;
                        let rows = m
                            .get("entries")
                            .and_then(Value::as_array)
                            .ok_or_else(|| bad("missing entries"))?
                            .iter()
                            .map(|r| {
                                r.as_array()
                                    .ok_or_else(|| bad("bad row"))?
                                    .iter()
                                    .map(|e| ratfunc_from_json(e, vars))
                                    .collect::<Result<Vec<_>>>()
                            })
                            .collect::<Result<Vec<_>>>()?;
                        let entries = if rows.is_empty() {
                            Matrix::zeros(0, 0)
                        } else {
                            Matrix::from_rows(rows)
                        };
                        Ok(HermiteMatrix {
                            alpha,
                            entries,
                            locus: vec![],
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Formula::CountPositive(Arc::new(CountAssertion {
                    coefficients,
                    matrices,
                }))
            }
            "and" => Formula::And(args()?),
            "or" => Formula::Or(args()?),
            other => return Err(bad(&format!("unknown op {other}"))),
        })
    }
}

fn ratfunc_json(r: &RatFunc, vars: &VarSet) -> Value {
    let t = vars.len();
    let num = r.num().resize(t);
    let den = r.den().resize(t);
    if den.is_one() {
        json!(format_poly(&num, vars))
    } else {
        json!({"num": format_poly(&num, vars), "den": format_poly(&den, vars)})
    }
}

fn ratfunc_from_json(v: &Value, vars: &VarSet) -> Result<RatFunc> {
    match v {
        Value::String(s) => Ok(RatFunc::from_poly(parse_poly(s, vars)?)),
        Value::Object(o) => {
            let get = |k: &str| {
                o.get(k)
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Invalid(format!("rational function JSON: missing {k}")))
            };
            RatFunc::new(
                parse_poly(get("num")?, vars)?,
                parse_poly(get("den")?, vars)?,
            )
        }
        _ => Err(Error::Invalid(
            "rational function JSON: expected string or object".into(),
        )),
    }
}

/// A formula together with the polynomials on whose zero sets it makes no claim.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamFormula {
    pub t: usize,
    pub formula: Formula,
    pub exceptions: Vec<Poly>,
}

impl ParamFormula {
    pub fn vars(&self) -> VarSet {
        VarSet::params(self.t)
    }

    pub fn on_exception(&self, y: &[Rational]) -> bool {
        self.exceptions.iter().any(|p| p.eval(y).is_zero())
    }

    pub fn evaluate(&self, y: &[Rational]) -> Truth {
        if self.on_exception(y) {
            return Truth::Exception;
        }
        match self.formula.eval(y) {
            Ok(true) => Truth::True,
            Ok(false) => Truth::False,
            Err(_) => Truth::Exception,
        }
    }

    pub fn to_json(&self) -> Value {
        let vars = self.vars();
        json!({
            "formula": self.formula.to_json(&vars),
            "exceptions": self.exceptions.iter().map(|p| format_poly(p, &vars)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(t: usize, v: &Value) -> Result<ParamFormula> {
        let vars = VarSet::params(t);
        let formula = Formula::from_json(
            v.get("formula")
                .ok_or_else(|| Error::Invalid("missing formula".into()))?,
            &vars,
        )?;
        let exceptions = v
            .get("exceptions")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Invalid("missing exceptions".into()))?
            .iter()
            .map(|e| {
                e.as_str()
                    .ok_or_else(|| Error::Invalid("bad exception".into()))
                    .and_then(|s| parse_poly(s, &vars))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ParamFormula {
            t,
            formula,
            exceptions,
        })
    }
}

trait PolyIsOne {
    fn is_one(&self) -> bool;
}

impl PolyIsOne for Poly {
    fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }
}
