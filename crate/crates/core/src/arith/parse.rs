//! Polynomial text format.
//!
//! Grammar: integers and fractions `a/b` as literals, variables named after
//! a [`VarSet`], binary `+ - *`, `^` with a non-negative integer exponent,
//! unary sign and parentheses. There is no implicit multiplication.

use super::monomial::{Monomial, MonomialOrder};
use super::ratfunc::RatFunc;
use super::vars::VarSet;
use crate::error::{Error, Result};
use crate::scalar::fmt_rational;
use crate::{Poly, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a VarSet,
    location: String,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            location: self.location.clone(),
            column: self.pos + 1,
            message: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                self.pos = start;
                return self.err("expected a non-negative integer exponent");
            }
            let e: u32 = match digits.parse() {
                Ok(e) => e,
                Err(_) => return self.err("exponent too large"),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Poly> {
        let n = self.vars.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().unwrap();
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        self.pos = save + 1;
                        return self.err("expected an integer denominator");
                    }
                    let den: BigInt = d.parse().unwrap();
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    return Ok(Poly::constant(n, Rational::new(num, den)));
                }
                Ok(Poly::constant(n, Rational::from_integer(num)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                match (0..n).find(|&i| self.vars.name(i) == name) {
                    Some(i) => Ok(Poly::var(n, i)),
                    None => {
                        self.pos = start;
                        self.err(format!("unknown variable `{name}`"))
                    }
                }
            }
            Some(c) => self.err(format!("unexpected character `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial over `vars`. `location` is used in error messages.
pub fn parse_poly_at(src: &str, vars: &VarSet, location: &str) -> Result<Poly> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        vars,
        location: location.to_string(),
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

pub fn parse_poly(src: &str, vars: &VarSet) -> Result<Poly> {
    parse_poly_at(src, vars, "input")
}

fn fmt_monomial(m: &Monomial, vars: &VarSet) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars.name(i)),
            _ => parts.push(format!("{}^{}", vars.name(i), e)),
        }
    }
    parts.join("*")
}

/// Canonical text: terms in decreasing grevlex order of the layout.
pub fn format_poly(p: &Poly, vars: &VarSet) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let order = MonomialOrder::grevlex_all(p.nvars());
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|a, b| order.cmp(b.0, a.0));
    let mut out = String::new();
    for (k, (m, c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = fmt_monomial(m, vars);
        if mono.is_empty() {
            out.push_str(&fmt_rational(&a));
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&fmt_rational(&a));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

/// `num` or `(num)/(den)`.
pub fn format_ratfunc(r: &RatFunc, vars: &VarSet) -> String {
    let n = vars.len();
    let num = r.num().resize(n);
    let den = r.den().resize(n);
    if den.is_one_poly() {
        format_poly(&num, vars)
    } else {
        format!(
            "({})/({})",
            format_poly(&num, vars),
            format_poly(&den, vars)
        )
    }
}

trait IsOnePoly {
    fn is_one_poly(&self) -> bool;
}

impl IsOnePoly for Poly {
    fn is_one_poly(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }
}
