//! Exact polynomial arithmetic: variables, monomials and orders, sparse
//! polynomials, gcds, rational functions in the parameters, and the text
//! format.

pub mod gcd;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod vars;
pub mod zgcd;

pub use gcd::{div_exact, gcd, primitive_integer, squarefree_part};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{format_poly, format_ratfunc, parse_poly, parse_poly_at};
pub use poly::{jacobian, MultiPoly};
pub use ratfunc::RatFunc;
pub use vars::{Var, VarKind, VarSet};
