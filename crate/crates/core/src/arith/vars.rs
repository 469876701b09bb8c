use std::fmt;

/// A named variable. Indices are 1-based, matching the printed names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// Parameter `y_i`.
    Y(usize),
    /// Primal decision variable `x_i`.
    X(usize),
    /// Incidence variable `u_{i,j}`.
    U(usize, usize),
    /// Lagrange multiplier `l_k`.
    Lambda(usize),
    /// Saturation variable.
    Z,
    /// Auxiliary variable (eigenvalue shift in the characteristic polynomial).
    T,
}

/// Kind of a [`Var`], without its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    Param,
    Primal,
    Incidence,
    Multiplier,
    Saturation,
    Auxiliary,
}

impl Var {
    pub fn kind(&self) -> VarKind {
        match self {
            Var::Y(_) => VarKind::Param,
            Var::X(_) => VarKind::Primal,
            Var::U(..) => VarKind::Incidence,
            Var::Lambda(_) => VarKind::Multiplier,
            Var::Z => VarKind::Saturation,
            Var::T => VarKind::Auxiliary,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Y(i) => write!(f, "y{i}"),
            Var::X(i) => write!(f, "x{i}"),
            Var::U(i, j) => write!(f, "u{i}_{j}"),
            Var::Lambda(k) => write!(f, "l{k}"),
            Var::Z => write!(f, "z"),
            Var::T => write!(f, "T"),
        }
    }
}

/// Ordered list of the variables of a polynomial ring.
///
/// Every layout used by the pipeline starts with `y1..yt, x1..xn`, so a
/// polynomial in the parameters and primal variables embeds into any larger
/// ring by zero-padding its exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    vars: Vec<Var>,
}

impl VarSet {
    pub fn new(vars: Vec<Var>) -> Self {
        VarSet { vars }
    }

    /// `y1..yt`.
    pub fn params(t: usize) -> Self {
        VarSet::new((1..=t).map(Var::Y).collect())
    }

    /// `y1..yt, x1..xn`.
    pub fn params_primal(t: usize, n: usize) -> Self {
        let mut v: Vec<Var> = (1..=t).map(Var::Y).collect();
        v.extend((1..=n).map(Var::X));
        VarSet::new(v)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn get(&self, i: usize) -> Var {
        self.vars[i]
    }

    pub fn index_of(&self, v: Var) -> Option<usize> {
        self.vars.iter().position(|w| *w == v)
    }

    pub fn push(&mut self, v: Var) -> usize {
        self.vars.push(v);
        self.vars.len() - 1
    }

    /// Positions of all variables of the given kind.
    pub fn indices_of_kind(&self, kind: VarKind) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.vars[i].kind() == kind)
            .collect()
    }

    /// Positions of all variables that are not parameters.
    pub fn main_indices(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.vars[i].kind() != VarKind::Param)
            .collect()
    }

    pub fn num_params(&self) -> usize {
        self.vars
            .iter()
            .filter(|v| v.kind() == VarKind::Param)
            .count()
    }

    pub fn name(&self, i: usize) -> String {
        self.vars[i].to_string()
    }
}
