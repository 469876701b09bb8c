use thiserror::Error;

/// Errors raised by the algebra engine and the LMI pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,

    #[error("ideal is not zero-dimensional: no pure power of {0} among the leading monomials")]
    NotZeroDimensional(String),

    #[error("resource limit exceeded: more than {budget} pair reductions")]
    ResourceLimit { budget: usize },

    #[error("change of variables matrix is singular")]
    SingularMatrix,

    #[error("monomial {0} is not a product of two monomials of the basis")]
    NotRepresentable(String),

    #[error("index set {iota:?} has size {got}, expected {expected}")]
    BadIndexSet {
        iota: Vec<usize>,
        got: usize,
        expected: usize,
    },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("parameter point lies on the exception locus ({0})")]
    InvalidSpecialization(String),

    #[error("genericity failure after {attempts} attempts: {detail}")]
    GenericityFailure { attempts: usize, detail: String },

    #[error("option `{option}` needs exactly one parameter, got t = {t}")]
    UnsupportedDimension { option: String, t: usize },

    #[error("parse error at {location}, column {column}: {message}")]
    Parse {
        location: String,
        column: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
