use thiserror::Error;

use crate::gfun::Violation;

/// Errors raised across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("gamma pole at {0}")]
    Pole(String),
    #[error("hypergeometric series diverges at |r| = {0} (p = q + 1)")]
    DivergentSeries(f64),
    #[error("argument {0} outside the supported region")]
    Region(String),
    #[error("class-B G-function is not defined at r = 1 (nu = {0} <= 1)")]
    UndefinedAtOne(f64),
    #[error("no admissible contour: {0}")]
    NoAdmissibleContour(String),
    #[error("Mellin kernel decays too slowly on the contour: {0}")]
    SlowDecay(String),
    #[error("b-parameters {0} and {1} of the first block differ by an integer")]
    IntegerBDifference(usize, usize),
    #[error("expansion requires p <= q; invert the argument first")]
    WrongRegion,
    #[error("upper parameter {0} is a non-positive integer")]
    NonPositiveIntegerUpper(String),
    #[error("dimension {0} is not supported (d <= 3)")]
    UnsupportedDimension(u32),
    #[error("condition violated: {0}")]
    ConditionViolation(String),
    #[error("parameter {0} contains an unbound alpha or d term")]
    UnboundSymbol(String),
    #[error("invalid G-function parameters: {}", fmt_violations(.0))]
    InvalidSpec(Vec<Violation>),
    #[error("parameters {0} and {1} do not differ by an integer")]
    NotInteger(String, String),
    #[error("indices do not match the block pattern of the swap identity: {0}")]
    BlockPattern(String),
    #[error("function is not smooth near the evaluation point")]
    NonSmoothAtPoint,
    #[error("integrand is not integrable: {0}")]
    NotIntegrable(String),
    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),
    #[error("x and y coincide")]
    CoincidentPoints,
    #[error("degenerate representation: {0}")]
    Degenerate(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

fn fmt_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
