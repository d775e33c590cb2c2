use thiserror::Error;

use crate::bipoly::BiDegree;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("degree error: {0}")]
    Degree(String),
    #[error("polynomials are linearly dependent")]
    Dependent,
    #[error("gcd of zero forms is undefined")]
    ZeroGcd,
    #[error("forms have a common factor of degree {0}")]
    CommonFactor(usize),
    #[error("box {got} too small, need at least {need}")]
    BoxTooSmall { got: BiDegree, need: BiDegree },
    #[error("syzygy check failed: {0}")]
    NotASyzygy(String),
    #[error("the (3,n) syzygy spans only {0} quadrics; impossible for a basepoint free system")]
    ImpossibleFactorization(usize),
    #[error("no (3,n) first syzygy: not the smooth conic case")]
    NotConic,
    #[error("h forms are dependent; the smooth conic case applies")]
    ConicRedirect,
    #[error("system has a basepoint: {0}")]
    Basepoint(String),
    #[error("q forms are dependent (span {0}); use the reduced variant")]
    DependentForms(usize),
    #[error("sampling failed after {0} basepoint rejections")]
    Sampling(usize),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
