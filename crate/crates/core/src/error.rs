use thiserror::Error;

use crate::multivec::Multivector;

/// Errors raised by the engine. Parse errors carry 1-based positions.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coordinate count mismatch: {left} vs {right}")]
    CoordinateMismatch { left: usize, right: usize },
    #[error("coordinate index {index} out of range for {nvars} coordinates")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("expected a multivector of degree {expected}, got degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("linear part is singular")]
    SingularMap,
    #[error("result depends on the symbolic translation parameter")]
    SymbolicShift,
    #[error("bivector is not homogeneous in the coefficient grading")]
    NotHomogeneous,
    #[error("point is not a zero of the bivector")]
    NotInZeroLocus,
    #[error("bivector is generically degenerate (Pfaffian vanishes identically)")]
    Degenerate,
    #[error("operation requires {expected} coordinates, structure has {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not a Poisson bivector: [pi,pi] = {witness}")]
    NotPoisson { witness: Box<Multivector> },
    #[error("parse error at line {line}, column {column} near `{token}`: {message}")]
    Parse {
        line: usize,
        column: usize,
        token: String,
        message: String,
    },
    #[error("free-module fit failed: negative residual at degree {degree}")]
    FitFailure { degree: u32 },
    #[error("modular reconstruction did not converge")]
    Reconstruction,
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
