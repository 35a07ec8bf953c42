//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range 1..={nvars}")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("point has {got} coordinates, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("matrix is identically singular")]
    IdenticallySingular,

    #[error("division by zero")]
    DivisionByZero,

    #[error("the first metric must be constant (given in its flat coordinates)")]
    FirstMetricNotConstant,

    #[error("internal disagreement between the two Hamiltonianity criteria: {0}")]
    DisagreementBug(String),

    #[error("no admissible sample point found after {attempts} attempts")]
    DegenerateEverywhere { attempts: usize },

    #[error("eigenvalues outside Q and Q(i): residual factor {0}")]
    UnsupportedEigenvalueField(String),

    #[error("leading coefficient must be normalized to 1, got {0}")]
    ScalingNotNormalized(String),

    #[error("scaling factor {0} is not the square of a rational")]
    NonSquareGamma(String),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("solution set is not a linear family: {0}")]
    NonLinearSolutionSet(String),

    #[error("parse error: {0}")]
    Parse(String),
}
