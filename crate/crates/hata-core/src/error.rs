use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(
        "inadmissible IFS parameter alpha = {alpha}: need 0 < |alpha| < 1 and 0 < |1 - alpha| < 1"
    )]
    InadmissibleAlpha { alpha: Complex64 },

    #[error("structure parameter h = {h} must exceed 1 (regular harmonic structure)")]
    StructureParamOutOfRange { h: f64 },

    #[error("requested {requested} eigenpairs but the interior has dimension {interior}")]
    EigenCountTooLarge { requested: usize, interior: usize },

    #[error(
        "eigensolver failed: residual {residual:e} for eigenvalue {lambda} exceeds tolerance {tolerance:e}"
    )]
    EigenResidual {
        lambda: f64,
        residual: f64,
        tolerance: f64,
    },

    #[error("eigenfunction {index} is not classified primary, cannot transport it")]
    NotPrimary { index: usize },

    #[error("eigenfunctions have not been classified yet")]
    NotClassified,

    #[error("vertex {address} lies on the unit interval but its cell siblings do not")]
    AxisSiblingMismatch { address: String },

    #[error("trace endpoint values ({left}, {right}) are not (0, 1); the check needs the harmonic trace of boundary data (0, 0, 1)")]
    TraceNotUnitBoundary { left: f64, right: f64 },

    #[error("trace does not span [0, 1]: endpoints at x = {left}, {right}")]
    TraceMissingEndpoints { left: f64, right: f64 },

    #[error("level mismatch: expected {expected}, got {actual}")]
    LevelMismatch { expected: usize, actual: usize },
}
