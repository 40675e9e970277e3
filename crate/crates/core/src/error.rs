//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Structural defect in the input data, as opposed to a validation failure.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("no maximal cone forms a lattice basis; polytope is not smooth")]
    NoUnimodularCone,

    #[error("fan polytope is not in normalized form: {0}")]
    NotNormalized(String),

    #[error("point is on or outside the polytope boundary (l_{facet} <= 0)")]
    BoundaryPoint { facet: usize },

    #[error("facet {facet} has no numeric support lambda")]
    MissingNumericSupport { facet: usize },

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("quotient presentation is infinite-dimensional")]
    InfiniteDimensional,

    #[error("zero component in a point of (C*)^n")]
    ZeroComponent,

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("cutoff K must be at least {min}, got {got}")]
    CutoffTooSmall { min: usize, got: usize },

    #[error("exponential of a form with odd-degree terms is not defined")]
    OddDegreeExponential,

    #[error("form contains {0} generators, which this transform does not accept")]
    UnexpectedGenerators(&'static str),

    #[error("matrix is not symmetric positive-definite: {0}")]
    NotPositiveDefinite(String),

    #[error("unknown preset '{0}'")]
    UnknownPreset(String),

    #[error("invalid polytope file: {0}")]
    InvalidPolytope(String),
}

pub type Result<T> = std::result::Result<T, Error>;
