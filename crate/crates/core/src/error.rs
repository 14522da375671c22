use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ZeroVector: the zero vector has no primitive generator")]
    ZeroVector,
    #[error("InfiniteIndex: sublattice is not of full rank")]
    InfiniteIndex,
    #[error("DimensionMismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("InvalidMatrix: {0}")]
    InvalidMatrix(String),
    #[error("InvalidFan: {0}")]
    InvalidFan(String),
    #[error("NotSimplicial: cone {0:?} is not simplicial")]
    NotSimplicial(Vec<usize>),
    #[error("NotACone: {0:?} is not a cone of the fan")]
    NotACone(Vec<usize>),
    #[error("InvalidCone: {0}")]
    InvalidCone(String),
    #[error("NotPrimitive: {0:?} is not a primitive lattice vector")]
    NotPrimitive(Vec<String>),
    #[error("RayOutsideSupport: {0:?} is not in the support of the fan")]
    RayOutsideSupport(Vec<String>),
    #[error("NotFixedPoint: {0:?} is not a full-dimensional cone of the fan")]
    NotFixedPoint(Vec<usize>),
    #[error("NotComposable: step {0} does not start at the previous step's source lattice")]
    NotComposable(usize),
    #[error("NotQCartier: divisor is not Q-Cartier on cone {0:?}")]
    NotQCartier(Vec<usize>),
    #[error("NotAmple: divisor is not ample")]
    NotAmple,
    #[error("NotComplete: fan is not complete")]
    NotComplete,
    #[error("NotEffective: boundary coefficient at ray {0} is negative")]
    NotEffective(usize),
    #[error("NoInteriorPoint: no interior lattice point for scalings up to {0}")]
    NoInteriorPoint(usize),
    #[error("NotPicardOne: fan has no positive primitive ray relation of corank one")]
    NotPicardOne,
    #[error("DegreeTooSmall: degree {degree} is smaller than the number of points {points}")]
    DegreeTooSmall { degree: usize, points: usize },
    #[error("InterpolationFailed: {0}")]
    InterpolationFailed(String),
    #[error("AvoidanceRetryExceeded after {attempts} attempts; last report has {unallowed} unallowed witnesses")]
    AvoidanceRetryExceeded { attempts: usize, unallowed: usize },
    #[error("Inhomogeneous: generator {0} is not homogeneous for the class grading")]
    Inhomogeneous(usize),
    #[error("CodimensionTooSmall: component {0} of the locus has codimension below two")]
    CodimensionTooSmall(usize),
    #[error("GradingMismatch: {0}")]
    GradingMismatch(String),
    #[error("InvalidPoint: {0}")]
    InvalidPoint(String),
    #[error("InvalidCurve: {0}")]
    InvalidCurve(String),
    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),
    #[error("DuplicatePoints: points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),
    #[error("ToroidalizationOutOfScope: point {0} is a singular point that is not torus-fixed")]
    ToroidalizationOutOfScope(usize),
    #[error("Parse: {0}")]
    Parse(String),
    #[error("Internal: {0}")]
    Internal(String),
}
