use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree too low: polynomial has degree {degree}, requested {requested}")]
    DegreeTooLow { degree: usize, requested: usize },

    #[error("quaternion polynomial is identically zero")]
    ZeroPreimage,

    #[error("field has real factor of degree {degree}")]
    RealFactor { degree: usize },

    #[error("field not spatial: coefficient vectors do not span R^3")]
    NotSpatial,

    #[error("field degree {0} too low for this construction")]
    FieldDegree(usize),

    #[error("direction vector is zero")]
    ZeroDirection,

    #[error("triplet not independent: {0:?}")]
    TripletNotIndependent([usize; 3]),

    #[error("no linearly independent coefficient triplet")]
    NoIndependentTriplet,

    #[error("not a regular exponent: {r} > {bound}")]
    NotRegularExponent { r: i64, bound: i64 },

    #[error("elements are not a conjugate pair (mismatch {0:e})")]
    NotConjugatePair(f64),

    #[error("nonzero residuum {0:e} after integration")]
    NonzeroResidue(f64),

    #[error("evaluation at pole t = {0}")]
    EvaluationAtPole(f64),

    #[error("pole inside interval: beta = {0}")]
    PoleInsideInterval(f64),

    #[error("dependent basis: numerical rank {rank} < dimension {dim}")]
    DependentBasis { rank: usize, dim: usize },

    #[error("external curve not tangent to field (residual {0:e})")]
    NotTangent(f64),

    #[error("derivative direction incompatible with field at t = {0}")]
    DerivativeIncompatible(f64),

    #[error("initial solution is cusped or degenerate")]
    DegenerateInitial,

    #[error("arc-length requires PH structure")]
    ArcLengthRequiresPh,

    #[error("target length must be positive, got {0}")]
    InvalidTarget(f64),

    #[error("quadrature failed to converge")]
    QuadratureDiverged,

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}
