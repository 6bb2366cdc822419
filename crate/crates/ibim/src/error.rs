use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("query point lies outside the perpendicular band of the open curve")]
    OutsideBand,

    #[error("projection is not unique: query is within tolerance of the medial axis")]
    NonUniqueProjection,

    #[error("closest-point iteration failed to converge")]
    NoConvergence,

    #[error("tube too wide for curvature: 1 + eta*kappa <= 0 at eta = {eta}, kappa = {kappa}")]
    FocalPointReached { eta: f64, kappa: f64 },

    #[error("tube half-width {epsilon} exceeds the boundary reach {reach}")]
    WidthExceedsReach { epsilon: f64, reach: f64 },

    #[error("weight half-width must be positive, got {0}")]
    InvalidWidth(f64),

    #[error("lattice rotations are only supported in 2D")]
    RotationUnsupported,

    #[error("polygon is degenerate: {0}")]
    DegeneratePolygon(String),

    #[error("reference integral did not reach 1e-12 agreement within {0} refinement levels")]
    ReferenceNoConvergence(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
