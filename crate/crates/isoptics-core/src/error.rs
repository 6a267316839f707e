use crate::geometry::GeometryKind;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong inside the kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point (1, {x}, {y}, {z}) violates {constraint}, required by {geometry}")]
    InvalidPoint {
        geometry: GeometryKind,
        x: f64,
        y: f64,
        z: f64,
        constraint: &'static str,
    },

    #[error("homogeneous weight must be nonzero and finite, got {weight}")]
    InvalidWeight { weight: f64 },

    #[error("chart coordinates out of range: {detail}")]
    InvalidChart { detail: String },

    #[error(
        "point is off the unit surface (fibre norm deviates by {deviation:e}); project it first"
    )]
    NotOnUnitSurface { deviation: f64 },

    #[error("{function} argument {value} lies outside its domain beyond tolerance")]
    NumericDomain { function: &'static str, value: f64 },

    #[error("triangle solve is degenerate: {detail}")]
    DegenerateTriangle { detail: &'static str },

    #[error("translation-curve tangent is undefined at the origin itself")]
    ZeroVector,

    #[error("angle vertex lies on a segment endpoint (within the degeneracy band)")]
    DegenerateVertex,

    #[error(
        "vertex projection is antipodal to an endpoint projection; the base angle is undefined"
    )]
    DegenerateProjection,

    #[error("segment endpoints coincide")]
    DegenerateSegment,

    #[error("sphere radius must be positive and finite, got {radius}")]
    InvalidRadius { radius: f64 },

    #[error("target angle must lie strictly between 0 and pi radians, got {alpha}")]
    InvalidAngle { alpha: f64 },

    #[error("isometry matrix is numerically singular")]
    SingularIsometry,

    #[error("invalid grid: {detail}")]
    InvalidGrid { detail: String },

    #[error("no grid node lies in the valid domain")]
    EmptyDomain,

    #[error("isosurface does not cross the sampled grid")]
    EmptyMesh,
}

/// Coarse classification used by callers that map errors to exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The input itself is outside the domain the kernel works on.
    Domain,
    /// The input is well-formed but the requested quantity is undefined there.
    Degenerate,
    /// Nothing to output.
    Empty,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            InvalidPoint { .. }
            | InvalidWeight { .. }
            | InvalidChart { .. }
            | NotOnUnitSurface { .. }
            | NumericDomain { .. }
            | InvalidRadius { .. }
            | InvalidAngle { .. }
            | InvalidGrid { .. }
            | SingularIsometry => ErrorClass::Domain,
            // Coincident endpoints are classed with domain errors: the caller
            // handed us a segment that is not a segment.
            DegenerateSegment => ErrorClass::Domain,
            DegenerateTriangle { .. } | ZeroVector | DegenerateVertex | DegenerateProjection => {
                ErrorClass::Degenerate
            }
            EmptyDomain | EmptyMesh => ErrorClass::Empty,
        }
    }
}
