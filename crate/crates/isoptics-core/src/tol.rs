//! Numeric policy constants shared across the kernel.
//!
//! These are tolerances, not machine epsilons: each one says how far a value
//! may drift before the kernel refuses to guess.

/// Slack for arccos / arccosh arguments. Values inside the legal domain
/// extended by this margin are clamped onto it; anything further out is an
/// error rather than a silent clamp.
pub const ARC_CLAMP: f64 = 1e-9;

/// Maximum deviation of the fibre norm from 1 accepted by operations that
/// require points on the base surface.
pub const UNIT_SURFACE: f64 = 1e-9;

/// Hard cutoff below which configurations count as exactly degenerate:
/// coincident points, zero tangents, vanishing denominators.
pub const COINCIDENT: f64 = 1e-12;

/// Radius of the exclusion band around segment endpoints (and, in S^2xR,
/// around antipodal base projections). Inside the band angle evaluation is
/// refused and grid samplers mask the node instead of recording a value.
pub const DEGENERACY_BAND: f64 = 1e-6;

/// Absolute tolerance at which the arc-length quadrature oracle stops
/// doubling its panel count.
pub const ORACLE_TOL: f64 = 1e-10;

/// Evaluation budget of the quadrature oracle.
pub const ORACLE_MAX_EVALS: usize = 100_000;

/// Bisection refinement of a mesh vertex stops once the residual magnitude
/// drops below this.
pub const REFINE_TOL: f64 = 1e-5;

/// Iteration cap for the bisection refinement of a single mesh vertex.
pub const REFINE_MAX_STEPS: usize = 50;

/// Base-surface separation below which the triangle angle at the projected
/// vertex is taken as 0. The angle enters the subtended-angle formula only
/// through products with those separations, so the limit is benign; it is
/// exact for segments that run along a single fibre.
pub const BASE_COLLAPSE: f64 = 1e-9;
