//! Subtended angles of a segment and the implicit isoptic residual.
//!
//! The segment is kept in canonical position: the first endpoint is the
//! origin E0 and the second, A2, anywhere else in the domain.
//! [`normalize_segment`] brings a general endpoint pair into this position.
//!
//! The angle under which an external point p sees the segment is computed
//! along two independent routes that the tests hold against each other:
//!
//! - the direct route pulls p back to the origin and measures the
//!   Euclidean angle between the tangents pointing at the two transported
//!   endpoints (the metric at E0 is the identity);
//! - the closed form combines the fibre offsets L1, L2 of the endpoints
//!   relative to p with the base distances d1, d2 of their projections
//!   and the base angle gamma between them:
//!
//!   ```text
//!   cos theta = (d1 d2 cos gamma + L1 L2)
//!             / sqrt((L1^2 + d1^2) (L2^2 + d2^2))
//!   ```
//!
//!   where L^2 + d^2 is exactly the squared translation distance from p to
//!   the endpoint, by the product structure of the metric.
//!
//! The isoptic surface for a sight angle alpha is the zero set of the
//! residual cos(alpha) - cos(theta(p)), positive where the segment
//! subtends more than alpha.

use std::fmt;
use std::str::FromStr;

use crate::curves::tangent_to;
use crate::error::{Error, Result};
use crate::geometry::{
    base_angle_at, base_distance, clamped_acos, fibre_norm, unit_project, GeometryKind, ModelPoint,
};
use crate::isometry::{pullback_matrix, Isometry4};
use crate::tol;

/// A segment in canonical position (E0 to `a2`) together with the target
/// sight angle. Construction validates the data once so that residual
/// evaluation can run over large point grids without re-checking it.
#[derive(Debug, Clone, PartialEq)]
pub struct IsopticProblem {
    geometry: GeometryKind,
    a2: ModelPoint,
    alpha: f64,
    cos_alpha: f64,
}

impl IsopticProblem {
    /// `alpha` is in radians, strictly between 0 and pi.
    pub fn new(geometry: GeometryKind, a2: ModelPoint, alpha: f64) -> Result<Self> {
        let a2 = geometry.validate(a2)?;
        if a2.coord_distance(ModelPoint::ORIGIN) <= tol::DEGENERACY_BAND {
            return Err(Error::DegenerateSegment);
        }
        if !(alpha.is_finite() && alpha > 0.0 && alpha < std::f64::consts::PI) {
            return Err(Error::InvalidAngle { alpha });
        }
        Ok(IsopticProblem {
            geometry,
            a2,
            alpha,
            cos_alpha: alpha.cos(),
        })
    }

    pub fn geometry(&self) -> GeometryKind {
        self.geometry
    }

    pub fn a2(&self) -> ModelPoint {
        self.a2
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// A general segment brought into canonical position.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedSegment {
    /// Image of the second endpoint under `to_canonical`.
    pub a2: ModelPoint,
    /// The isometry carrying the first endpoint to E0. Apply it to points
    /// given in the original coordinates; its inverse carries canonical
    /// results back.
    pub to_canonical: Isometry4,
}

/// Moves the segment (a1, a2) into canonical position by the pullback of
/// a1. Endpoints closer than the degeneracy band do not span a segment.
pub fn normalize_segment(
    a1: ModelPoint,
    a2: ModelPoint,
    g: GeometryKind,
) -> Result<NormalizedSegment> {
    let a1 = g.validate(a1)?;
    let a2 = g.validate(a2)?;
    if a1.coord_distance(a2) <= tol::DEGENERACY_BAND {
        return Err(Error::DegenerateSegment);
    }
    let to_canonical = pullback_matrix(a1, g)?;
    let a2 = to_canonical.apply(a2)?;
    if a2.coord_distance(ModelPoint::ORIGIN) <= tol::DEGENERACY_BAND {
        return Err(Error::DegenerateSegment);
    }
    Ok(NormalizedSegment { a2, to_canonical })
}

/// Both cosine routes evaluated at one point, and the angle in [0, pi]
/// taken from the direct route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleResult {
    pub angle: f64,
    pub cos_direct: f64,
    pub cos_closed_form: f64,
}

fn screen_point(p: ModelPoint, a2: ModelPoint, g: GeometryKind) -> Result<ModelPoint> {
    let p = g.validate(p)?;
    if p.coord_distance(ModelPoint::ORIGIN) <= tol::DEGENERACY_BAND
        || p.coord_distance(a2) <= tol::DEGENERACY_BAND
    {
        return Err(Error::DegenerateVertex);
    }
    Ok(p)
}

/// Rejects points whose base projection is antipodal to the base origin;
/// the direction toward such a projection is not determined.
fn check_projection(b: ModelPoint, g: GeometryKind) -> Result<ModelPoint> {
    if g == GeometryKind::SphericalProduct
        && b.x < 0.0
        && b.y.hypot(b.z) < tol::COINCIDENT * fibre_norm(b, g)?
    {
        return Err(Error::DegenerateProjection);
    }
    Ok(b)
}

fn cos_direct(p: ModelPoint, a2: ModelPoint, g: GeometryKind) -> Result<f64> {
    let m = pullback_matrix(p, g)?;
    let b1 = check_projection(m.apply(ModelPoint::ORIGIN)?, g)?;
    let b2 = check_projection(m.apply(a2)?, g)?;
    let t1 = tangent_to(b1, g)?;
    let t2 = tangent_to(b2, g)?;
    let (n1, n2) = (t1.norm(), t2.norm());
    if n1 <= tol::COINCIDENT || n2 <= tol::COINCIDENT {
        return Err(Error::DegenerateVertex);
    }
    Ok((t1.dot(t2) / (n1 * n2)).clamp(-1.0, 1.0))
}

fn cos_closed_form(p: ModelPoint, a2: ModelPoint, g: GeometryKind) -> Result<f64> {
    let n_p = fibre_norm(p, g)?;
    let n_2 = fibre_norm(a2, g)?;
    let proj_p = unit_project(p, g)?;
    let proj_1 = ModelPoint::ORIGIN;
    let proj_2 = unit_project(a2, g)?;

    let d1 = base_distance(proj_p, proj_1, g)?;
    let d2 = base_distance(proj_p, proj_2, g)?;
    let d0 = base_distance(proj_1, proj_2, g)?;
    if g == GeometryKind::SphericalProduct {
        let pi = std::f64::consts::PI;
        if pi - d1 <= tol::COINCIDENT || pi - d2 <= tol::COINCIDENT {
            return Err(Error::DegenerateProjection);
        }
    }
    let cos_gamma = if d0.min(d1).min(d2) <= tol::BASE_COLLAPSE {
        1.0
    } else {
        base_angle_at(proj_p, proj_1, proj_2, g)?.cos()
    };

    let l1 = -n_p.ln();
    let l2 = n_2.ln() - n_p.ln();
    let q1 = l1 * l1 + d1 * d1;
    let q2 = l2 * l2 + d2 * d2;
    if q1 <= tol::COINCIDENT * tol::COINCIDENT || q2 <= tol::COINCIDENT * tol::COINCIDENT {
        return Err(Error::DegenerateVertex);
    }
    Ok(((d1 * d2 * cos_gamma + l1 * l2) / (q1 * q2).sqrt()).clamp(-1.0, 1.0))
}

/// The angle at p between the tangents toward the two endpoints, from the
/// pullback route.
pub fn angle_direct(p: ModelPoint, a2: ModelPoint, g: GeometryKind) -> Result<f64> {
    let p = screen_point(p, a2, g)?;
    clamped_acos(cos_direct(p, a2, g)?)
}

/// The same angle from the fibre/base decomposition.
pub fn angle_closed_form(p: ModelPoint, a2: ModelPoint, g: GeometryKind) -> Result<f64> {
    let p = screen_point(p, a2, g)?;
    clamped_acos(cos_closed_form(p, a2, g)?)
}

/// Both routes at once. The angle field comes from the direct route.
pub fn subtended_angle(p: ModelPoint, a2: ModelPoint, g: GeometryKind) -> Result<AngleResult> {
    let p = screen_point(p, a2, g)?;
    let cd = cos_direct(p, a2, g)?;
    let cc = cos_closed_form(p, a2, g)?;
    Ok(AngleResult {
        angle: clamped_acos(cd)?,
        cos_direct: cd,
        cos_closed_form: cc,
    })
}

/// cos(alpha) - cos(theta(p)), the implicit function whose zero set is the
/// isoptic surface. Uses the closed-form cosine; the two routes agree far
/// below any tolerance the surface extraction works at.
pub fn isoptic_residual(problem: &IsopticProblem, p: ModelPoint) -> Result<f64> {
    let p = screen_point(p, problem.a2, problem.geometry)?;
    Ok(problem.cos_alpha - cos_closed_form(p, problem.a2, problem.geometry)?)
}

/// Which zero set to extract: the alpha surface, its supplement (sight
/// angle pi - alpha), or the union of both.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceSelector {
    Alpha,
    Supplement,
    Union,
}

impl fmt::Display for SurfaceSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurfaceSelector::Alpha => "alpha",
            SurfaceSelector::Supplement => "supplement",
            SurfaceSelector::Union => "union",
        })
    }
}

impl FromStr for SurfaceSelector {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "alpha" => Ok(SurfaceSelector::Alpha),
            "supplement" => Ok(SurfaceSelector::Supplement),
            "union" => Ok(SurfaceSelector::Union),
            other => Err(format!(
                "unknown surface selector {other:?}, expected alpha, supplement or union"
            )),
        }
    }
}

/// The residual for the selected surface. The union variant multiplies the
/// residuals of the two sight angles so that its zero set is the union of
/// the two surfaces; at alpha = pi/2 the surfaces coincide and the plain
/// residual is used instead, keeping a sign change across the surface.
pub fn selected_residual(
    problem: &IsopticProblem,
    selector: SurfaceSelector,
    p: ModelPoint,
) -> Result<f64> {
    let p = screen_point(p, problem.a2, problem.geometry)?;
    let cos_theta = cos_closed_form(p, problem.a2, problem.geometry)?;
    Ok(match selector {
        SurfaceSelector::Alpha => problem.cos_alpha - cos_theta,
        SurfaceSelector::Supplement => -problem.cos_alpha - cos_theta,
        SurfaceSelector::Union => {
            if problem.cos_alpha.abs() <= tol::COINCIDENT {
                problem.cos_alpha - cos_theta
            } else {
                (problem.cos_alpha - cos_theta) * (-problem.cos_alpha - cos_theta)
            }
        }
    })
}

/// Center and radius of the sphere from which the fibre segment between E0
/// and (1, a, 0, 0) is seen at a right angle: the translation sphere around
/// (1, sqrt(a), 0, 0) with radius |ln a| / 2. Both endpoints lie on it, and
/// every other point of it sees the segment at 90 degrees, in either
/// geometry.
pub fn thaloid_sphere(a: f64, g: GeometryKind) -> Result<(ModelPoint, f64)> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::NumericDomain {
            function: "thaloid endpoint a",
            value: a,
        });
    }
    if (a - 1.0).abs() <= tol::COINCIDENT {
        return Err(Error::DegenerateSegment);
    }
    let center = g.validate(ModelPoint::new(a.sqrt(), 0.0, 0.0))?;
    Ok((center, a.ln().abs() / 2.0))
}
