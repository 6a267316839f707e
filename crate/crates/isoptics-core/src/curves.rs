//! Translation curves, the distances they induce, and distance spheres.
//!
//! A translation curve starts at the origin E0 with unit initial velocity
//! (sin v, cos v cos u, cos v sin u) and follows the left-invariant field
//! that velocity generates. In model coordinates, with S/C the circular or
//! hyperbolic sine/cosine pair of the geometry,
//!
//! ```text
//! x(tau) = e^(tau sin v) C(tau cos v)
//! y(tau) = e^(tau sin v) S(tau cos v) cos u
//! z(tau) = e^(tau sin v) S(tau cos v) sin u
//! ```
//!
//! The parameter tau is arc length: the curves have unit speed in the
//! product metric, which [`oracle_arc_length`] checks by independent
//! numerical integration. Inverting the curve map gives [`tangent_to`] and
//! the translation distance, realized for general point pairs by pulling
//! the pair back to the origin first.

use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::geometry::{fibre_norm, metric_at, GeometryKind, ModelPoint};
use crate::isometry::pullback_matrix;
use crate::tol;

/// Direction of a translation curve: u turns around the fibre axis,
/// v in [-pi/2, pi/2] pitches toward the fibre (v = pi/2 runs straight up).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveParams {
    pub u: f64,
    pub v: f64,
}

impl CurveParams {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        let ok_u = u.is_finite() && u.abs() <= std::f64::consts::PI + tol::ARC_CLAMP;
        if !ok_u {
            return Err(Error::NumericDomain {
                function: "curve direction u",
                value: u,
            });
        }
        let ok_v = v.is_finite() && v.abs() <= std::f64::consts::FRAC_PI_2 + tol::ARC_CLAMP;
        if !ok_v {
            return Err(Error::NumericDomain {
                function: "curve direction v",
                value: v,
            });
        }
        Ok(CurveParams { u, v })
    }
}

/// The point of the translation curve with direction `params` at arc
/// length `tau`. Defined for all real tau; the curve never leaves the
/// model domain.
pub fn translation_curve(params: CurveParams, tau: f64, g: GeometryKind) -> Result<ModelPoint> {
    if !tau.is_finite() {
        return Err(Error::NumericDomain {
            function: "curve parameter tau",
            value: tau,
        });
    }
    let (sv, cv) = (params.v.sin(), params.v.cos());
    let e = (tau * sv).exp();
    let arg = tau * cv;
    let (su, cu) = params.u.sin_cos();
    let p = ModelPoint::new(e * g.c(arg), e * g.s(arg) * cu, e * g.s(arg) * su);
    g.validate(p)
}

/// Coordinate velocity of the translation curve at arc length tau,
/// differentiated analytically.
fn curve_velocity(params: CurveParams, tau: f64, g: GeometryKind) -> Vector3<f64> {
    let (sv, cv) = (params.v.sin(), params.v.cos());
    let e = (tau * sv).exp();
    let arg = tau * cv;
    let (s_arg, c_arg) = (g.s(arg), g.c(arg));
    let radial = sv * s_arg + cv * c_arg;
    let (su, cu) = params.u.sin_cos();
    Vector3::new(
        e * (sv * c_arg - g.sigma() * cv * s_arg),
        e * radial * cu,
        e * radial * su,
    )
}

/// Signed distance of p from the vertical plane containing the curve with
/// direction u: sin(u) y - cos(u) z. Zero along the whole curve.
pub fn curve_plane_residual(params: CurveParams, p: ModelPoint) -> f64 {
    params.u.sin() * p.y - params.u.cos() * p.z
}

/// A tangent vector at the origin E0, where the metric tensor is the
/// identity: fibre is the component along the R factor, (y, z) the base
/// components. Lengths and angles are therefore Euclidean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVector {
    pub fibre: f64,
    pub y: f64,
    pub z: f64,
}

impl TangentVector {
    pub fn norm(self) -> f64 {
        (self.fibre * self.fibre + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn dot(self, other: TangentVector) -> f64 {
        self.fibre * other.fibre + self.y * other.y + self.z * other.z
    }

    /// The angle between two tangents at E0, in [0, pi].
    pub fn angle_between(self, other: TangentVector) -> Result<f64> {
        let (n1, n2) = (self.norm(), other.norm());
        if n1 <= tol::COINCIDENT || n2 <= tol::COINCIDENT {
            return Err(Error::ZeroVector);
        }
        crate::geometry::clamped_acos(self.dot(other) / (n1 * n2))
    }
}

/// The initial velocity, scaled by arc length, of the translation curve
/// from E0 to p: the vector tau (sin v, cos v cos u, cos v sin u) whose
/// curve reaches p at parameter tau. Its norm is the translation distance
/// of p from the origin.
///
/// On the axis y = z = 0 the direction u is not determined; the u = 0
/// representative is returned.
pub fn tangent_to(p: ModelPoint, g: GeometryKind) -> Result<TangentVector> {
    let n = fibre_norm(p, g)?;
    let d = g.arc_c(p.x / n)?;
    let w = p.y.hypot(p.z);
    if w == 0.0 {
        return Ok(TangentVector {
            fibre: n.ln(),
            y: d,
            z: 0.0,
        });
    }
    Ok(TangentVector {
        fibre: n.ln(),
        y: p.y / w * d,
        z: p.z / w * d,
    })
}

/// Translation distance from E0: sqrt(ln^2 N + arcC^2(x / N)), the
/// Pythagorean sum of the fibre offset and the base distance.
pub fn distance_from_origin(p: ModelPoint, g: GeometryKind) -> Result<f64> {
    let n = fibre_norm(p, g)?;
    let d = g.arc_c(p.x / n)?;
    let t = n.ln();
    Ok((t * t + d * d).sqrt())
}

/// Translation distance between two points: the distance of q from the
/// origin after pulling p back to it.
pub fn distance(p: ModelPoint, q: ModelPoint, g: GeometryKind) -> Result<f64> {
    let pulled = pullback_matrix(p, g)?.apply(q)?;
    distance_from_origin(pulled, g)
}

/// Sampling plan for a translation-distance sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereSpec {
    pub radius: f64,
    pub n_u: usize,
    pub n_v: usize,
}

impl SphereSpec {
    pub fn new(radius: f64, n_u: usize, n_v: usize) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidRadius { radius });
        }
        if n_u < 1 || n_v < 2 {
            return Err(Error::InvalidGrid {
                detail: format!("a sphere sample needs n_u >= 1 and n_v >= 2, got {n_u} x {n_v}"),
            });
        }
        Ok(SphereSpec { radius, n_u, n_v })
    }
}

/// Points of the translation-distance sphere around `center`, one per node
/// of a direction grid: u runs over n_u values in (-pi, pi], v over n_v
/// values in [-pi/2, pi/2] inclusive. The two v endpoints collapse to the
/// fibre poles for every u.
pub fn sphere_points(
    center: ModelPoint,
    spec: SphereSpec,
    g: GeometryKind,
) -> Result<Vec<ModelPoint>> {
    let push_forward = pullback_matrix(center, g)?.inverse()?;
    let mut points = Vec::with_capacity(spec.n_u * spec.n_v);
    for i in 0..spec.n_u {
        let u =
            -std::f64::consts::PI + 2.0 * std::f64::consts::PI * (i + 1) as f64 / spec.n_u as f64;
        for j in 0..spec.n_v {
            let v = -std::f64::consts::FRAC_PI_2
                + std::f64::consts::PI * j as f64 / (spec.n_v - 1) as f64;
            let on_unit_sphere = translation_curve(CurveParams::new(u, v)?, spec.radius, g)?;
            points.push(push_forward.apply(on_unit_sphere)?);
        }
    }
    Ok(points)
}

/// Implicit residual of the distance sphere: d(center, p)^2 - radius^2,
/// negative inside, zero on the sphere.
pub fn sphere_residual(
    p: ModelPoint,
    center: ModelPoint,
    radius: f64,
    g: GeometryKind,
) -> Result<f64> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::InvalidRadius { radius });
    }
    let d = distance(center, p, g)?;
    Ok(d * d - radius * radius)
}

/// Abscissas and weights of 8-point Gauss-Legendre quadrature on [-1, 1].
const GL8: [(f64, f64); 8] = [
    (-0.9602898564975363, 0.1012285362903763),
    (-0.7966664774136267, 0.2223810344533745),
    (-0.5255324099163290, 0.3137066458778873),
    (-0.1834346424956498, 0.3626837833783620),
    (0.1834346424956498, 0.3626837833783620),
    (0.5255324099163290, 0.3137066458778873),
    (0.7966664774136267, 0.2223810344533745),
    (0.9602898564975363, 0.1012285362903763),
];

fn speed(params: CurveParams, tau: f64, g: GeometryKind) -> Result<f64> {
    let p = translation_curve(params, tau, g)?;
    let metric = metric_at(p, g)?;
    Ok(metric.quadratic(&curve_velocity(params, tau, g)).sqrt())
}

fn gl8_composite(
    params: CurveParams,
    a: f64,
    b: f64,
    panels: usize,
    g: GeometryKind,
) -> Result<f64> {
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for k in 0..panels {
        let mid = a + (k as f64 + 0.5) * h;
        for (node, weight) in GL8 {
            total += weight * speed(params, mid + 0.5 * h * node, g)?;
        }
    }
    Ok(total * 0.5 * h)
}

/// Independent arc length of the translation curve over [0, tau]: composite
/// 8-point Gauss-Legendre on `steps` panels, with the panel count doubled
/// until two successive estimates agree to [`tol::ORACLE_TOL`] or the
/// evaluation budget [`tol::ORACLE_MAX_EVALS`] runs out.
///
/// Integrates the metric speed sqrt(v' G v) of the analytic coordinate
/// velocity; shares no code path with [`distance_from_origin`].
pub fn oracle_arc_length(
    params: CurveParams,
    tau: f64,
    g: GeometryKind,
    steps: usize,
) -> Result<f64> {
    assert!(
        steps >= 100,
        "arc length oracle needs at least 100 panels, got {steps}"
    );
    if !tau.is_finite() {
        return Err(Error::NumericDomain {
            function: "curve parameter tau",
            value: tau,
        });
    }
    let (a, b) = if tau >= 0.0 { (0.0, tau) } else { (tau, 0.0) };
    if a == b {
        return Ok(0.0);
    }
    let mut panels = steps;
    let mut prev = gl8_composite(params, a, b, panels, g)?;
    let mut evals = 8 * panels;
    loop {
        panels *= 2;
        let cur = gl8_composite(params, a, b, panels, g)?;
        evals += 8 * panels;
        if (cur - prev).abs() <= tol::ORACLE_TOL || evals >= tol::ORACLE_MAX_EVALS {
            return Ok(cur);
        }
        prev = cur;
    }
}
