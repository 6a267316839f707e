//! Points, charts and metric tensors of the two product geometries.
//!
//! Both geometries live in the affine chart x0 = 1 of projective 3-space.
//! A point is written (1, x, y, z). Its fibre norm
//!
//! ```text
//! N(p) = sqrt(x^2 + sigma (y^2 + z^2)),    sigma = +1 (S^2xR) | -1 (H^2xR)
//! ```
//!
//! measures the position along the R factor: the unit level set N = 1 is the
//! base surface (the unit sphere, or the forward sheet x > 0 of the unit
//! hyperboloid), and scaling a point by e^t slides it distance t along the
//! fibre. The model domains are
//!
//! - S^2xR: x^2 + y^2 + z^2 > 0 (everything except the projective origin),
//! - H^2xR: x^2 - y^2 - z^2 > 0 and x > 0 (the open forward cone).

use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::tol;

/// Which of the two product geometries a computation runs in.
///
/// The variant decides the sign `sigma`, the circular/hyperbolic function
/// pair S/C used along translation curves, and the base-surface trigonometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeometryKind {
    SphericalProduct,
    HyperbolicProduct,
}

impl GeometryKind {
    /// +1 for the spherical product, -1 for the hyperbolic one.
    #[inline]
    pub const fn sigma(self) -> f64 {
        match self {
            GeometryKind::SphericalProduct => 1.0,
            GeometryKind::HyperbolicProduct => -1.0,
        }
    }

    /// S(t): sin for the sphere, sinh for the hyperboloid.
    #[inline]
    pub fn s(self, t: f64) -> f64 {
        match self {
            GeometryKind::SphericalProduct => t.sin(),
            GeometryKind::HyperbolicProduct => t.sinh(),
        }
    }

    /// C(t): cos for the sphere, cosh for the hyperboloid.
    #[inline]
    pub fn c(self, t: f64) -> f64 {
        match self {
            GeometryKind::SphericalProduct => t.cos(),
            GeometryKind::HyperbolicProduct => t.cosh(),
        }
    }

    /// Inverse of C with the domain-clamping policy: arguments within
    /// [`tol::ARC_CLAMP`] of the legal domain are clamped onto it, anything
    /// further out is a [`Error::NumericDomain`].
    pub fn arc_c(self, v: f64) -> Result<f64> {
        match self {
            GeometryKind::SphericalProduct => clamped_acos(v),
            GeometryKind::HyperbolicProduct => clamped_acosh(v),
        }
    }

    /// Whether p lies in the open model domain.
    pub fn contains(self, p: ModelPoint) -> bool {
        let q = p.x * p.x + self.sigma() * p.base_sq();
        match self {
            GeometryKind::SphericalProduct => q > 0.0,
            GeometryKind::HyperbolicProduct => q > 0.0 && p.x > 0.0,
        }
    }

    pub fn validate(self, p: ModelPoint) -> Result<ModelPoint> {
        if p.x.is_finite() && p.y.is_finite() && p.z.is_finite() && self.contains(p) {
            Ok(p)
        } else {
            Err(Error::InvalidPoint {
                geometry: self,
                x: p.x,
                y: p.y,
                z: p.z,
                constraint: self.constraint(),
            })
        }
    }

    /// The defining inequality of the model domain, for error messages.
    pub const fn constraint(self) -> &'static str {
        match self {
            GeometryKind::SphericalProduct => "x^2 + y^2 + z^2 > 0",
            GeometryKind::HyperbolicProduct => "x^2 - y^2 - z^2 > 0 and x > 0",
        }
    }
}

impl fmt::Display for GeometryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeometryKind::SphericalProduct => "S2xR",
            GeometryKind::HyperbolicProduct => "H2xR",
        })
    }
}

impl FromStr for GeometryKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "s2xr" => Ok(GeometryKind::SphericalProduct),
            "h2xr" => Ok(GeometryKind::HyperbolicProduct),
            other => Err(format!("unknown geometry {other:?}, expected s2xr or h2xr")),
        }
    }
}

/// A model point (1, x, y, z) with the homogeneous weight pinned to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ModelPoint {
    /// The origin E0 = (1, 1, 0, 0): fibre level 0 over the base point on
    /// the x-axis. Valid in both geometries.
    pub const ORIGIN: ModelPoint = ModelPoint {
        x: 1.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        ModelPoint { x, y, z }
    }

    /// Divides the weight out of a general homogeneous 4-tuple.
    pub fn from_homogeneous(h: [f64; 4]) -> Result<Self> {
        let w = h[0];
        if w == 0.0 || !w.is_finite() {
            return Err(Error::InvalidWeight { weight: w });
        }
        Ok(ModelPoint::new(h[1] / w, h[2] / w, h[3] / w))
    }

    pub fn homogeneous(self) -> [f64; 4] {
        [1.0, self.x, self.y, self.z]
    }

    /// y^2 + z^2, the squared distance from the y = z = 0 axis.
    #[inline]
    pub fn base_sq(self) -> f64 {
        self.y * self.y + self.z * self.z
    }

    /// Euclidean distance between the coordinate triples. Not a geometric
    /// quantity; used only as a numerical guard for degeneracy bands.
    pub fn coord_distance(self, other: ModelPoint) -> f64 {
        let (dx, dy, dz) = (self.x - other.x, self.y - other.y, self.z - other.z);
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

pub(crate) fn clamped_acos(v: f64) -> Result<f64> {
    if !((-1.0 - tol::ARC_CLAMP..=1.0 + tol::ARC_CLAMP).contains(&v)) {
        return Err(Error::NumericDomain {
            function: "arccos",
            value: v,
        });
    }
    Ok(v.clamp(-1.0, 1.0).acos())
}

pub(crate) fn clamped_acosh(v: f64) -> Result<f64> {
    if !(v >= 1.0 - tol::ARC_CLAMP) {
        return Err(Error::NumericDomain {
            function: "arccosh",
            value: v,
        });
    }
    Ok(v.max(1.0).acosh())
}

/// N(p) = sqrt(x^2 + sigma (y^2 + z^2)). Positive on the model domain.
pub fn fibre_norm(p: ModelPoint, g: GeometryKind) -> Result<f64> {
    let p = g.validate(p)?;
    Ok((p.x * p.x + g.sigma() * p.base_sq()).sqrt())
}

/// Central projection onto the unit surface N = 1, dividing by N(p).
/// Idempotent up to rounding.
pub fn unit_project(p: ModelPoint, g: GeometryKind) -> Result<ModelPoint> {
    let n = fibre_norm(p, g)?;
    Ok(ModelPoint::new(p.x / n, p.y / n, p.z / n))
}

/// Fibre-adapted coordinates.
///
/// `t` is the position along the fibre (the log of the fibre norm). `polar`
/// is the colatitude theta in [0, pi] for S^2xR and the hyperbolic radius
/// r >= 0 for H^2xR; `phi` in (-pi, pi] turns around the y = z = 0 axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartCoords {
    pub t: f64,
    pub polar: f64,
    pub phi: f64,
}

impl ChartCoords {
    pub const fn new(t: f64, polar: f64, phi: f64) -> Self {
        ChartCoords { t, polar, phi }
    }
}

/// Maps chart coordinates to the model:
///
/// ```text
/// S^2xR: (e^t cos theta, e^t sin theta cos phi, e^t sin theta sin phi)
/// H^2xR: (e^t cosh r,    e^t sinh r cos phi,    e^t sinh r sin phi)
/// ```
pub fn chart_to_model(c: ChartCoords, g: GeometryKind) -> Result<ModelPoint> {
    validate_chart(c, g)?;
    let e = c.t.exp();
    let (sp, cp) = c.phi.sin_cos();
    let point = match g {
        GeometryKind::SphericalProduct => {
            let (st, ct) = c.polar.sin_cos();
            ModelPoint::new(e * ct, e * st * cp, e * st * sp)
        }
        GeometryKind::HyperbolicProduct => ModelPoint::new(
            e * c.polar.cosh(),
            e * c.polar.sinh() * cp,
            e * c.polar.sinh() * sp,
        ),
    };
    g.validate(point)
}

/// Inverse of [`chart_to_model`]. On the axis y = z = 0 the turning angle is
/// conventionally 0.
pub fn model_to_chart(p: ModelPoint, g: GeometryKind) -> Result<ChartCoords> {
    let n = fibre_norm(p, g)?;
    let w = p.y.hypot(p.z);
    let phi = if w == 0.0 { 0.0 } else { p.z.atan2(p.y) };
    let polar = match g {
        GeometryKind::SphericalProduct => w.atan2(p.x),
        GeometryKind::HyperbolicProduct => (w / n).asinh(),
    };
    Ok(ChartCoords::new(n.ln(), polar, phi))
}

fn validate_chart(c: ChartCoords, g: GeometryKind) -> Result<()> {
    let ok_angle = c.phi.is_finite() && c.phi.abs() <= std::f64::consts::PI + tol::ARC_CLAMP;
    let ok_polar = match g {
        GeometryKind::SphericalProduct => {
            c.polar >= -tol::ARC_CLAMP && c.polar <= std::f64::consts::PI + tol::ARC_CLAMP
        }
        GeometryKind::HyperbolicProduct => c.polar >= -tol::ARC_CLAMP && c.polar.is_finite(),
    };
    if c.t.is_finite() && ok_angle && ok_polar {
        Ok(())
    } else {
        Err(Error::InvalidChart {
            detail: format!(
                "(t, polar, phi) = ({}, {}, {}) for {}",
                c.t, c.polar, c.phi, g
            ),
        })
    }
}

/// Symmetric positive definite 3x3 metric tensor in model coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricTensor {
    m: Matrix3<f64>,
}

impl MetricTensor {
    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.m
    }

    /// The squared length of a coordinate velocity v at the tensor's point.
    pub fn quadratic(&self, v: &Vector3<f64>) -> f64 {
        (self.m * v).dot(v)
    }
}

/// The metric tensor of g at p, in the model coordinates (x, y, z).
///
/// For S^2xR this is the conformal tensor I / (x^2 + y^2 + z^2); for H^2xR a
/// full symmetric tensor divided by (x^2 - y^2 - z^2)^2. Both reduce to the
/// identity at the origin, so angles between tangents at E0 are Euclidean.
pub fn metric_at(p: ModelPoint, g: GeometryKind) -> Result<MetricTensor> {
    let p = g.validate(p)?;
    let (x, y, z) = (p.x, p.y, p.z);
    let m = match g {
        GeometryKind::SphericalProduct => {
            let q = x * x + y * y + z * z;
            Matrix3::identity() / q
        }
        GeometryKind::HyperbolicProduct => {
            let q = x * x - y * y - z * z;
            Matrix3::new(
                x * x + y * y + z * z,
                -2.0 * x * y,
                -2.0 * x * z,
                -2.0 * x * y,
                x * x + y * y - z * z,
                2.0 * y * z,
                -2.0 * x * z,
                2.0 * y * z,
                x * x - y * y + z * z,
            ) / (q * q)
        }
    };
    Ok(MetricTensor { m })
}

fn require_unit(p: ModelPoint, g: GeometryKind) -> Result<ModelPoint> {
    let n = fibre_norm(p, g)?;
    let deviation = (n - 1.0).abs();
    if deviation > tol::UNIT_SURFACE {
        return Err(Error::NotOnUnitSurface { deviation });
    }
    Ok(p)
}

/// Intrinsic distance between two points of the base surface (fibre norm 1):
/// the spherical angle arccos of the dot product, or the hyperbolic
/// arccosh of the Minkowski product x1 x2 - y1 y2 - z1 z2.
pub fn base_distance(a: ModelPoint, b: ModelPoint, g: GeometryKind) -> Result<f64> {
    let a = require_unit(a, g)?;
    let b = require_unit(b, g)?;
    match g {
        GeometryKind::SphericalProduct => clamped_acos(a.x * b.x + a.y * b.y + a.z * b.z),
        GeometryKind::HyperbolicProduct => clamped_acosh(a.x * b.x - a.y * b.y - a.z * b.z),
    }
}

/// The angle of the base-surface triangle (p, a, b) at the vertex p, solved
/// from the spherical or hyperbolic law of cosines.
///
/// Undefined when p coincides with a corner, or (on the sphere) is antipodal
/// to one; those cases return [`Error::DegenerateTriangle`].
pub fn base_angle_at(p: ModelPoint, a: ModelPoint, b: ModelPoint, g: GeometryKind) -> Result<f64> {
    let d1 = base_distance(p, a, g)?;
    let d2 = base_distance(p, b, g)?;
    let d0 = base_distance(a, b, g)?;
    let (s1, s2) = (g.s(d1), g.s(d2));
    if s1.abs() <= tol::COINCIDENT || s2.abs() <= tol::COINCIDENT {
        return Err(Error::DegenerateTriangle {
            detail: "vertex coincides with a corner, or is antipodal to one",
        });
    }
    let cos_gamma = match g {
        GeometryKind::SphericalProduct => (d0.cos() - d1.cos() * d2.cos()) / (s1 * s2),
        GeometryKind::HyperbolicProduct => (d1.cosh() * d2.cosh() - d0.cosh()) / (s1 * s2),
    };
    clamped_acos(cos_gamma)
}
