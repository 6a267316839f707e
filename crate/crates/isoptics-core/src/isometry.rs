//! Isometries of the product geometries as 4x4 projective matrices.
//!
//! Matrices act on homogeneous row vectors: the image of p = (1, x, y, z)
//! is p * M, and `a.then(&b)` composes left to right. Every matrix built
//! here fixes the weight coordinate, so images of model points stay in the
//! affine chart x0 = 1.
//!
//! The workhorse is [`pullback_matrix`]: for a point p it returns the
//! isometry carrying p to the origin E0, assembled as
//!
//! ```text
//! M(p) = T(-ln N) * R_x * R_z * R_x^-1
//! ```
//!
//! where T slides p's fibre level to 0, R_x turns the base projection into
//! the half-plane z = 0, y >= 0, and R_z moves it along that plane to the
//! base origin. Conjugating R_z by R_x keeps the construction independent
//! of the turning convention on the axis y = z = 0.

use nalgebra::{Matrix4, RowVector4};

use crate::error::{Error, Result};
use crate::geometry::{fibre_norm, GeometryKind, ModelPoint};

/// An isometry of a fixed product geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry4 {
    m: Matrix4<f64>,
    geometry: GeometryKind,
}

impl Isometry4 {
    pub fn identity(geometry: GeometryKind) -> Self {
        Isometry4 {
            m: Matrix4::identity(),
            geometry,
        }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.m
    }

    pub fn geometry(&self) -> GeometryKind {
        self.geometry
    }

    /// The image p * M, normalized back to weight 1 and validated against
    /// the model domain. An invalid input maps to an invalid output (the
    /// matrices preserve the defining quadratic form), so this also rejects
    /// points the isometry was never defined on.
    pub fn apply(&self, p: ModelPoint) -> Result<ModelPoint> {
        let row = RowVector4::new(1.0, p.x, p.y, p.z) * self.m;
        let q = ModelPoint::from_homogeneous([row[0], row[1], row[2], row[3]])?;
        self.geometry.validate(q)
    }

    /// Composition applying `self` first, then `other`.
    pub fn then(&self, other: &Isometry4) -> Isometry4 {
        assert_eq!(
            self.geometry, other.geometry,
            "composed isometries must act on the same geometry"
        );
        Isometry4 {
            m: self.m * other.m,
            geometry: self.geometry,
        }
    }

    pub fn inverse(&self) -> Result<Isometry4> {
        let m = self.m.try_inverse().ok_or(Error::SingularIsometry)?;
        Ok(Isometry4 {
            m,
            geometry: self.geometry,
        })
    }
}

/// Translation by distance t along the fibre factor: diag{1, e^t, e^t, e^t}.
pub fn fibre_translation(t: f64, g: GeometryKind) -> Result<Isometry4> {
    if !t.is_finite() {
        return Err(Error::NumericDomain {
            function: "fibre_translation",
            value: t,
        });
    }
    let e = t.exp();
    let m = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, e, e, e));
    Ok(Isometry4 { m, geometry: g })
}

/// Rotation by `angle` about the fibre axis y = z = 0, counterclockwise in
/// the (y, z) plane. An isometry of both geometries.
pub fn yz_rotation(angle: f64, g: GeometryKind) -> Result<Isometry4> {
    if !angle.is_finite() {
        return Err(Error::NumericDomain {
            function: "yz_rotation",
            value: angle,
        });
    }
    let (s, c) = angle.sin_cos();
    // axis_rotation(c, s) turns clockwise in this row-vector convention.
    Ok(axis_rotation(c, -s, g))
}

fn axis_rotation(c: f64, s: f64, g: GeometryKind) -> Isometry4 {
    let m = Matrix4::new(
        1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, c, -s, 0.0, 0.0, s, c,
    );
    Isometry4 { m, geometry: g }
}

/// The axis rotation R_x aligning p with the half-plane z = 0, y >= 0:
/// the image of p has coordinates (x, hypot(y, z), 0). Identity for points
/// already on the axis.
pub fn rotation_x(p: ModelPoint, g: GeometryKind) -> Result<Isometry4> {
    let p = g.validate(p)?;
    let w = p.y.hypot(p.z);
    if w == 0.0 {
        return Ok(Isometry4::identity(g));
    }
    Ok(axis_rotation(p.y / w, p.z / w, g))
}

/// The base rotation R_z carrying the unit projection of R_x(p) to the
/// base origin. With X = x/N and W = hypot(y, z)/N it reads
///
/// ```text
/// | 1  0          0    0 |
/// | 0  X         -W    0 |
/// | 0  sigma W    X    0 |
/// | 0  0          0    1 |
/// ```
///
/// a rotation of the sphere for S^2xR and a boost of the hyperboloid for
/// H^2xR (X^2 + sigma W^2 = 1 on the model domain).
pub fn rotation_z(p: ModelPoint, g: GeometryKind) -> Result<Isometry4> {
    let n = fibre_norm(p, g)?;
    let x = p.x / n;
    let w = p.y.hypot(p.z) / n;
    let m = Matrix4::new(
        1.0,
        0.0,
        0.0,
        0.0,
        0.0,
        x,
        -w,
        0.0,
        0.0,
        g.sigma() * w,
        x,
        0.0,
        0.0,
        0.0,
        0.0,
        1.0,
    );
    Ok(Isometry4 { m, geometry: g })
}

/// The isometry carrying p to the origin E0.
pub fn pullback_matrix(p: ModelPoint, g: GeometryKind) -> Result<Isometry4> {
    let n = fibre_norm(p, g)?;
    let w = p.y.hypot(p.z);
    let (c, s) = if w == 0.0 {
        (1.0, 0.0)
    } else {
        (p.y / w, p.z / w)
    };
    let t = fibre_translation(-n.ln(), g)?;
    let rx = axis_rotation(c, s, g);
    let rz = rotation_z(p, g)?;
    let rx_inv = axis_rotation(c, -s, g);
    Ok(t.then(&rx).then(&rz).then(&rx_inv))
}
