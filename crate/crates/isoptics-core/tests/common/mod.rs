//! Seeded chart-space samplers shared by the integration tests.

#![allow(dead_code)]

use isoptics_core::{chart_to_model, ChartCoords, GeometryKind, ModelPoint};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const GEOMETRIES: [GeometryKind; 2] = [
    GeometryKind::SphericalProduct,
    GeometryKind::HyperbolicProduct,
];

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform over a chart box: t in [-1.5, 1.5], phi in (-pi, pi], polar over
/// [0, pi] for S2xR and over [0, 2] for H2xR. Every draw is a valid model
/// point.
pub fn sample_point(rng: &mut ChaCha8Rng, g: GeometryKind) -> ModelPoint {
    let t = rng.random_range(-1.5..=1.5);
    let polar = match g {
        GeometryKind::SphericalProduct => rng.random_range(0.0..=std::f64::consts::PI),
        GeometryKind::HyperbolicProduct => rng.random_range(0.0..=2.0),
    };
    let phi = rng.random_range(-std::f64::consts::PI..=std::f64::consts::PI);
    chart_to_model(ChartCoords::new(t, polar, phi), g).expect("chart box stays in the domain")
}

/// Like [`sample_point`] with the polar angle kept off the fibre axis on
/// both ends, so w = hypot(y, z) is bounded below and, for S2xR, the point
/// stays clear of the antipodal axis as well.
pub fn sample_point_off_axis(rng: &mut ChaCha8Rng, g: GeometryKind) -> ModelPoint {
    let t = rng.random_range(-1.5..=1.5);
    let polar = match g {
        GeometryKind::SphericalProduct => rng.random_range(0.05..=std::f64::consts::PI - 0.05),
        GeometryKind::HyperbolicProduct => rng.random_range(0.05..=2.0),
    };
    let phi = rng.random_range(-std::f64::consts::PI..=std::f64::consts::PI);
    chart_to_model(ChartCoords::new(t, polar, phi), g).expect("chart box stays in the domain")
}

/// Curve direction drawn uniformly from the full parameter rectangle.
pub fn sample_params(rng: &mut ChaCha8Rng) -> isoptics_core::CurveParams {
    let u = rng.random_range(-std::f64::consts::PI..=std::f64::consts::PI);
    let v = rng.random_range(-std::f64::consts::FRAC_PI_2..=std::f64::consts::FRAC_PI_2);
    isoptics_core::CurveParams::new(u, v).expect("rectangle is the valid range")
}
