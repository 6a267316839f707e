//! Deterministic fixtures shared by the benchmarks.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use isoptics_core::{chart_to_model, ChartCoords, GeometryKind, ModelPoint};

pub const GEOMETRIES: [GeometryKind; 2] = [
    GeometryKind::SphericalProduct,
    GeometryKind::HyperbolicProduct,
];

/// Seeded off-axis point cloud over the usual chart box, the same spread
/// the test suites sample from.
pub fn fixed_points(g: GeometryKind, count: usize) -> Vec<ModelPoint> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let pi = std::f64::consts::PI;
    (0..count)
        .map(|_| {
            let t = rng.random_range(-1.5..=1.5);
            let polar = match g {
                GeometryKind::SphericalProduct => rng.random_range(0.05..=pi - 0.05),
                GeometryKind::HyperbolicProduct => rng.random_range(0.05..=2.0),
            };
            let phi = rng.random_range(-pi..=pi);
            chart_to_model(ChartCoords::new(t, polar, phi), g).expect("chart box is valid")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_deterministic_and_sized() {
        for g in GEOMETRIES {
            let a = fixed_points(g, 64);
            let b = fixed_points(g, 64);
            assert_eq!(a.len(), 64);
            assert_eq!(a, b);
        }
    }
}
