//! The metric tensor checked against facts it does not share code with:
//! the polar product form of the line element, and the Gram matrix of the
//! pullback isometry.

mod common;

use common::{rng, sample_point, GEOMETRIES};
use isoptics_core::{
    base_distance, chart_to_model, metric_at, pullback_matrix, unit_project, ChartCoords,
    GeometryKind, ModelPoint,
};
use nalgebra::Matrix3;
use rand::Rng;

/// 4th-order central difference of one model coordinate with respect to one
/// chart coordinate.
fn chart_jacobian(c: ChartCoords, g: GeometryKind, h: f64) -> Matrix3<f64> {
    let eval = |c: ChartCoords| {
        let p = chart_to_model(c, g).expect("perturbed chart stays valid");
        [p.x, p.y, p.z]
    };
    let shift = |c: ChartCoords, axis: usize, d: f64| {
        let mut s = c;
        match axis {
            0 => s.t += d,
            1 => s.polar += d,
            _ => s.phi += d,
        }
        s
    };
    let mut j = Matrix3::zeros();
    for b in 0..3 {
        let f2p = eval(shift(c, b, 2.0 * h));
        let f1p = eval(shift(c, b, h));
        let f1m = eval(shift(c, b, -h));
        let f2m = eval(shift(c, b, -2.0 * h));
        for a in 0..3 {
            j[(a, b)] = (-f2p[a] + 8.0 * f1p[a] - 8.0 * f1m[a] + f2m[a]) / (12.0 * h);
        }
    }
    j
}

/// In chart coordinates the line element must be dt^2 + d(polar)^2 +
/// S(polar)^2 dphi^2. The left side is assembled from the model metric and
/// a numerical Jacobian, neither of which knows that form.
#[test]
fn chart_pullback_of_the_metric_is_the_polar_product_form() {
    let mut rng = rng(11);
    let h = 1e-3;
    for g in GEOMETRIES {
        for _ in 0..200 {
            let t = rng.random_range(-1.5..=1.5);
            let polar = match g {
                GeometryKind::SphericalProduct => {
                    rng.random_range(0.1..=std::f64::consts::PI - 0.1)
                }
                GeometryKind::HyperbolicProduct => rng.random_range(0.1..=1.9),
            };
            let phi = rng.random_range(-3.0..=3.0);
            let c = ChartCoords::new(t, polar, phi);
            let p = chart_to_model(c, g).unwrap();

            let j = chart_jacobian(c, g, h);
            let g_model = *metric_at(p, g).unwrap().matrix();
            let g_chart = j.transpose() * g_model * j;

            let s2 = g.s(polar).powi(2);
            let expected = Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, 1.0, s2));
            for a in 0..3 {
                for b in 0..3 {
                    let diff = (g_chart[(a, b)] - expected[(a, b)]).abs();
                    assert!(
                        diff <= 5e-9 * (1.0 + s2),
                        "{g}: chart metric entry ({a},{b}) off by {diff:.3e} at {c:?}"
                    );
                }
            }
        }
    }
}

/// The pullback isometry carries the metric at p to the identity at the
/// origin, so G(p) must equal B B^T for its lower 3x3 block B (row-vector
/// convention).
#[test]
fn metric_is_the_gram_matrix_of_the_pullback_block() {
    let mut rng = rng(12);
    for g in GEOMETRIES {
        for _ in 0..500 {
            let p = sample_point(&mut rng, g);
            let m = pullback_matrix(p, g).unwrap();
            let b = m.matrix().fixed_view::<3, 3>(1, 1).into_owned();
            let gram = b * b.transpose();
            let g_model = *metric_at(p, g).unwrap().matrix();
            for a in 0..3 {
                for c in 0..3 {
                    let diff = (gram[(a, c)] - g_model[(a, c)]).abs();
                    assert!(
                        diff <= 1e-12 * (1.0 + g_model[(a, c)].abs()),
                        "{g}: Gram mismatch {diff:.3e} at entry ({a},{c}) for {p:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn base_distance_is_a_metric_on_the_unit_surface() {
    let mut rng = rng(13);
    for g in GEOMETRIES {
        for _ in 0..300 {
            let a = unit_project(sample_point(&mut rng, g), g).unwrap();
            let b = unit_project(sample_point(&mut rng, g), g).unwrap();
            let c = unit_project(sample_point(&mut rng, g), g).unwrap();
            let dab = base_distance(a, b, g).unwrap();
            let dba = base_distance(b, a, g).unwrap();
            let dbc = base_distance(b, c, g).unwrap();
            let dac = base_distance(a, c, g).unwrap();
            assert!(dab >= 0.0);
            assert_eq!(dab, dba);
            assert!(base_distance(a, a, g).unwrap() <= 1e-7);
            assert!(
                dac <= dab + dbc + 1e-12,
                "{g}: triangle inequality violated"
            );
        }
    }
}

#[test]
fn base_distance_reference_values() {
    let s2 = GeometryKind::SphericalProduct;
    let h2 = GeometryKind::HyperbolicProduct;
    let e0 = ModelPoint::ORIGIN;

    let quarter = base_distance(e0, ModelPoint::new(0.0, 1.0, 0.0), s2).unwrap();
    assert!((quarter - std::f64::consts::FRAC_PI_2).abs() <= 1e-15);
    let anti = base_distance(e0, ModelPoint::new(-1.0, 0.0, 0.0), s2).unwrap();
    assert!((anti - std::f64::consts::PI).abs() <= 1e-15);

    for r in [0.5, 1.0, 2.0] {
        let q = ModelPoint::new(f64::cosh(r), f64::sinh(r), 0.0);
        let d = base_distance(e0, q, h2).unwrap();
        assert!((d - r).abs() <= 1e-12, "hyperbolic radius {r}: got {d}");
    }
}
