//! Microbenchmarks for the hot kernel paths and the meshing pipeline.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion, Throughput};

use isoptics_bench::{fixed_points, GEOMETRIES};
use isoptics_core::{
    angle_closed_form, default_bounds, distance, isoptic_mesh, pullback_matrix, sample_field,
    subtended_angle, GeometryKind, GridSpec, IsopticProblem, ModelPoint, SurfaceSelector,
};

fn bench_kernel(c: &mut Criterion) {
    for g in GEOMETRIES {
        let pts = fixed_points(g, 257);
        let a2 = pts[0];
        let cloud = &pts[1..];
        let mut group = c.benchmark_group(format!("kernel/{g}"));
        group.throughput(Throughput::Elements(cloud.len() as u64));

        group.bench_function("distance_from_origin", |b| {
            b.iter(|| {
                let mut acc = 0.0;
                for &p in cloud {
                    acc += distance(ModelPoint::ORIGIN, p, g).unwrap();
                }
                black_box(acc)
            })
        });

        group.bench_function("pullback_matrix", |b| {
            b.iter(|| {
                let mut acc = 0.0;
                for &p in cloud {
                    acc += pullback_matrix(p, g).unwrap().matrix()[(1, 1)];
                }
                black_box(acc)
            })
        });

        group.bench_function("angle_closed_form", |b| {
            b.iter(|| {
                let mut acc = 0.0;
                for &p in cloud {
                    acc += angle_closed_form(p, a2, g).unwrap_or(0.0);
                }
                black_box(acc)
            })
        });

        group.bench_function("subtended_angle_both_routes", |b| {
            b.iter(|| {
                let mut acc = 0.0;
                for &p in cloud {
                    acc += subtended_angle(p, a2, g).map(|r| r.angle).unwrap_or(0.0);
                }
                black_box(acc)
            })
        });

        group.finish();
    }
}

fn bench_mesh(c: &mut Criterion) {
    for g in GEOMETRIES {
        let a2 = ModelPoint::new(4.0, 1.0, 2.0);
        let alpha = match g {
            GeometryKind::SphericalProduct => 80.0f64,
            GeometryKind::HyperbolicProduct => 75.0f64,
        }
        .to_radians();
        let problem = IsopticProblem::new(g, a2, alpha).unwrap();
        let (lo, hi) = default_bounds(a2, g).unwrap();
        let spec = GridSpec::new([32, 32, 32], lo, hi).unwrap();
        let mut group = c.benchmark_group(format!("mesh/{g}"));
        group.sample_size(10);

        group.bench_function("sample_field_32", |b| {
            b.iter(|| {
                black_box(
                    sample_field(&problem, &spec, SurfaceSelector::Alpha)
                        .unwrap()
                        .masked_count(),
                )
            })
        });

        group.bench_function("isoptic_mesh_32_refined", |b| {
            b.iter(|| {
                black_box(
                    isoptic_mesh(&problem, &spec, SurfaceSelector::Alpha, true)
                        .unwrap()
                        .vertices
                        .len(),
                )
            })
        });

        group.finish();
    }
}

criterion_group!(benches, bench_kernel, bench_mesh);
criterion_main!(benches);
