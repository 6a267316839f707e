//! Kernel for the product geometries S^2xR and H^2xR in a projective model:
//! translation-curve distances, origin-pulling isometries, subtended angles
//! of segments, isoptic surfaces and their mesh extraction.
//!
//! Points are homogeneous 4-tuples (1, x, y, z); the crate stores the affine
//! part and keeps the weight pinned to 1. The x-axis carries the R factor
//! (the fibre direction) and the unit level set of the fibre norm is the
//! base surface, a sphere or a hyperboloid sheet depending on the geometry.
//!
//! Layout:
//! - [`geometry`]: points, charts, metric tensors, base-surface trigonometry
//! - [`isometry`]: the 4x4 transforms that pull any point to the origin
//! - [`curves`]: translation curves, distances, geodesic-sphere sampling,
//!   and the quadrature oracle that audits the closed-form distances
//! - [`isoptic`]: subtended angles of a segment along two independent code
//!   paths, isoptic residual fields, Thaloid spheres
//! - [`mesh`]: grid sampling, marching-cubes extraction, OBJ/PLY/CSV export

pub mod curves;
pub mod error;
pub mod geometry;
pub mod isometry;
pub mod isoptic;
pub mod mesh;
pub mod tol;

pub use curves::{
    curve_plane_residual, distance, distance_from_origin, oracle_arc_length, sphere_points,
    sphere_residual, tangent_to, translation_curve, CurveParams, SphereSpec, TangentVector,
};
pub use error::{Error, ErrorClass, Result};
pub use geometry::{
    base_angle_at, base_distance, chart_to_model, fibre_norm, metric_at, model_to_chart,
    unit_project, ChartCoords, GeometryKind, MetricTensor, ModelPoint,
};
pub use isometry::{
    fibre_translation, pullback_matrix, rotation_x, rotation_z, yz_rotation, Isometry4,
};
pub use isoptic::{
    angle_closed_form, angle_direct, isoptic_residual, normalize_segment, selected_residual,
    subtended_angle, thaloid_sphere, AngleResult, IsopticProblem, NormalizedSegment,
    SurfaceSelector,
};
pub use mesh::export::{export_mesh, grid_csv, mesh_csv, obj, ply, ExportFormat};
pub use mesh::{
    default_bounds, extract_isosurface, isoptic_mesh, sample_field, GridSpec, SampleGrid,
    TriangleMesh,
};
