//! Subcommand bodies. Each returns the text destined for stdout; mesh and
//! CSV files are written as side effects.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use isoptics_core::{
    default_bounds, distance, export_mesh, grid_csv, isoptic_mesh, isoptic_residual,
    normalize_segment, sample_field, subtended_angle, thaloid_sphere, GeometryKind, GridSpec,
    IsopticProblem, ModelPoint,
};

use crate::config::Resolved;
use crate::error::CliError;

fn point(t: [f64; 3]) -> ModelPoint {
    ModelPoint::new(t[0], t[1], t[2])
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Distance is symmetric, so the endpoints are put in a canonical order
/// first: both argument orders print identical bytes.
pub fn cmd_distance(g: GeometryKind, p1: [f64; 3], p2: [f64; 3]) -> Result<String, CliError> {
    let (a, b) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
    let d = distance(point(a), point(b), g)?;
    Ok(format!("{d:.12}\n"))
}

pub fn cmd_angle(
    g: GeometryKind,
    p: [f64; 3],
    a2: [f64; 3],
    alpha_degrees: Option<f64>,
) -> Result<String, CliError> {
    let r = subtended_angle(point(p), point(a2), g)?;
    let mut out = String::new();
    let _ = writeln!(out, "angle_deg = {:.12}", r.angle.to_degrees());
    let _ = writeln!(out, "angle_rad = {:.12}", r.angle);
    let _ = writeln!(out, "cos_direct = {:.12}", r.cos_direct);
    let _ = writeln!(out, "cos_closed_form = {:.12}", r.cos_closed_form);
    if let Some(deg) = alpha_degrees {
        let problem = IsopticProblem::new(g, point(a2), deg.to_radians())?;
        let residual = isoptic_residual(&problem, point(p))?;
        let _ = writeln!(out, "residual = {residual:.12e}");
    }
    Ok(out)
}

pub fn cmd_thaloid(g: GeometryKind, a: f64) -> Result<String, CliError> {
    let (center, radius) = thaloid_sphere(a, g)?;
    Ok(format!(
        "center = ({:.12}, {:.12}, {:.12})\nradius = {:.12}\n",
        center.x, center.y, center.z, radius
    ))
}

struct PreparedRun {
    problem: IsopticProblem,
    spec: GridSpec,
    bounds: [f64; 6],
    out_path: PathBuf,
}

/// Shared front half of isoptic and sample: normalize the segment, fix the
/// box, optionally dump the effective config.
fn prepare(r: &Resolved, default_stem: &str, dump: Option<&Path>) -> Result<PreparedRun, CliError> {
    let seg = normalize_segment(r.a1, r.a2, r.geometry)?;
    let problem = IsopticProblem::new(r.geometry, seg.a2, r.alpha_radians())?;
    let (lo, hi) = match r.bounds {
        Some(b) => ([b[0], b[2], b[4]], [b[1], b[3], b[5]]),
        None => default_bounds(problem.a2(), r.geometry)?,
    };
    let bounds = [lo[0], hi[0], lo[1], hi[1], lo[2], hi[2]];
    let out_path = r
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{default_stem}.{}", r.format.extension())));
    if let Some(p) = dump {
        let cfg = r.to_config(bounds, Some(&out_path));
        let text = toml::to_string_pretty(&cfg).map_err(|e| CliError::Config(e.to_string()))?;
        write_file(p, &text)?;
    }
    let spec = GridSpec::new(r.resolution, lo, hi)?;
    Ok(PreparedRun {
        problem,
        spec,
        bounds,
        out_path,
    })
}

pub fn cmd_isoptic(r: &Resolved, refine: bool, dump: Option<&Path>) -> Result<String, CliError> {
    let run = prepare(r, "isoptic", dump)?;
    let t0 = Instant::now();
    let mesh = isoptic_mesh(&run.problem, &run.spec, r.selector, refine)?;
    let wall = t0.elapsed().as_secs_f64();
    write_file(&run.out_path, &export_mesh(&mesh, r.format)?)?;
    let mut out = String::new();
    let _ = writeln!(out, "vertices = {}", mesh.vertices.len());
    let _ = writeln!(out, "triangles = {}", mesh.triangles.len());
    let _ = writeln!(out, "max_residual = {:.3e}", mesh.max_abs_residual());
    let _ = writeln!(out, "bounds = {:?}", run.bounds);
    let _ = writeln!(out, "wall_time_s = {wall:.2}");
    let _ = writeln!(out, "wrote {}", run.out_path.display());
    Ok(out)
}

/// CSV goes to --out when given, otherwise straight to stdout.
pub fn cmd_sample(r: &Resolved, dump: Option<&Path>) -> Result<String, CliError> {
    let seg = normalize_segment(r.a1, r.a2, r.geometry)?;
    let problem = IsopticProblem::new(r.geometry, seg.a2, r.alpha_radians())?;
    let (lo, hi) = match r.bounds {
        Some(b) => ([b[0], b[2], b[4]], [b[1], b[3], b[5]]),
        None => default_bounds(problem.a2(), r.geometry)?,
    };
    if let Some(p) = dump {
        let bounds = [lo[0], hi[0], lo[1], hi[1], lo[2], hi[2]];
        let cfg = r.to_config(bounds, r.out.as_deref());
        let text = toml::to_string_pretty(&cfg).map_err(|e| CliError::Config(e.to_string()))?;
        write_file(p, &text)?;
    }
    let spec = GridSpec::new(r.resolution, lo, hi)?;
    let grid = sample_field(&problem, &spec, r.selector)?;
    let csv = grid_csv(&grid);
    match &r.out {
        Some(path) => {
            write_file(path, &csv)?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(csv),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S2: GeometryKind = GeometryKind::SphericalProduct;

    #[test]
    fn distance_output_is_order_independent() {
        let a = [1.5, 0.2, 0.3];
        let b = [0.9, -0.4, 1.1];
        assert_eq!(
            cmd_distance(S2, a, b).unwrap(),
            cmd_distance(S2, b, a).unwrap()
        );
    }

    #[test]
    fn unit_fibre_step_prints_twelve_decimals() {
        let e = std::f64::consts::E;
        let text = cmd_distance(S2, [e, 0.0, 0.0], [1.0, 0.0, 0.0]).unwrap();
        assert_eq!(text, "1.000000000000\n");
    }

    #[test]
    fn angle_with_target_appends_the_residual_line() {
        let text = cmd_angle(S2, [1.0, 1.0, 2.0], [2.0, 3.0, 1.0], Some(90.0)).unwrap();
        assert!(text.contains("angle_deg = "));
        assert!(text.contains("angle_rad = "));
        assert!(text.contains("cos_direct = "));
        assert!(text.contains("cos_closed_form = "));
        assert!(text.contains("residual = "));
    }

    #[test]
    fn thaloid_center_sits_at_the_geometric_mean() {
        let text = cmd_thaloid(S2, 5.0).unwrap();
        assert!(text.contains("center = (2.236067977500"), "{text}");
        assert!(text.contains("radius = 0.804718956217"), "{text}");
        let unit = cmd_thaloid(S2, (std::f64::consts::E).powi(2)).unwrap();
        assert!(unit.contains("radius = 1.000000000000"), "{unit}");
    }

    #[test]
    fn thaloid_of_the_degenerate_segment_is_a_domain_error() {
        let err = cmd_thaloid(S2, 1.0).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
