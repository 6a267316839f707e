//! Plain-text writers for meshes and sampled grids.
//!
//! All writers are deterministic: vertices and triangles are emitted in
//! index order with Rust's shortest round-trip float formatting, so equal
//! inputs produce byte-identical files.

use std::fmt::Write;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mesh::{SampleGrid, TriangleMesh};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Obj,
    Ply,
    Csv,
}

impl ExportFormat {
    pub const fn extension(self) -> &'static str {
        match self {
            ExportFormat::Obj => "obj",
            ExportFormat::Ply => "ply",
            ExportFormat::Csv => "csv",
        }
    }
}

impl std::fmt::Display for ExportFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.extension())
    }
}

impl FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "obj" => Ok(ExportFormat::Obj),
            "ply" => Ok(ExportFormat::Ply),
            "csv" => Ok(ExportFormat::Csv),
            other => Err(format!(
                "unknown export format {other:?}, expected obj, ply or csv"
            )),
        }
    }
}

fn require_nonempty(mesh: &TriangleMesh) -> Result<()> {
    if mesh.is_empty() {
        return Err(Error::EmptyMesh);
    }
    Ok(())
}

/// Wavefront OBJ: vertex positions and 1-based triangular faces.
pub fn obj(mesh: &TriangleMesh) -> Result<String> {
    require_nonempty(mesh)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# {} vertices, {} faces",
        mesh.vertices.len(),
        mesh.triangles.len()
    );
    for v in &mesh.vertices {
        let _ = writeln!(out, "v {} {} {}", v[0], v[1], v[2]);
    }
    for t in &mesh.triangles {
        let _ = writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1);
    }
    Ok(out)
}

/// ASCII PLY with single-precision vertex positions and per-vertex
/// residuals.
pub fn ply(mesh: &TriangleMesh) -> Result<String> {
    require_nonempty(mesh)?;
    let mut out = String::new();
    let _ = writeln!(out, "ply");
    let _ = writeln!(out, "format ascii 1.0");
    let _ = writeln!(out, "element vertex {}", mesh.vertices.len());
    let _ = writeln!(out, "property float x");
    let _ = writeln!(out, "property float y");
    let _ = writeln!(out, "property float z");
    let _ = writeln!(out, "property float residual");
    let _ = writeln!(out, "element face {}", mesh.triangles.len());
    let _ = writeln!(out, "property list uchar int vertex_indices");
    let _ = writeln!(out, "end_header");
    for (v, r) in mesh.vertices.iter().zip(&mesh.residuals) {
        let _ = writeln!(
            out,
            "{} {} {} {}",
            v[0] as f32, v[1] as f32, v[2] as f32, *r as f32
        );
    }
    for t in &mesh.triangles {
        let _ = writeln!(out, "3 {} {} {}", t[0], t[1], t[2]);
    }
    Ok(out)
}

/// One CSV row per vertex with its residual. Connectivity is not part of
/// this format.
pub fn mesh_csv(mesh: &TriangleMesh) -> Result<String> {
    require_nonempty(mesh)?;
    let mut out = String::from("x,y,z,residual\n");
    for (v, r) in mesh.vertices.iter().zip(&mesh.residuals) {
        let _ = writeln!(out, "{},{},{},{}", v[0], v[1], v[2], r);
    }
    Ok(out)
}

pub fn export_mesh(mesh: &TriangleMesh, format: ExportFormat) -> Result<String> {
    match format {
        ExportFormat::Obj => obj(mesh),
        ExportFormat::Ply => ply(mesh),
        ExportFormat::Csv => mesh_csv(mesh),
    }
}

/// One CSV row per grid node, x fastest, with the sampled residual.
/// Masked nodes keep an empty residual field and valid = 0.
pub fn grid_csv(grid: &SampleGrid) -> String {
    let [nx, ny, nz] = grid.spec().resolution();
    let mut out = String::from("x,y,z,residual,valid\n");
    for k in 0..nz {
        for j in 0..ny {
            for i in 0..nx {
                let p = grid.spec().node(i, j, k);
                match grid.value(i, j, k) {
                    Some(r) => {
                        let _ = writeln!(out, "{},{},{},{},1", p[0], p[1], p[2], r);
                    }
                    None => {
                        let _ = writeln!(out, "{},{},{},,0", p[0], p[1], p[2]);
                    }
                }
            }
        }
    }
    out
}
