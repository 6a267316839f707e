//! Argument grammar. Points are comma-separated affine triples x,y,z with
//! the homogeneous leading 1 implied.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use isoptics_core::{ExportFormat, GeometryKind, SurfaceSelector};

#[derive(Parser)]
#[command(
    name = "isoptics",
    version,
    about = "Isoptic surfaces of translation segments in the S2xR and H2xR product geometries"
)]
pub struct Cli {
    /// Worker threads; falls back to THURSTON_ISOPTICS_THREADS, then all cores
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Translation-curve distance between two points (second defaults to the origin)
    Distance {
        #[arg(value_parser = parse_geometry, value_name = "GEOMETRY")]
        geometry: GeometryKind,
        #[arg(value_parser = parse_point, value_name = "X,Y,Z")]
        p1: [f64; 3],
        #[arg(value_parser = parse_point, value_name = "X,Y,Z", default_value = "1,0,0")]
        p2: [f64; 3],
    },
    /// Angle subtended at P by the segment from the origin to --a2
    Angle {
        #[arg(value_parser = parse_geometry, value_name = "GEOMETRY")]
        geometry: GeometryKind,
        #[arg(value_parser = parse_point, value_name = "X,Y,Z")]
        p: [f64; 3],
        #[arg(long, value_parser = parse_point, value_name = "X,Y,Z")]
        a2: [f64; 3],
        /// Target angle in degrees; adds the isoptic residual at P
        #[arg(long, value_name = "DEG")]
        alpha: Option<f64>,
    },
    /// Mesh an isoptic surface and write it to disk
    Isoptic {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Skip the bisection pass that pulls vertices onto the surface
        #[arg(long)]
        no_refine: bool,
    },
    /// Center and radius of the right-angle sphere over the segment (1,0,0)-(A,0,0)
    Thaloid {
        #[arg(value_parser = parse_geometry, value_name = "GEOMETRY")]
        geometry: GeometryKind,
        #[arg(value_name = "A")]
        a: f64,
        /// Also mesh the sphere as the 90 degree isoptic and write it here
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_parser = parse_grid, value_name = "NX,NY,NZ")]
        grid: Option<[usize; 3]>,
        #[arg(long, value_parser = parse_bounds, value_name = "XMIN,XMAX,YMIN,YMAX,ZMIN,ZMAX")]
        bounds: Option<[f64; 6]>,
        /// obj, ply or csv
        #[arg(long, value_parser = parse_format)]
        format: Option<ExportFormat>,
    },
    /// Sample the residual grid and dump it as CSV
    Sample(SurfaceArgs),
}

#[derive(Args)]
pub struct SurfaceArgs {
    /// Scenario config file (TOML)
    #[arg(long, value_name = "PATH", conflicts_with = "scenario")]
    pub config: Option<PathBuf>,
    /// Bundled scenario: fig4a, fig4b, fig5, fig6a, fig6b
    #[arg(long, value_name = "NAME")]
    pub scenario: Option<String>,
    #[arg(long, value_parser = parse_geometry, value_name = "GEOMETRY")]
    pub geometry: Option<GeometryKind>,
    /// First segment endpoint, default 1,0,0
    #[arg(long, value_parser = parse_point, value_name = "X,Y,Z")]
    pub a1: Option<[f64; 3]>,
    /// Second segment endpoint
    #[arg(long, value_parser = parse_point, value_name = "X,Y,Z")]
    pub a2: Option<[f64; 3]>,
    /// Target angle in degrees, strictly between 0 and 180
    #[arg(long, value_name = "DEG")]
    pub alpha: Option<f64>,
    /// alpha, supplement or union
    #[arg(long, value_parser = parse_selector)]
    pub selector: Option<SurfaceSelector>,
    #[arg(long, value_parser = parse_grid, value_name = "NX,NY,NZ")]
    pub grid: Option<[usize; 3]>,
    /// Sampling box, given in the canonical frame (first endpoint at the origin)
    #[arg(long, value_parser = parse_bounds, value_name = "XMIN,XMAX,YMIN,YMAX,ZMIN,ZMAX")]
    pub bounds: Option<[f64; 6]>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// obj, ply or csv
    #[arg(long, value_parser = parse_format)]
    pub format: Option<ExportFormat>,
    /// Write the effective config as TOML here before running
    #[arg(long, value_name = "PATH")]
    pub dump_config: Option<PathBuf>,
}

fn parse_geometry(s: &str) -> Result<GeometryKind, String> {
    s.parse()
}

fn parse_selector(s: &str) -> Result<SurfaceSelector, String> {
    s.parse()
}

fn parse_format(s: &str) -> Result<ExportFormat, String> {
    s.parse()
}

fn split_fields<const N: usize>(s: &str, what: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(format!("expected {what}, got {} fields", parts.len()));
    }
    let mut out = [0.0; N];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("{part:?}: {e}"))?;
    }
    Ok(out)
}

pub fn parse_point(s: &str) -> Result<[f64; 3], String> {
    split_fields::<3>(s, "x,y,z with the leading homogeneous 1 implied")
}

pub fn parse_bounds(s: &str) -> Result<[f64; 6], String> {
    split_fields::<6>(s, "xmin,xmax,ymin,ymax,zmin,zmax")
}

pub fn parse_grid(s: &str) -> Result<[usize; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected NX,NY,NZ, got {} fields", parts.len()));
    }
    let mut out = [0usize; 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<usize>()
            .map_err(|e| format!("{part:?}: {e}"))?;
    }
    Ok(out)
}
