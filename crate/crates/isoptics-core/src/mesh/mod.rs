//! Implicit-field sampling over a box grid and isosurface extraction.
//!
//! The pipeline is sample, march, refine: [`sample_field`] evaluates the
//! selected isoptic residual at every grid node in parallel (nodes where
//! the field is undefined are masked, not errors), [`extract_isosurface`]
//! runs the 256-case marching cubes pass over the unmasked cells, welding
//! vertices through shared edges, and an optional bisection pass pulls
//! each vertex from its linear interpolation estimate onto the zero set.
//!
//! Every step is deterministic: sampling and refinement parallelize over
//! index ranges that collect in order, and the extraction scan is serial.

pub mod export;
pub(crate) mod tables;

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{GeometryKind, ModelPoint};
use crate::isoptic::{selected_residual, IsopticProblem, SurfaceSelector};
use crate::tol;

use tables::{CORNER_OFFSETS, EDGE_CORNERS, TRI_TABLE};

/// A regular node grid over an axis-aligned box, at least 2 nodes per axis.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    resolution: [usize; 3],
    min: [f64; 3],
    max: [f64; 3],
}

impl GridSpec {
    pub fn new(resolution: [usize; 3], min: [f64; 3], max: [f64; 3]) -> Result<Self> {
        if resolution.iter().any(|&n| n < 2) {
            return Err(Error::InvalidGrid {
                detail: format!("need at least 2 nodes per axis, got {resolution:?}"),
            });
        }
        for a in 0..3 {
            if !(min[a].is_finite() && max[a].is_finite() && min[a] < max[a]) {
                return Err(Error::InvalidGrid {
                    detail: format!("bounds must be finite with min < max, got {min:?} .. {max:?}"),
                });
            }
        }
        Ok(GridSpec {
            resolution,
            min,
            max,
        })
    }

    pub fn resolution(&self) -> [usize; 3] {
        self.resolution
    }

    pub fn bounds(&self) -> ([f64; 3], [f64; 3]) {
        (self.min, self.max)
    }

    pub fn step(&self) -> [f64; 3] {
        let mut s = [0.0; 3];
        for a in 0..3 {
            s[a] = (self.max[a] - self.min[a]) / (self.resolution[a] - 1) as f64;
        }
        s
    }

    /// Node coordinates as min + index * step: a grid with doubled cells
    /// (2n - 1 nodes per axis) reproduces the coarse nodes bit for bit.
    pub fn node(&self, i: usize, j: usize, k: usize) -> [f64; 3] {
        let s = self.step();
        [
            self.min[0] + i as f64 * s[0],
            self.min[1] + j as f64 * s[1],
            self.min[2] + k as f64 * s[2],
        ]
    }

    pub fn node_count(&self) -> usize {
        self.resolution[0] * self.resolution[1] * self.resolution[2]
    }

    /// Flat node index, x fastest.
    fn flat(&self, i: usize, j: usize, k: usize) -> usize {
        (k * self.resolution[1] + j) * self.resolution[0] + i
    }

    fn unflat(&self, n: usize) -> (usize, usize, usize) {
        let i = n % self.resolution[0];
        let j = (n / self.resolution[0]) % self.resolution[1];
        let k = n / (self.resolution[0] * self.resolution[1]);
        (i, j, k)
    }

    pub fn cell_diagonal(&self) -> f64 {
        let s = self.step();
        (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt()
    }
}

/// Field values at the grid nodes. None marks nodes where the field is
/// undefined: outside the model domain, or on a degeneracy of the angle.
#[derive(Debug, Clone)]
pub struct SampleGrid {
    spec: GridSpec,
    values: Vec<Option<f64>>,
}

impl SampleGrid {
    /// Samples f at every node in parallel. An evaluation error or a
    /// non-finite value masks the node. Fails only when every single node
    /// is masked, which means the box misses the domain entirely.
    pub fn from_fn<F>(spec: GridSpec, f: F) -> Result<SampleGrid>
    where
        F: Fn([f64; 3]) -> Result<f64> + Sync,
    {
        let values: Vec<Option<f64>> = (0..spec.node_count())
            .into_par_iter()
            .map(|n| {
                let (i, j, k) = spec.unflat(n);
                match f(spec.node(i, j, k)) {
                    Ok(v) if v.is_finite() => Some(v),
                    _ => None,
                }
            })
            .collect();
        if values.iter().all(|v| v.is_none()) {
            return Err(Error::EmptyDomain);
        }
        Ok(SampleGrid { spec, values })
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn value(&self, i: usize, j: usize, k: usize) -> Option<f64> {
        self.values[self.spec.flat(i, j, k)]
    }

    pub fn masked_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_none()).count()
    }
}

/// The selected isoptic residual sampled over a grid.
pub fn sample_field(
    problem: &IsopticProblem,
    spec: &GridSpec,
    selector: SurfaceSelector,
) -> Result<SampleGrid> {
    SampleGrid::from_fn(spec.clone(), |p| {
        selected_residual(problem, selector, ModelPoint::new(p[0], p[1], p[2]))
    })
}

/// An indexed triangle mesh with the field value at every vertex.
/// Triangles wind so that the right-hand normal points toward positive
/// field values.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    pub vertices: Vec<[f64; 3]>,
    pub triangles: Vec<[usize; 3]>,
    pub residuals: Vec<f64>,
}

impl TriangleMesh {
    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// Largest |residual| over the vertices; NaN if any vertex could not
    /// be evaluated. 0 for an empty mesh.
    pub fn max_abs_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m: f64, &r| {
            if m.is_nan() || r.is_nan() {
                f64::NAN
            } else {
                m.max(r.abs())
            }
        })
    }
}

/// The sign-change bracket a vertex was born on: the grid edge runs from
/// pa to pb with field values fa, fb of opposite sign.
struct EdgeBracket {
    pa: [f64; 3],
    pb: [f64; 3],
    fa: f64,
    fb: f64,
}

fn lerp(a: [f64; 3], b: [f64; 3], t: f64) -> [f64; 3] {
    [
        a[0] + t * (b[0] - a[0]),
        a[1] + t * (b[1] - a[1]),
        a[2] + t * (b[2] - a[2]),
    ]
}

#[allow(clippy::too_many_arguments)]
fn vertex_on_edge(
    spec: &GridSpec,
    edge_vertex: &mut HashMap<usize, usize>,
    brackets: &mut Vec<EdgeBracket>,
    cell: (usize, usize, usize),
    e: usize,
    vals: &[f64; 8],
) -> usize {
    let [a, b] = EDGE_CORNERS[e];
    let (oa, ob) = (CORNER_OFFSETS[a], CORNER_OFFSETS[b]);
    let lower = [
        cell.0 + oa[0].min(ob[0]),
        cell.1 + oa[1].min(ob[1]),
        cell.2 + oa[2].min(ob[2]),
    ];
    let axis = (0..3).find(|&c| oa[c] != ob[c]).unwrap();
    // Global edge id shared by every cell touching this edge.
    let key = spec.flat(lower[0], lower[1], lower[2]) * 3 + axis;
    if let Some(&id) = edge_vertex.get(&key) {
        return id;
    }
    let pa = spec.node(lower[0], lower[1], lower[2]);
    let mut upper = lower;
    upper[axis] += 1;
    let pb = spec.node(upper[0], upper[1], upper[2]);
    let (fa, fb) = if oa[axis] < ob[axis] {
        (vals[a], vals[b])
    } else {
        (vals[b], vals[a])
    };
    let id = brackets.len();
    brackets.push(EdgeBracket { pa, pb, fa, fb });
    edge_vertex.insert(key, id);
    id
}

fn finish_vertex<F>(br: &EdgeBracket, field: &F, refine: bool) -> ([f64; 3], f64)
where
    F: Fn([f64; 3]) -> Result<f64> + Sync,
{
    let mut t = br.fa / (br.fa - br.fb);
    if refine {
        // lo stays on the negative side, hi on the non-negative one. An
        // evaluation error ends the search with the bracket midpoint.
        let (mut lo, mut hi): (f64, f64) = if br.fa < 0.0 { (0.0, 1.0) } else { (1.0, 0.0) };
        for _ in 0..tol::REFINE_MAX_STEPS {
            if (hi - lo).abs() <= tol::REFINE_TOL {
                break;
            }
            let mid = 0.5 * (lo + hi);
            match field(lerp(br.pa, br.pb, mid)) {
                Ok(v) if v < 0.0 => lo = mid,
                Ok(_) => hi = mid,
                Err(_) => break,
            }
        }
        t = 0.5 * (lo + hi);
    }
    let p = lerp(br.pa, br.pb, t);
    let r = field(p).map_or(f64::NAN, |v| v);
    (p, r)
}

/// Marching cubes over the unmasked cells of the grid. Cells touching a
/// masked node are skipped. With `refine` set, every vertex is pulled onto
/// the zero set by bisection along its grid edge; either way the returned
/// residuals are fresh field evaluations at the final vertex positions.
///
/// The field must be the one the grid was sampled from; the extraction is
/// empty (not an error) when the surface misses the grid.
pub fn extract_isosurface<F>(grid: &SampleGrid, field: F, refine: bool) -> Result<TriangleMesh>
where
    F: Fn([f64; 3]) -> Result<f64> + Sync,
{
    let spec = grid.spec();
    let [nx, ny, nz] = spec.resolution();
    let mut edge_vertex: HashMap<usize, usize> = HashMap::new();
    let mut brackets: Vec<EdgeBracket> = Vec::new();
    let mut triangles: Vec<[usize; 3]> = Vec::new();

    for k in 0..nz - 1 {
        for j in 0..ny - 1 {
            for i in 0..nx - 1 {
                let mut vals = [0.0f64; 8];
                let mut case = 0usize;
                let mut masked = false;
                for (c, off) in CORNER_OFFSETS.iter().enumerate() {
                    match grid.value(i + off[0], j + off[1], k + off[2]) {
                        Some(v) => {
                            vals[c] = v;
                            if v < 0.0 {
                                case |= 1 << c;
                            }
                        }
                        None => {
                            masked = true;
                            break;
                        }
                    }
                }
                if masked || case == 0 || case == 255 {
                    continue;
                }
                let row = &TRI_TABLE[case];
                let mut t = 0;
                while row[t] >= 0 {
                    let ids = [row[t], row[t + 1], row[t + 2]].map(|e| {
                        vertex_on_edge(
                            spec,
                            &mut edge_vertex,
                            &mut brackets,
                            (i, j, k),
                            e as usize,
                            &vals,
                        )
                    });
                    // The table winds toward the negative side; flip so
                    // normals point where the field is positive.
                    triangles.push([ids[0], ids[2], ids[1]]);
                    t += 3;
                }
            }
        }
    }

    let finished: Vec<([f64; 3], f64)> = brackets
        .par_iter()
        .map(|br| finish_vertex(br, &field, refine))
        .collect();
    let (vertices, residuals) = finished.into_iter().unzip();
    Ok(TriangleMesh {
        vertices,
        triangles,
        residuals,
    })
}

/// Sample, march, refine. Errors with [`Error::EmptyMesh`] when the
/// surface misses the grid.
pub fn isoptic_mesh(
    problem: &IsopticProblem,
    spec: &GridSpec,
    selector: SurfaceSelector,
    refine: bool,
) -> Result<TriangleMesh> {
    let grid = sample_field(problem, spec, selector)?;
    let field =
        |p: [f64; 3]| selected_residual(problem, selector, ModelPoint::new(p[0], p[1], p[2]));
    let mesh = extract_isosurface(&grid, field, refine)?;
    if mesh.is_empty() {
        return Err(Error::EmptyMesh);
    }
    Ok(mesh)
}

/// A box around the canonical segment: the coordinate extents of E0 and
/// a2, padded on every side by three quarters of the segment length (at
/// least 0.5). In the hyperbolic geometry the lower x bound stays
/// positive, since no model point has x <= 0.
pub fn default_bounds(a2: ModelPoint, g: GeometryKind) -> Result<([f64; 3], [f64; 3])> {
    let a2 = g.validate(a2)?;
    let d = crate::curves::distance(ModelPoint::ORIGIN, a2, g)?;
    let pad = (0.75 * d).max(0.5);
    let ends = [[1.0, a2.x], [0.0, a2.y], [0.0, a2.z]];
    let mut lo = [0.0; 3];
    let mut hi = [0.0; 3];
    for a in 0..3 {
        lo[a] = ends[a][0].min(ends[a][1]) - pad;
        hi[a] = ends[a][0].max(ends[a][1]) + pad;
    }
    if g == GeometryKind::HyperbolicProduct {
        lo[0] = lo[0].max(1e-2);
    }
    Ok((lo, hi))
}
