//! Scenario configs: the TOML schema, overlay of command-line overrides,
//! and the fully resolved form a run executes against.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use isoptics_core::{ExportFormat, GeometryKind, ModelPoint, SurfaceSelector};

use crate::error::CliError;

/// On-disk scenario schema. Unknown fields are rejected so a typo fails
/// the parse instead of silently running with a default.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub geometry: String,
    #[serde(default = "origin_triple")]
    pub a1: [f64; 3],
    pub a2: [f64; 3],
    pub alpha_degrees: f64,
    #[serde(default = "alpha_selector")]
    pub surface_selector: String,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default = "default_resolution")]
    pub resolution: [usize; 3],
    /// xmin, xmax, ymin, ymax, zmin, zmax. Derived from the segment when
    /// absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<[f64; 6]>,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            resolution: default_resolution(),
            bounds: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default = "obj_format")]
    pub format: String,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            path: None,
            format: obj_format(),
        }
    }
}

fn origin_triple() -> [f64; 3] {
    [1.0, 0.0, 0.0]
}

fn alpha_selector() -> String {
    "alpha".to_string()
}

fn default_resolution() -> [usize; 3] {
    [64, 64, 64]
}

fn obj_format() -> String {
    "obj".to_string()
}

impl ScenarioConfig {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("{origin}: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }
}

/// Command-line overrides layered on top of a config file, a bundled
/// scenario, or built-in defaults. Every field wins over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub geometry: Option<GeometryKind>,
    pub a1: Option<[f64; 3]>,
    pub a2: Option<[f64; 3]>,
    pub alpha_degrees: Option<f64>,
    pub selector: Option<SurfaceSelector>,
    pub resolution: Option<[usize; 3]>,
    pub bounds: Option<[f64; 6]>,
    pub out: Option<PathBuf>,
    pub format: Option<ExportFormat>,
}

/// A validated, fully typed run description.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub geometry: GeometryKind,
    pub a1: ModelPoint,
    pub a2: ModelPoint,
    pub alpha_degrees: f64,
    pub selector: SurfaceSelector,
    pub resolution: [usize; 3],
    pub bounds: Option<[f64; 6]>,
    pub out: Option<PathBuf>,
    pub format: ExportFormat,
}

impl Resolved {
    pub fn alpha_radians(&self) -> f64 {
        self.alpha_degrees.to_radians()
    }

    /// The effective config in file form, with whatever bounds and path the
    /// run actually used filled back in. Feeding it to --config reproduces
    /// the run byte for byte.
    pub fn to_config(&self, bounds: [f64; 6], path: Option<&Path>) -> ScenarioConfig {
        ScenarioConfig {
            geometry: self.geometry.to_string().to_ascii_lowercase(),
            a1: [self.a1.x, self.a1.y, self.a1.z],
            a2: [self.a2.x, self.a2.y, self.a2.z],
            alpha_degrees: self.alpha_degrees,
            surface_selector: self.selector.to_string(),
            grid: GridConfig {
                resolution: self.resolution,
                bounds: Some(bounds),
            },
            output: OutputConfig {
                path: path.map(Path::to_path_buf),
                format: self.format.to_string(),
            },
        }
    }
}

fn parse_in_field<T>(value: &str, field: &str) -> Result<T, CliError>
where
    T: std::str::FromStr<Err = String>,
{
    value
        .parse()
        .map_err(|e| CliError::Config(format!("field {field}: {e}")))
}

/// Overlays `over` onto `file` and validates the result. `file` is None for
/// flag-only invocations, where geometry, a2 and alpha become required.
pub fn resolve(file: Option<ScenarioConfig>, over: &Overrides) -> Result<Resolved, CliError> {
    let geometry = match (&over.geometry, &file) {
        (Some(g), _) => *g,
        (None, Some(cfg)) => parse_in_field(&cfg.geometry, "geometry")?,
        (None, None) => {
            return Err(CliError::Config(
                "missing geometry: pass --geometry or a config".into(),
            ))
        }
    };
    let a1 = over
        .a1
        .or_else(|| file.as_ref().map(|c| c.a1))
        .unwrap_or(origin_triple());
    let a2 = match over.a2.or_else(|| file.as_ref().map(|c| c.a2)) {
        Some(t) => t,
        None => {
            return Err(CliError::Config(
                "missing segment endpoint: pass --a2 or a config".into(),
            ))
        }
    };
    let alpha_degrees = match over
        .alpha_degrees
        .or_else(|| file.as_ref().map(|c| c.alpha_degrees))
    {
        Some(a) => a,
        None => {
            return Err(CliError::Config(
                "missing target angle: pass --alpha or a config".into(),
            ))
        }
    };
    let selector = match (&over.selector, &file) {
        (Some(s), _) => *s,
        (None, Some(cfg)) => parse_in_field(&cfg.surface_selector, "surface_selector")?,
        (None, None) => SurfaceSelector::Alpha,
    };
    let resolution = over
        .resolution
        .or_else(|| file.as_ref().map(|c| c.grid.resolution))
        .unwrap_or(default_resolution());
    let bounds = over
        .bounds
        .or_else(|| file.as_ref().and_then(|c| c.grid.bounds));
    if let Some(b) = bounds {
        for (axis, pair) in ["x", "y", "z"].iter().zip(b.chunks(2)) {
            if !(pair[0].is_finite() && pair[1].is_finite() && pair[0] < pair[1]) {
                return Err(CliError::Config(format!(
                    "field grid.bounds: {axis} range [{}, {}] is not an increasing finite interval",
                    pair[0], pair[1]
                )));
            }
        }
    }
    let out = over
        .out
        .clone()
        .or_else(|| file.as_ref().and_then(|c| c.output.path.clone()));
    let format = match (&over.format, &file) {
        (Some(f), _) => *f,
        (None, Some(cfg)) => parse_in_field(&cfg.output.format, "output.format")?,
        (None, None) => ExportFormat::Obj,
    };
    Ok(Resolved {
        geometry,
        a1: ModelPoint::new(a1[0], a1[1], a1[2]),
        a2: ModelPoint::new(a2[0], a2[1], a2[2]),
        alpha_degrees,
        selector,
        resolution,
        bounds,
        out,
        format,
    })
}
