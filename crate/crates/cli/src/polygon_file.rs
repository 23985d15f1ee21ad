//! Polygon documents and the built-in shapes.

use std::path::Path;

use fairfan_core::geometry::validate_polygon;
use fairfan_core::{shapes, Point, Polygon};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// `{"name": ..., "vertices": [[x, y], ...]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolygonFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertices: Vec<[f64; 2]>,
}

impl PolygonFile {
    pub fn from_polygon(name: &str, polygon: &Polygon) -> Self {
        Self {
            name: Some(name.to_string()),
            vertices: polygon.vertices().iter().map(|p| [p.x, p.y]).collect(),
        }
    }

    pub fn to_polygon(&self) -> Result<Polygon, CliError> {
        let pts = self.vertices.iter().map(|&[x, y]| Point::new(x, y)).collect();
        validate_polygon(pts).map_err(|e| CliError::Invalid(format!("polygon: {e}")))
    }
}

pub const BUILTIN_NAMES: [&str; 5] = ["square", "triangle", "hexagon", "ellipse12", "thin16"];

pub fn builtin(name: &str) -> Option<Polygon> {
    Some(match name {
        "square" => shapes::unit_square(),
        "triangle" => shapes::triangle(),
        "hexagon" => shapes::hexagon(),
        "ellipse12" => shapes::ellipse_12gon(),
        "thin16" => shapes::thin_16gon(),
        _ => return None,
    })
}

/// A polygon and the name reports use for it.
pub struct Loaded {
    pub name: String,
    pub polygon: Polygon,
}

/// Reads `arg` as a file; if no such file exists, as a built-in name.
pub fn load(arg: &str) -> Result<Loaded, CliError> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Some(polygon) = builtin(arg) {
            return Ok(Loaded {
                name: arg.to_string(),
                polygon,
            });
        }
    }
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Io(format!("{arg}: {e} (built-in polygons: {})", BUILTIN_NAMES.join(", ")))
    })?;
    let doc: PolygonFile = serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("{arg}: {e}")))?;
    let polygon = doc.to_polygon()?;
    let name = doc.name.unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| arg.to_string())
    });
    Ok(Loaded { name, polygon })
}

/// FNV-1a over the vertex coordinate bits, as 16 hex digits.
pub fn polygon_hash(polygon: &Polygon) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for p in polygon.vertices() {
        for b in p.x.to_bits().to_le_bytes().into_iter().chain(p.y.to_bits().to_le_bytes()) {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    format!("{h:016x}")
}
