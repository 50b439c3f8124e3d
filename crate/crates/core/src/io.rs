//! JSON and CSV file formats.
//!
//! * polygon: `{"vertices": [[x, y], ...]}`
//! * scattered set: `{"polygon": [[x, y], ...], "interior": [[x, y], ...]}`
//!   (`interior` may be omitted; other keys are ignored)
//! * mesh: `{"vertices": [[x, y], ...], "triangles": [[i, j, k], ...]}`
//! * triangle rule: `{"degree": d, "points": [[x, y], ...], "weights": [...]}`
//! * polygon rule: `{"points": [[x, y], ...], "weights": [...]}`

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point2, Polygon};
use crate::mesh::{Mesh, ScatteredSet};

/// The stand-in polygon shipped with the crate, as a scattered-set document.
pub const STANDIN_POLYGON_JSON: &str = include_str!("../data/standin_polygon.json");

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum DomainDoc {
    Scattered {
        polygon: Vec<Point2>,
        #[serde(default)]
        interior: Vec<Point2>,
    },
    Polygon {
        vertices: Vec<Point2>,
    },
}

#[derive(Debug, Serialize, Deserialize)]
struct MeshDoc {
    vertices: Vec<Point2>,
    triangles: Vec<[usize; 3]>,
}

/// Parses either a polygon or a scattered-set document.
pub fn parse_scattered(text: &str) -> Result<ScatteredSet> {
    let doc: DomainDoc = serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("bad domain JSON: {e}")))?;
    match doc {
        DomainDoc::Scattered { polygon, interior } => ScatteredSet::new(Polygon::new(polygon)?, interior),
        DomainDoc::Polygon { vertices } => Ok(ScatteredSet::boundary_only(Polygon::new(vertices)?)),
    }
}

pub fn read_scattered(path: &Path) -> Result<ScatteredSet> {
    parse_scattered(&read_text(path)?)
}

/// The shipped stand-in polygon with its three interior points.
pub fn standin_scattered() -> ScatteredSet {
    parse_scattered(STANDIN_POLYGON_JSON).expect("shipped polygon is valid")
}

pub fn parse_mesh(text: &str) -> Result<Mesh> {
    let doc: MeshDoc = serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("bad mesh JSON: {e}")))?;
    Mesh::from_parts(doc.vertices, doc.triangles)
}

pub fn mesh_to_json(m: &Mesh) -> String {
    to_json(m)
}

pub fn polygon_to_json(p: &Polygon) -> String {
    to_json(p)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serialises");
    s.push('\n');
    s
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("cannot create {}: {e}", dir.display())))?;
    }
    std::fs::write(path, text).map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))
}

/// Written next to every output set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub params: serde_json::Value,
    pub seed: Option<u64>,
    pub version: String,
    pub started_unix: f64,
    pub finished_unix: f64,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn start(command: &str, params: serde_json::Value, seed: Option<u64>) -> Self {
        let now = unix_now();
        Self {
            command: command.to_owned(),
            params,
            seed,
            version: env!("CARGO_PKG_VERSION").to_owned(),
            started_unix: now,
            finished_unix: now,
            outputs: Vec::new(),
        }
    }

    pub fn finish(&mut self, outputs: Vec<PathBuf>) {
        self.outputs = outputs;
        self.finished_unix = unix_now();
    }
}

fn unix_now() -> f64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0.0, |d| d.as_secs_f64())
}
