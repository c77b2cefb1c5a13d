//! JSON file formats for surfaces and arcs, plus the machine-readable
//! output structures. Arc labels and triangle indices are 1-based in the
//! files; triangle indices are converted at this boundary.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use snakegraph::surface::{ArcSpec, Triangulation};

use crate::CliError;

/// Surface file: `n` interior arcs labelled `1..=n`, `m` boundary arcs
/// labelled `n+1..=n+m`, triangles as label triples in the cyclic order of
/// the surface orientation. The optional topology fields enable the rank
/// consistency check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceFile {
    pub n: usize,
    pub m: usize,
    pub triangles: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundaries: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked: Option<usize>,
}

/// Arc file: ordered crossing sequence over interior arc labels, plus the
/// 1-based index of the triangle containing the arc's first segment.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArcFile {
    pub crossings: Vec<usize>,
    pub start_triangle: usize,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load_surface(path: &Path) -> Result<(Triangulation, SurfaceFile), CliError> {
    let text = read(path)?;
    let file: SurfaceFile = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let t = Triangulation::new(file.n, file.m, file.triangles.clone());
    if let Err(violations) = t.validate() {
        return Err(CliError::Validation(
            violations.iter().map(|v| v.to_string()).collect(),
        ));
    }
    if let (Some(g), Some(b), Some(marked)) = (file.genus, file.boundaries, file.marked) {
        if let Err(e) = t.rank_check(g, b, marked) {
            return Err(CliError::Validation(vec![e.to_string()]));
        }
    }
    Ok((t, file))
}

pub fn load_arc(path: &Path, t: &Triangulation) -> Result<ArcSpec, CliError> {
    let text = read(path)?;
    let file: ArcFile = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    if file.start_triangle == 0 || file.start_triangle > t.triangles.len() {
        return Err(CliError::Validation(vec![format!(
            "start_triangle {} out of range 1..={}",
            file.start_triangle,
            t.triangles.len()
        )]));
    }
    let arc = ArcSpec::new(file.crossings, file.start_triangle - 1);
    if let Err(e) = t.connecting_arcs(&arc) {
        return Err(CliError::Validation(vec![e.to_string()]));
    }
    Ok(arc)
}

/// One merged term of a Laurent polynomial.
#[derive(Serialize)]
pub struct TermJson {
    pub coeff: String,
    pub x: Vec<i32>,
    pub y: Vec<u32>,
}

#[derive(Serialize)]
pub struct MatchingTermJson {
    pub matching: usize,
    pub weight: String,
    pub y: String,
}

#[derive(Serialize)]
pub struct ExpansionJson {
    pub n: usize,
    pub denominator: Vec<u32>,
    pub matchings: usize,
    pub laurent: Vec<TermJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<MatchingTermJson>>,
}

#[derive(Serialize)]
pub struct TileJson {
    pub index: usize,
    pub diagonal: usize,
    pub north: usize,
    pub east: usize,
    pub south: usize,
    pub west: usize,
    pub rel: i8,
    pub pos: [usize; 2],
}

#[derive(Serialize)]
pub struct EdgeJson {
    pub u: [usize; 2],
    pub v: [usize; 2],
    pub label: usize,
    pub diagonal: bool,
    pub boundary: bool,
}

#[derive(Serialize)]
pub struct SnakeJson {
    pub crossings: Vec<usize>,
    pub connecting: Vec<usize>,
    pub glue_dirs: Vec<String>,
    pub tiles: Vec<TileJson>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Serialize)]
pub struct MatchingJson {
    pub edges: Vec<usize>,
    pub weight: String,
    pub y: String,
    pub heights: Vec<i64>,
}

#[derive(Serialize)]
pub struct MatchingsJson {
    pub snake: SnakeJson,
    pub matchings: Vec<MatchingJson>,
}

#[derive(Serialize)]
pub struct VerifyJson {
    pub flips: Vec<usize>,
    pub matching_formula: Vec<TermJson>,
    pub seed_mutation: Vec<TermJson>,
    pub ok: bool,
}
