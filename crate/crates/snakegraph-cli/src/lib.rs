//! Command implementations behind the `snakegraph` binary. Output is
//! deterministic byte-for-byte: polynomials render in canonical term order
//! and matchings in enumeration order.

pub mod format;

use std::fmt::Write as _;
use std::path::Path;

use snakegraph::expansion::{self, Expansion, ExpansionError};
use snakegraph::matching::{
    boundary_matchings, enumerate_matchings, height_function, oriented_tiles, tiles_to_y_labels,
};
use snakegraph::oracle::{self, OracleError};
use snakegraph::poly::LaurentPoly;
use snakegraph::snake::{Direction, SnakeGraph};
use snakegraph::surface::{ArcSpec, Triangulation};

use format::{
    EdgeJson, ExpansionJson, MatchingJson, MatchingTermJson, MatchingsJson, SnakeJson, SurfaceFile,
    TermJson, TileJson, VerifyJson,
};

#[derive(Clone, Debug)]
pub enum CliError {
    Io {
        path: String,
        message: String,
    },
    Parse {
        path: String,
        message: String,
    },
    Validation(Vec<String>),
    /// The two computation routes disagree.
    Mismatch {
        lhs: String,
        rhs: String,
    },
    /// Flip search exhausted its depth budget.
    SearchFailed(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => 2,
            CliError::Validation(_) | CliError::Internal(_) => 3,
            CliError::Mismatch { .. } | CliError::SearchFailed(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io { path, message } => write!(f, "error: cannot read {path}: {message}"),
            CliError::Parse { path, message } => write!(f, "error: {path}: {message}"),
            CliError::Validation(violations) => {
                writeln!(f, "error: invalid input:")?;
                for v in violations {
                    writeln!(f, "  - {v}")?;
                }
                Ok(())
            }
            CliError::Mismatch { lhs, rhs } => {
                write!(
                    f,
                    "MISMATCH\nmatching formula: {lhs}\nseed mutation:    {rhs}"
                )
            }
            CliError::SearchFailed(msg) => write!(f, "error: {msg}"),
            CliError::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl From<ExpansionError> for CliError {
    fn from(e: ExpansionError) -> Self {
        match e {
            ExpansionError::Internal(msg) => CliError::Internal(msg.to_string()),
            other => CliError::Validation(vec![other.to_string()]),
        }
    }
}

/// Render a multiset of arc labels as a monomial in `x1..x(n+m)`.
pub fn arc_monomial(labels: &[usize]) -> String {
    render_monomial('x', labels)
}

/// Render a multiset of interior labels as a monomial in `y1..yn`.
pub fn y_monomial(labels: &[usize]) -> String {
    render_monomial('y', labels)
}

fn render_monomial(name: char, labels: &[usize]) -> String {
    if labels.is_empty() {
        return "1".to_string();
    }
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    let mut out = String::new();
    let mut i = 0;
    while i < sorted.len() {
        let label = sorted[i];
        let mut count = 0;
        while i < sorted.len() && sorted[i] == label {
            count += 1;
            i += 1;
        }
        if !out.is_empty() {
            out.push('*');
        }
        if count == 1 {
            let _ = write!(out, "{name}{label}");
        } else {
            let _ = write!(out, "{name}{label}^{count}");
        }
    }
    out
}

fn laurent_terms_json(p: &LaurentPoly) -> Vec<TermJson> {
    p.terms()
        .map(|(e, c)| TermJson {
            coeff: c.to_string(),
            x: e.xexp.clone(),
            y: e.yexp.clone(),
        })
        .collect()
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn load(surface: &Path, arc: &Path) -> Result<(Triangulation, ArcSpec), CliError> {
    let (t, _) = format::load_surface(surface)?;
    let a = format::load_arc(arc, &t)?;
    Ok((t, a))
}

fn expansion_output(e: &Expansion, json: bool, terms: bool) -> String {
    if json {
        let term_list = terms.then(|| {
            e.terms
                .iter()
                .enumerate()
                .map(|(i, term)| MatchingTermJson {
                    matching: i + 1,
                    weight: arc_monomial(&term.weight_labels),
                    y: y_monomial(&term.y_labels),
                })
                .collect()
        });
        json_line(&ExpansionJson {
            n: e.nvars,
            denominator: e.denominator.clone(),
            matchings: e.terms.len(),
            laurent: laurent_terms_json(&e.laurent),
            terms: term_list,
        })
    } else {
        let mut out = format!("{}\n", e.laurent);
        if terms {
            let _ = writeln!(out, "denominator: {}", {
                let labels: Vec<usize> = e
                    .denominator
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &d)| std::iter::repeat_n(i + 1, d as usize))
                    .collect();
                arc_monomial(&labels)
            });
            let _ = writeln!(out, "matchings: {}", e.terms.len());
            for (i, term) in e.terms.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "term {:>3}: w = {}  y = {}",
                    i + 1,
                    arc_monomial(&term.weight_labels),
                    y_monomial(&term.y_labels)
                );
            }
        }
        out
    }
}

pub fn cmd_expand(
    surface: &Path,
    arc: &Path,
    json: bool,
    terms: bool,
    via_subgraphs: bool,
) -> Result<String, CliError> {
    let (t, a) = load(surface, arc)?;
    let e = if via_subgraphs {
        expansion::expand_via_subgraphs(&t, &a)?
    } else {
        expansion::expand(&t, &a)?
    };
    Ok(expansion_output(&e, json, terms))
}

pub fn cmd_count(surface: &Path, arc: &Path) -> Result<String, CliError> {
    let (t, a) = load(surface, arc)?;
    let g = SnakeGraph::build(&t, &a).map_err(|e| CliError::Validation(vec![e.to_string()]))?;
    Ok(format!("{}\n", snakegraph::matching::count_matchings(&g)))
}

pub fn cmd_fpoly(surface: &Path, arc: &Path, json: bool) -> Result<String, CliError> {
    let (t, a) = load(surface, arc)?;
    let f = expansion::f_polynomial(&t, &a)?;
    if json {
        Ok(json_line(&laurent_terms_json(&f)))
    } else {
        Ok(format!("{f}\n"))
    }
}

pub fn cmd_gvec(surface: &Path, arc: &Path, json: bool) -> Result<String, CliError> {
    let (t, a) = load(surface, arc)?;
    let g = expansion::g_vector(&t, &a)?;
    if json {
        Ok(json_line(&g))
    } else {
        Ok(format!("{g:?}\n"))
    }
}

pub fn cmd_matchings(surface: &Path, arc: &Path, json: bool) -> Result<String, CliError> {
    let (t, a) = load(surface, arc)?;
    let g = SnakeGraph::build(&t, &a).map_err(|e| CliError::Validation(vec![e.to_string()]))?;
    let ms = enumerate_matchings(&g);
    let (m_minus, _) = boundary_matchings(&g).map_err(|e| CliError::Internal(e.to_string()))?;
    let rows: Vec<(Vec<usize>, String, String, Vec<i64>)> = ms
        .iter()
        .map(|m| {
            let tiles = oriented_tiles(&g, m);
            let h =
                height_function(&g, m, &m_minus).map_err(|e| CliError::Internal(e.to_string()))?;
            Ok((
                m.edge_indices().to_vec(),
                arc_monomial(&m.weight_labels(&g)),
                y_monomial(&tiles_to_y_labels(&g, &tiles)),
                h,
            ))
        })
        .collect::<Result<_, CliError>>()?;
    if json {
        let snake = SnakeJson {
            crossings: g.crossings.clone(),
            connecting: g.connecting.clone(),
            glue_dirs: g
                .glue_dirs
                .iter()
                .map(|d| {
                    match d {
                        Direction::North => "north",
                        Direction::East => "east",
                    }
                    .to_string()
                })
                .collect(),
            tiles: g
                .tiles
                .iter()
                .map(|tile| TileJson {
                    index: tile.index,
                    diagonal: tile.diagonal,
                    north: tile.north,
                    east: tile.east,
                    south: tile.south,
                    west: tile.west,
                    rel: tile.rel,
                    pos: [tile.pos.0, tile.pos.1],
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeJson {
                    u: [e.a.0, e.a.1],
                    v: [e.b.0, e.b.1],
                    label: e.label,
                    diagonal: e.is_diagonal,
                    boundary: e.is_boundary(),
                })
                .collect(),
        };
        let matchings = rows
            .into_iter()
            .map(|(edges, weight, y, heights)| MatchingJson {
                edges,
                weight,
                y,
                heights,
            })
            .collect();
        Ok(json_line(&MatchingsJson { snake, matchings }))
    } else {
        let mut out = String::new();
        for (i, (edges, weight, y, heights)) in rows.iter().enumerate() {
            let edge_list: Vec<String> =
                edges.iter().map(|&ix| g.edges()[ix].to_string()).collect();
            let _ = writeln!(
                out,
                "M{:<3} edges: {}  w = {}  y = {}  h = {:?}",
                i + 1,
                edge_list.join(" "),
                weight,
                y,
                heights
            );
        }
        Ok(out)
    }
}

pub fn cmd_verify(
    surface: &Path,
    arc: &Path,
    max_depth: Option<usize>,
    json: bool,
) -> Result<String, CliError> {
    let (t, a) = load(surface, arc)?;
    let depth = max_depth.unwrap_or_else(|| oracle::default_max_depth(&a));
    let direct = expansion::expand(&t, &a)?.laurent;
    let flips = oracle::find_flip_sequence(&t, &a, depth).map_err(|e| match e {
        OracleError::NotFound { max_depth } => CliError::SearchFailed(format!(
            "no flip sequence found within depth {max_depth}; raise --max-depth"
        )),
        other => CliError::Internal(other.to_string()),
    })?;
    let mut seed = oracle::Seed::initial(t.b_matrix());
    for &k in &flips {
        seed = seed
            .mutate(k)
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    let via_oracle = seed.cluster[*flips.last().expect("nonempty") - 1].clone();
    let ok = direct == via_oracle;
    if json {
        let out = json_line(&VerifyJson {
            flips: flips.clone(),
            matching_formula: laurent_terms_json(&direct),
            seed_mutation: laurent_terms_json(&via_oracle),
            ok,
        });
        if ok {
            Ok(out)
        } else {
            Err(CliError::Mismatch {
                lhs: direct.to_string(),
                rhs: via_oracle.to_string(),
            })
        }
    } else if ok {
        Ok(format!(
            "flips: {flips:?}\nmatching formula: {direct}\nseed mutation:    {via_oracle}\nverdict: OK\n"
        ))
    } else {
        Err(CliError::Mismatch {
            lhs: direct.to_string(),
            rhs: via_oracle.to_string(),
        })
    }
}


pub fn cmd_flip(surface: &Path, label: usize, json: bool) -> Result<String, CliError> {
    let (t, file) = format::load_surface(surface)?;
    let (flipped, quad) = t
        .flip(label)
        .map_err(|e| CliError::Validation(vec![e.to_string()]))?;
    if json {
        Ok(json_line(&SurfaceFile {
            n: flipped.n,
            m: flipped.m,
            triangles: flipped.triangles.clone(),
            genus: file.genus,
            boundaries: file.boundaries,
            marked: file.marked,
        }))
    } else {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "flip {label}: quadrilateral rho = ({}, {}), sigma = ({}, {})",
            quad.rho1, quad.rho2, quad.sigma1, quad.sigma2
        );
        let _ = writeln!(out, "triangles: {:?}", flipped.triangles);
        Ok(out)
    }
}
