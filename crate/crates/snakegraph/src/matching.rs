//! Perfect matchings of a snake graph and the data attached to them: weight
//! monomials, coefficient monomials (computed two independent ways), height
//! functions, and the folded path through the fan of traversed triangles.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::snake::{Edge, FanArc, GridPoint, SnakeGraph};

/// A perfect matching, stored as sorted indices into the snake graph's edge
/// list. Diagonal edges never appear.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Matching {
    edges: Vec<usize>,
}

impl Matching {
    fn new(mut edges: Vec<usize>) -> Self {
        edges.sort_unstable();
        Matching { edges }
    }

    /// Build a matching from explicit edge indices. Debug builds verify
    /// that every vertex is covered exactly once.
    pub fn from_edge_indices(g: &SnakeGraph, edges: Vec<usize>) -> Matching {
        let m = Matching::new(edges);
        debug_assert!({
            let mut covered = BTreeSet::new();
            m.edges.iter().all(|&i| {
                let e = &g.edges()[i];
                !e.is_diagonal && covered.insert(e.a) && covered.insert(e.b)
            }) && covered.len() == g.vertices().len()
        });
        m
    }

    pub fn edge_indices(&self) -> &[usize] {
        &self.edges
    }

    pub fn contains(&self, edge_ix: usize) -> bool {
        self.edges.binary_search(&edge_ix).is_ok()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_all_boundary(&self, g: &SnakeGraph) -> bool {
        self.edges.iter().all(|&i| g.edges()[i].is_boundary())
    }

    /// Edge labels with multiplicity, sorted. The product of the matched
    /// edge weights.
    pub fn weight_labels(&self, g: &SnakeGraph) -> Vec<usize> {
        let mut w: Vec<usize> = self.edges.iter().map(|&i| g.edges()[i].label).collect();
        w.sort_unstable();
        w
    }
}

/// A structural theorem about matchings failed to hold; indicates corrupted
/// input orientation data or a bug.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchingError {
    /// The number of all-boundary matchings is not two.
    BoundaryMatchingCount { found: usize },
    /// The all-boundary matchings do not split into one with trivial
    /// coefficient and one with the full coefficient product.
    BoundaryCoefficients,
    /// A symmetric difference with the minimal matching is not the boundary
    /// of a union of tiles.
    NotTileUnion,
}

impl fmt::Display for MatchingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchingError::BoundaryMatchingCount { found } => {
                write!(
                    f,
                    "expected exactly 2 all-boundary matchings, found {found}"
                )
            }
            MatchingError::BoundaryCoefficients => {
                write!(
                    f,
                    "all-boundary matchings have unexpected coefficient monomials"
                )
            }
            MatchingError::NotTileUnion => write!(
                f,
                "symmetric difference with the minimal matching is not a union of tiles"
            ),
        }
    }
}

impl core::error::Error for MatchingError {}

/// Interface vertices between consecutive tiles: the endpoints of the glue
/// edge, in sorted order.
fn interface(g: &SnakeGraph, k: usize) -> [GridPoint; 2] {
    let e = &g.edges()[g.glue_edge_index(k)];
    [e.a, e.b]
}

/// Non-diagonal edges of tile `k` excluding glue edges on either side, in
/// edge-list order.
fn local_edges(g: &SnakeGraph, k: usize) -> Vec<usize> {
    let tile = &g.tiles[k - 1];
    let corners = [tile.sw(), tile.se(), tile.nw(), tile.ne()];
    g.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| {
            !e.is_diagonal && !e.is_glue && corners.contains(&e.a) && corners.contains(&e.b)
        })
        .map(|(i, _)| i)
        .collect()
}

/// One admissible move at a tile: chosen local edges, resulting coverage of
/// the next interface, and whether the glue edge may additionally be taken.
type StepChoice = (Vec<usize>, [bool; 2], bool);

struct Dp<'a> {
    g: &'a SnakeGraph,
    locals: Vec<Vec<usize>>,
    interfaces: Vec<[GridPoint; 2]>,
}

impl<'a> Dp<'a> {
    fn new(g: &'a SnakeGraph) -> Self {
        let d = g.len();
        Dp {
            g,
            locals: (1..=d).map(|k| local_edges(g, k)).collect(),
            interfaces: (1..d).map(|k| interface(g, k)).collect(),
        }
    }

    /// Subsets of tile `k`'s local edges that are compatible with the given
    /// coverage carried in on the previous interface. Returns
    /// `(chosen local edges, next interface coverage, glue edge allowed)`;
    /// for the last tile the coverage pair is meaningless.
    fn steps(
        &self,
        k: usize,
        carry: &BTreeMap<GridPoint, bool>,
        edge_filter: impl Fn(usize) -> bool,
    ) -> Vec<StepChoice> {
        let d = self.g.len();
        let tile = &self.g.tiles[k - 1];
        let corners = [tile.sw(), tile.se(), tile.nw(), tile.ne()];
        let next_iface: Option<[GridPoint; 2]> = if k < d {
            Some(self.interfaces[k - 1])
        } else {
            None
        };
        let candidates: Vec<usize> = self.locals[k - 1]
            .iter()
            .copied()
            .filter(|&i| edge_filter(i))
            .collect();
        let mut out = Vec::new();
        'subset: for mask in 0u32..(1 << candidates.len()) {
            let chosen: Vec<usize> = candidates
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &i)| i)
                .collect();
            let mut cover: BTreeMap<GridPoint, usize> = BTreeMap::new();
            for v in corners {
                let carried = carry.get(&v).copied().unwrap_or(false);
                cover.insert(v, usize::from(carried));
            }
            for &i in &chosen {
                let e = &self.g.edges()[i];
                for v in [e.a, e.b] {
                    let c = cover.get_mut(&v).expect("edge endpoint is a corner");
                    *c += 1;
                    if *c > 1 {
                        continue 'subset;
                    }
                }
            }
            let owned_ok = corners.iter().all(|v| {
                if let Some(iface) = next_iface {
                    if iface.contains(v) {
                        return true;
                    }
                }
                cover[v] == 1
            });
            if !owned_ok {
                continue;
            }
            let (state, glue_ok) = if let Some(iface) = next_iface {
                let s = [cover[&iface[0]] == 1, cover[&iface[1]] == 1];
                let glue_allowed = !s[0] && !s[1] && edge_filter(self.g.glue_edge_index(k));
                (s, glue_allowed)
            } else {
                ([false, false], false)
            };
            out.push((chosen, state, glue_ok));
        }
        out
    }
}

fn enumerate_filtered(g: &SnakeGraph, edge_filter: impl Fn(usize) -> bool + Copy) -> Vec<Matching> {
    let d = g.len();
    let dp = Dp::new(g);
    let mut out = Vec::new();
    let mut chosen_stack: Vec<usize> = Vec::new();

    fn rec(
        dp: &Dp<'_>,
        k: usize,
        carry: BTreeMap<GridPoint, bool>,
        chosen_stack: &mut Vec<usize>,
        out: &mut Vec<Matching>,
        edge_filter: impl Fn(usize) -> bool + Copy,
    ) {
        let d = dp.g.len();
        for (chosen, state, glue_ok) in dp.steps(k, &carry, edge_filter) {
            let base_len = chosen_stack.len();
            chosen_stack.extend(&chosen);
            if k == d {
                out.push(Matching::new(chosen_stack.clone()));
            } else {
                let iface = dp.interfaces[k - 1];
                let carry_next: BTreeMap<GridPoint, bool> =
                    [(iface[0], state[0]), (iface[1], state[1])].into();
                rec(dp, k + 1, carry_next, chosen_stack, out, edge_filter);
                if glue_ok {
                    chosen_stack.push(dp.g.glue_edge_index(k));
                    let carry_glued: BTreeMap<GridPoint, bool> =
                        [(iface[0], true), (iface[1], true)].into();
                    rec(dp, k + 1, carry_glued, chosen_stack, out, edge_filter);
                    chosen_stack.pop();
                }
            }
            chosen_stack.truncate(base_len);
        }
    }

    rec(
        &dp,
        1,
        BTreeMap::new(),
        &mut chosen_stack,
        &mut out,
        edge_filter,
    );
    debug_assert!(d == 0 || out.iter().all(|m| m.len() == d + 1));
    out
}

/// All perfect matchings, complete and duplicate-free, in a deterministic
/// order: depth-first over the tiles with local edge subsets in edge-list
/// order, the glue edge tried last.
pub fn enumerate_matchings(g: &SnakeGraph) -> Vec<Matching> {
    enumerate_filtered(g, |_| true)
}

/// Number of perfect matchings, by the same tile walk but only carrying
/// per-interface counts.
pub fn count_matchings(g: &SnakeGraph) -> BigUint {
    let d = g.len();
    let dp = Dp::new(g);
    // states: coverage of the current interface pair
    let mut states: BTreeMap<[bool; 2], BigUint> = BTreeMap::new();
    states.insert([false, false], BigUint::one());
    let mut carry_vertices: Option<[GridPoint; 2]> = None;
    let mut total = BigUint::zero();
    for k in 1..=d {
        let mut next: BTreeMap<[bool; 2], BigUint> = BTreeMap::new();
        for (state, count) in &states {
            let carry: BTreeMap<GridPoint, bool> = match carry_vertices {
                Some(vs) => [(vs[0], state[0]), (vs[1], state[1])].into(),
                None => BTreeMap::new(),
            };
            for (_, out_state, glue_ok) in dp.steps(k, &carry, |_| true) {
                if k == d {
                    total += count;
                } else {
                    *next.entry(out_state).or_default() += count;
                    if glue_ok {
                        *next.entry([true, true]).or_default() += count;
                    }
                }
            }
        }
        if k < d {
            carry_vertices = Some(dp.interfaces[k - 1]);
            states = next;
        }
    }
    total
}

/// The two matchings using only boundary edges: the minimal one (trivial
/// coefficient monomial) first, the maximal one second.
pub fn boundary_matchings(g: &SnakeGraph) -> Result<(Matching, Matching), MatchingError> {
    let all_boundary = enumerate_filtered(g, |i| g.edges()[i].is_boundary());
    if all_boundary.len() != 2 {
        return Err(MatchingError::BoundaryMatchingCount {
            found: all_boundary.len(),
        });
    }
    let [a, b]: [Matching; 2] = all_boundary.try_into().expect("length checked");
    let full: BTreeSet<usize> = (1..=g.len()).collect();
    let (ta, tb) = (oriented_tiles(g, &a), oriented_tiles(g, &b));
    if ta.is_empty() && tb == full {
        Ok((a, b))
    } else if tb.is_empty() && ta == full {
        Ok((b, a))
    } else {
        Err(MatchingError::BoundaryCoefficients)
    }
}

/// The alternating path induced by a matching: matched edges in path order
/// interleaved with the tile diagonals, starting at the southwest corner of
/// tile 1. The bool per tile records whether the diagonal is traversed
/// upward (southeast to northwest).
fn induced_path(g: &SnakeGraph, m: &Matching) -> (Vec<usize>, Vec<bool>) {
    let edge_at: BTreeMap<GridPoint, usize> = {
        let mut map = BTreeMap::new();
        for &i in m.edge_indices() {
            let e = &g.edges()[i];
            let prev_a = map.insert(e.a, i);
            let prev_b = map.insert(e.b, i);
            debug_assert!(prev_a.is_none() && prev_b.is_none(), "not a matching");
        }
        map
    };
    let other_end = |i: usize, v: GridPoint| -> GridPoint {
        let e = &g.edges()[i];
        if e.a == v {
            e.b
        } else {
            e.a
        }
    };
    let mut cur = g.tiles[0].sw();
    let mut medges = Vec::with_capacity(g.len() + 1);
    let mut ups = Vec::with_capacity(g.len());
    for tile in &g.tiles {
        let i = edge_at[&cur];
        medges.push(i);
        cur = other_end(i, cur);
        let (nw, se) = (tile.nw(), tile.se());
        debug_assert!(cur == nw || cur == se, "path leaves the diagonal");
        if cur == se {
            ups.push(true);
            cur = nw;
        } else {
            ups.push(false);
            cur = se;
        }
    }
    medges.push(edge_at[&cur]);
    (medges, ups)
}

/// Tiles whose diagonal is traversed coherently with the arc: upward in a
/// `+1` tile, downward in a `-1` tile. The coefficient monomial of the
/// matching is the product of `y_{i_k}` over these tiles.
pub fn oriented_tiles(g: &SnakeGraph, m: &Matching) -> BTreeSet<usize> {
    let (_, ups) = induced_path(g, m);
    g.tiles
        .iter()
        .zip(ups)
        .filter(|(t, up)| (t.rel == 1) == *up)
        .map(|(t, _)| t.index)
        .collect()
}

/// Tiles enclosed by the symmetric difference with the minimal matching.
/// By the structure theorem for snake graphs this is always a union of
/// tiles whose boundary is exactly the symmetric difference; anything else
/// reports an error.
pub fn symmdiff_tiles(
    g: &SnakeGraph,
    m: &Matching,
    m_minus: &Matching,
) -> Result<BTreeSet<usize>, MatchingError> {
    let diff = symmetric_difference(m, m_minus);
    let cells: BTreeSet<GridPoint> = g.tiles.iter().map(|t| t.pos).collect();
    let inside: BTreeSet<GridPoint> = cells
        .iter()
        .copied()
        .filter(|&(cx, cy)| {
            let mut crossings = 0usize;
            for &i in &diff {
                let e = &g.edges()[i];
                if e.a.1 == e.b.1 && e.a.0 == cx && e.a.1 <= cy {
                    crossings += 1;
                }
            }
            crossings % 2 == 1
        })
        .collect();
    // the boundary of the selected cells must reproduce the difference
    let mut boundary: BTreeSet<usize> = BTreeSet::new();
    for (i, e) in g.edges().iter().enumerate() {
        if e.is_diagonal {
            continue;
        }
        let count = e
            .adjacent_cells()
            .iter()
            .flatten()
            .filter(|c| inside.contains(c))
            .count();
        if count == 1 {
            boundary.insert(i);
        }
    }
    if boundary != diff {
        return Err(MatchingError::NotTileUnion);
    }
    Ok(g.tiles
        .iter()
        .filter(|t| inside.contains(&t.pos))
        .map(|t| t.index)
        .collect())
}

fn symmetric_difference(a: &Matching, b: &Matching) -> BTreeSet<usize> {
    let sa: BTreeSet<usize> = a.edge_indices().iter().copied().collect();
    let sb: BTreeSet<usize> = b.edge_indices().iter().copied().collect();
    sa.symmetric_difference(&sb).copied().collect()
}

/// Map a set of tile indices to the sorted multiset of their diagonal
/// labels; the corresponding coefficient monomial is the product of
/// `y_label` over this multiset.
pub fn tiles_to_y_labels(g: &SnakeGraph, tiles: &BTreeSet<usize>) -> Vec<usize> {
    let mut labels: Vec<usize> = tiles.iter().map(|&k| g.tiles[k - 1].diagonal).collect();
    labels.sort_unstable();
    labels
}

/// Per-tile height of the matching over the minimal matching: superimpose
/// the two matchings (matched edges black to white, minimal-matching edges
/// white to black, southwest corner of tile 1 black), drop the shared
/// edges, and read each remaining directed contour as one altitude step for
/// every cell it encloses.
pub fn height_function(
    g: &SnakeGraph,
    m: &Matching,
    m_minus: &Matching,
) -> Result<Vec<i64>, MatchingError> {
    let diff = symmetric_difference(m, m_minus);
    let mut heights = vec![0i64; g.len()];
    if diff.is_empty() {
        return Ok(heights);
    }
    let origin = g.tiles[0].sw();
    let is_black = |v: GridPoint| (v.0 + v.1) % 2 == (origin.0 + origin.1) % 2;
    // intrinsic direction of each difference edge
    let directed: BTreeMap<usize, (GridPoint, GridPoint)> = diff
        .iter()
        .map(|&i| {
            let e = &g.edges()[i];
            let from_black = m.contains(i);
            let (from, to) = if is_black(e.a) == from_black {
                (e.a, e.b)
            } else {
                (e.b, e.a)
            };
            (i, (from, to))
        })
        .collect();
    let mut out_of: BTreeMap<GridPoint, usize> = BTreeMap::new();
    for (&i, &(from, _)) in &directed {
        let prev = out_of.insert(from, i);
        if prev.is_some() {
            return Err(MatchingError::NotTileUnion);
        }
    }
    let mut unvisited: BTreeSet<usize> = diff.clone();
    while let Some(&start) = unvisited.iter().next() {
        // walk one directed cycle
        let mut cycle_edges: Vec<usize> = Vec::new();
        let mut poly: Vec<GridPoint> = Vec::new();
        let mut i = start;
        loop {
            let (from, to) = directed[&i];
            if !unvisited.remove(&i) {
                return Err(MatchingError::NotTileUnion);
            }
            cycle_edges.push(i);
            poly.push(from);
            i = *out_of.get(&to).ok_or(MatchingError::NotTileUnion)?;
            if i == start {
                break;
            }
        }
        // signed area: positive means counterclockwise in grid coordinates
        let mut twice_area: i64 = 0;
        for w in 0..poly.len() {
            let (x0, y0) = poly[w];
            let (x1, y1) = poly[(w + 1) % poly.len()];
            twice_area += x0 as i64 * y1 as i64 - x1 as i64 * y0 as i64;
        }
        let step = if twice_area > 0 { 1 } else { -1 };
        for (ix, tile) in g.tiles.iter().enumerate() {
            let (cx, cy) = tile.pos;
            let mut crossings = 0usize;
            for &e_ix in &cycle_edges {
                let e = &g.edges()[e_ix];
                if e.a.1 == e.b.1 && e.a.0 == cx && e.a.1 <= cy {
                    crossings += 1;
                }
            }
            if crossings % 2 == 1 {
                heights[ix] += step;
            }
        }
    }
    Ok(heights)
}

/// One step of a folded path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathStep {
    pub label: usize,
    pub fan: FanArc,
}

/// Fold the matching's induced path onto the fan polygon: `2d+1` steps whose
/// even positions are the lifted crossings in order and whose odd positions
/// are the matched edges, each landing on its fan arc.
pub fn fold_to_path(g: &SnakeGraph, m: &Matching) -> Vec<PathStep> {
    let (medges, _) = induced_path(g, m);
    let mut steps = Vec::with_capacity(2 * g.len() + 1);
    for (k, &i) in medges.iter().enumerate() {
        let e: &Edge = &g.edges()[i];
        steps.push(PathStep {
            label: e.label,
            fan: e.fan,
        });
        if k < g.len() {
            steps.push(PathStep {
                label: g.crossings[k],
                fan: FanArc::Diagonal(k + 1),
            });
        }
    }
    steps
}

/// Matched edges in path order (the odd steps of the folded path).
pub fn path_edge_labels(g: &SnakeGraph, m: &Matching) -> Vec<usize> {
    let (medges, _) = induced_path(g, m);
    medges.iter().map(|&i| g.edges()[i].label).collect()
}
