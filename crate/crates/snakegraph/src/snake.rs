//! Construction of the snake graph of an arc.
//!
//! Each crossing of the arc contributes a tile: the quadrilateral around the
//! crossed interior arc, drawn as a unit square with the crossed arc on the
//! NW–SE diagonal. Consecutive tiles are glued along the connecting arc of
//! the triangle they share, which always sits on the north or east side of
//! the earlier tile. Dropping the diagonals yields the graph whose perfect
//! matchings drive the expansion formula.
//!
//! Label placement: tiles alternate relative orientation along the snake,
//! `+1` on odd tiles. In a `+1` tile, reading the upper triangle of the tile
//! in stored cyclic order starting at the diagonal gives (diagonal, north,
//! east), and the lower triangle gives (diagonal, south, west); a `-1` tile
//! swaps north with east and south with west. Tile 1 sits at the grid origin
//! with the arc's start triangle as its lower half. With this placement the
//! shared side of consecutive tiles always matches up, for any input.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::surface::{ArcContext, ArcError, ArcSpec, Triangulation};

/// Gluing direction from one tile to the next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    North,
    East,
}

/// One of the four sides of a tile.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    North,
    East,
    South,
    West,
}

/// A corner of the integer grid the snake is embedded in.
pub type GridPoint = (usize, usize);

/// Where an edge of the snake graph lands when the strip of tiles is folded
/// back onto the fan of triangles traversed by the arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FanArc {
    /// The lift of the k-th crossed arc (1-based).
    Diagonal(usize),
    /// The lift of the k-th connecting arc (1-based).
    Connecting(usize),
    /// One of the two sides of the start triangle not crossed by the arc.
    StartSide(u8),
    /// One of the two sides of the final triangle not crossed by the arc.
    EndSide(u8),
}

/// A tile of the snake graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    /// 1-based position along the snake.
    pub index: usize,
    pub diagonal: usize,
    pub north: usize,
    pub east: usize,
    pub south: usize,
    pub west: usize,
    /// +1 when the tile drawing agrees with the surface orientation.
    pub rel: i8,
    /// Grid cell of the tile; tile 1 occupies (0, 0).
    pub pos: GridPoint,
}

impl Tile {
    pub fn side(&self, s: Side) -> usize {
        match s {
            Side::North => self.north,
            Side::East => self.east,
            Side::South => self.south,
            Side::West => self.west,
        }
    }

    pub fn sw(&self) -> GridPoint {
        self.pos
    }

    pub fn se(&self) -> GridPoint {
        (self.pos.0 + 1, self.pos.1)
    }

    pub fn nw(&self) -> GridPoint {
        (self.pos.0, self.pos.1 + 1)
    }

    pub fn ne(&self) -> GridPoint {
        (self.pos.0 + 1, self.pos.1 + 1)
    }
}

/// An edge of the snake graph, with canonical endpoint order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub a: GridPoint,
    pub b: GridPoint,
    pub label: usize,
    pub is_diagonal: bool,
    /// Shared between two consecutive tiles.
    pub is_glue: bool,
    pub fan: FanArc,
}

impl Edge {
    /// On the outer contour of the strip of tiles.
    pub fn is_boundary(&self) -> bool {
        !self.is_diagonal && !self.is_glue
    }

    pub fn endpoints(&self) -> (GridPoint, GridPoint) {
        (self.a, self.b)
    }

    /// The up-to-two grid cells this (non-diagonal) edge borders.
    pub fn adjacent_cells(&self) -> [Option<GridPoint>; 2] {
        debug_assert!(!self.is_diagonal);
        if self.a.1 == self.b.1 {
            let (x, y) = self.a;
            [Some((x, y)), y.checked_sub(1).map(|yb| (x, yb))]
        } else {
            let (x, y) = self.a;
            [Some((x, y)), x.checked_sub(1).map(|xb| (xb, y))]
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{})-({},{})[{}]",
            self.a.0, self.a.1, self.b.0, self.b.1, self.label
        )
    }
}

/// The glued strip of tiles of an arc, together with its grid embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnakeGraph {
    pub tiles: Vec<Tile>,
    pub glue_dirs: Vec<Direction>,
    pub crossings: Vec<usize>,
    pub connecting: Vec<usize>,
    /// Labels of the two uncrossed sides of the start triangle, in stored
    /// cyclic order after the first crossing.
    pub start_sides: [usize; 2],
    /// Labels of the two uncrossed sides of the final triangle.
    pub end_sides: [usize; 2],
    edges: Vec<Edge>,
}

impl SnakeGraph {
    /// Number of tiles.
    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// All edges, diagonals included, in construction order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Indices of the non-diagonal edges.
    pub fn matching_edge_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_diagonal)
            .map(|(i, _)| i)
    }

    pub fn vertices(&self) -> BTreeSet<GridPoint> {
        let mut vs = BTreeSet::new();
        for e in &self.edges {
            if !e.is_diagonal {
                vs.insert(e.a);
                vs.insert(e.b);
            }
        }
        vs
    }

    /// The glue edge between tiles `k` and `k+1` (1-based `k`).
    pub fn glue_edge_index(&self, k: usize) -> usize {
        let tile = &self.tiles[k - 1];
        let (a, b) = match self.glue_dirs[k - 1] {
            Direction::North => (tile.nw(), tile.ne()),
            Direction::East => (tile.se(), tile.ne()),
        };
        self.edge_index_between(a, b)
            .expect("glue edge exists by construction")
    }

    pub fn edge_index_between(&self, a: GridPoint, b: GridPoint) -> Option<usize> {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        self.edges
            .iter()
            .position(|e| !e.is_diagonal && e.a == a && e.b == b)
    }

    /// Build the snake graph of `arc` in `t`.
    pub fn build(t: &Triangulation, arc: &ArcSpec) -> Result<SnakeGraph, ArcError> {
        let ctx = t.connecting_arcs(arc)?;
        Ok(Self::assemble(t, arc, &ctx))
    }

    fn assemble(t: &Triangulation, arc: &ArcSpec, ctx: &ArcContext) -> SnakeGraph {
        let d = arc.crossings.len();
        let rotate = |tri_ix: usize, label: usize| -> [usize; 3] {
            let tri = t.triangles[tri_ix];
            let p = tri.iter().position(|&x| x == label).expect("side present");
            [tri[p], tri[(p + 1) % 3], tri[(p + 2) % 3]]
        };

        let mut tiles: Vec<Tile> = Vec::with_capacity(d);
        let mut glue_dirs: Vec<Direction> = Vec::with_capacity(d.saturating_sub(1));
        for k in 1..=d {
            let diag = arc.crossings[k - 1];
            let rel: i8 = if k % 2 == 1 { 1 } else { -1 };
            let [_, a, b] = rotate(ctx.triangle_chain[k], diag);
            let [_, c, w] = rotate(ctx.triangle_chain[k - 1], diag);
            let (north, east, south, west) = if rel == 1 { (a, b, c, w) } else { (b, a, w, c) };
            let pos = if k == 1 {
                (0, 0)
            } else {
                let prev = &tiles[k - 2];
                match glue_dirs[k - 2] {
                    Direction::North => (prev.pos.0, prev.pos.1 + 1),
                    Direction::East => (prev.pos.0 + 1, prev.pos.1),
                }
            };
            let tile = Tile {
                index: k,
                diagonal: diag,
                north,
                east,
                south,
                west,
                rel,
                pos,
            };
            if k < d {
                let g = ctx.connecting[k - 1];
                let dir = if tile.north == g {
                    Direction::North
                } else {
                    debug_assert_eq!(tile.east, g);
                    Direction::East
                };
                glue_dirs.push(dir);
            }
            if k > 1 {
                // shared side carries the connecting arc on both tiles
                let g = ctx.connecting[k - 2];
                let expected = match glue_dirs[k - 2] {
                    Direction::North => tile.south,
                    Direction::East => tile.west,
                };
                debug_assert_eq!(expected, g);
            }
            tiles.push(tile);
        }

        let [_, s0, s1] = rotate(ctx.triangle_chain[0], arc.crossings[0]);
        let [_, e0, e1] = rotate(ctx.triangle_chain[d], arc.crossings[d - 1]);

        let edges = Self::build_edges(
            &tiles,
            &glue_dirs,
            &arc.crossings,
            &ctx.connecting,
            [s0, s1],
            [e0, e1],
        );

        SnakeGraph {
            tiles,
            glue_dirs,
            crossings: arc.crossings.clone(),
            connecting: ctx.connecting.clone(),
            start_sides: [s0, s1],
            end_sides: [e0, e1],
            edges,
        }
    }

    fn build_edges(
        tiles: &[Tile],
        glue_dirs: &[Direction],
        crossings: &[usize],
        connecting: &[usize],
        start_sides: [usize; 2],
        end_sides: [usize; 2],
    ) -> Vec<Edge> {
        let d = tiles.len();
        let mut edges = Vec::with_capacity(4 * d);
        let fan_of_outer = |k: usize, label: usize| -> FanArc {
            // north/east sides of tile k lie in the k-th traversed triangle
            if k < d {
                if label == connecting[k - 1] {
                    FanArc::Connecting(k)
                } else {
                    debug_assert_eq!(label, crossings[k]);
                    FanArc::Diagonal(k + 1)
                }
            } else if label == end_sides[0] {
                FanArc::EndSide(0)
            } else {
                debug_assert_eq!(label, end_sides[1]);
                FanArc::EndSide(1)
            }
        };
        let fan_of_inner = |k: usize, label: usize| -> FanArc {
            // south/west sides of tile k lie in the (k-1)-th triangle
            if k > 1 {
                if label == connecting[k - 2] {
                    FanArc::Connecting(k - 1)
                } else {
                    debug_assert_eq!(label, crossings[k - 2]);
                    FanArc::Diagonal(k - 1)
                }
            } else if label == start_sides[0] {
                FanArc::StartSide(0)
            } else {
                debug_assert_eq!(label, start_sides[1]);
                FanArc::StartSide(1)
            }
        };
        let mk = |a: GridPoint, b: GridPoint, label, is_diagonal, is_glue, fan| {
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            Edge {
                a,
                b,
                label,
                is_diagonal,
                is_glue,
                fan,
            }
        };
        for tile in tiles {
            let k = tile.index;
            let skip_south = k > 1 && glue_dirs[k - 2] == Direction::North;
            let skip_west = k > 1 && glue_dirs[k - 2] == Direction::East;
            let glue_north = k < d && glue_dirs[k - 1] == Direction::North;
            let glue_east = k < d && glue_dirs[k - 1] == Direction::East;
            if !skip_south {
                edges.push(mk(
                    tile.sw(),
                    tile.se(),
                    tile.south,
                    false,
                    false,
                    fan_of_inner(k, tile.south),
                ));
            }
            if !skip_west {
                edges.push(mk(
                    tile.sw(),
                    tile.nw(),
                    tile.west,
                    false,
                    false,
                    fan_of_inner(k, tile.west),
                ));
            }
            edges.push(mk(
                tile.nw(),
                tile.ne(),
                tile.north,
                false,
                glue_north,
                fan_of_outer(k, tile.north),
            ));
            edges.push(mk(
                tile.se(),
                tile.ne(),
                tile.east,
                false,
                glue_east,
                fan_of_outer(k, tile.east),
            ));
            edges.push(mk(
                tile.nw(),
                tile.se(),
                tile.diagonal,
                true,
                false,
                FanArc::Diagonal(k),
            ));
        }
        edges
    }

    /// The mirror image of the snake across the main diagonal of the grid:
    /// north and east swap, as do south and west, glue directions flip, and
    /// every tile's relative orientation is negated. Expansions computed
    /// from the mirror agree with the original; the unreflected convention
    /// is fixed by the tile-placement rule above.
    pub fn reflected(&self) -> SnakeGraph {
        let tiles: Vec<Tile> = self
            .tiles
            .iter()
            .map(|t| Tile {
                index: t.index,
                diagonal: t.diagonal,
                north: t.east,
                east: t.north,
                south: t.west,
                west: t.south,
                rel: -t.rel,
                pos: (t.pos.1, t.pos.0),
            })
            .collect();
        let glue_dirs: Vec<Direction> = self
            .glue_dirs
            .iter()
            .map(|d| match d {
                Direction::North => Direction::East,
                Direction::East => Direction::North,
            })
            .collect();
        let edges = Self::build_edges(
            &tiles,
            &glue_dirs,
            &self.crossings,
            &self.connecting,
            self.start_sides,
            self.end_sides,
        );
        SnakeGraph {
            tiles,
            glue_dirs,
            crossings: self.crossings.clone(),
            connecting: self.connecting.clone(),
            start_sides: self.start_sides,
            end_sides: self.end_sides,
            edges,
        }
    }

    /// The triangles of the fan polygon the arc traverses: `d+1` triangles
    /// glued in a chain along the lifted crossings, forming a triangulated
    /// `(d+3)`-gon with `d` interior arcs. Each triangle lists its sides in
    /// stored cyclic order starting at the first lifted crossing it touches.
    pub fn fan_polygon(&self) -> Vec<[(FanArc, usize); 3]> {
        let d = self.len();
        let mut tris = Vec::with_capacity(d + 1);
        tris.push([
            (FanArc::Diagonal(1), self.crossings[0]),
            (FanArc::StartSide(0), self.start_sides[0]),
            (FanArc::StartSide(1), self.start_sides[1]),
        ]);
        for k in 1..d {
            tris.push([
                (FanArc::Diagonal(k), self.crossings[k - 1]),
                (FanArc::Diagonal(k + 1), self.crossings[k]),
                (FanArc::Connecting(k), self.connecting[k - 1]),
            ]);
        }
        tris.push([
            (FanArc::Diagonal(d), self.crossings[d - 1]),
            (FanArc::EndSide(0), self.end_sides[0]),
            (FanArc::EndSide(1), self.end_sides[1]),
        ]);
        tris
    }
}
