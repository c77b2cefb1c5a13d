//! Triangulated convex polygons: generators for the polygon family of
//! sample surfaces and for exhaustive sweeps over all arcs of all
//! triangulations of a small polygon.
//!
//! Vertices `1..=N` sit in convex position (counterclockwise); interior
//! arcs are chords, boundary arcs are the polygon edges. Chords of a
//! triangulation are labelled `1..=N-3` in sorted order; the boundary edge
//! leaving vertex `v` toward `v+1` gets label `(N-3) + v`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::surface::{ArcSpec, Triangulation};

/// A triangulated polygon together with the geometric data behind the
/// combinatorial [`Triangulation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonModel {
    pub vertex_count: usize,
    /// Chord endpoints by interior label (sorted pairs, sorted order).
    pub chords: Vec<(usize, usize)>,
    /// Vertex triple of each triangle slot.
    pub faces: Vec<[usize; 3]>,
    pub triangulation: Triangulation,
}

fn is_boundary_pair(nv: usize, u: usize, w: usize) -> bool {
    debug_assert!(u < w);
    w == u + 1 || (u == 1 && w == nv)
}

impl PolygonModel {
    /// Build the model from a maximal set of pairwise non-crossing chords.
    pub fn from_chords(nv: usize, chords: &[(usize, usize)]) -> PolygonModel {
        assert!(nv >= 4, "need at least a quadrilateral");
        let mut chords: Vec<(usize, usize)> = chords
            .iter()
            .map(|&(u, w)| if u < w { (u, w) } else { (w, u) })
            .collect();
        chords.sort_unstable();
        assert_eq!(chords.len(), nv - 3, "not a maximal chord set");
        let n = chords.len();
        let label_of = |u: usize, w: usize| -> usize {
            let (u, w) = if u < w { (u, w) } else { (w, u) };
            if is_boundary_pair(nv, u, w) {
                if u == 1 && w == nv {
                    n + nv
                } else {
                    n + u
                }
            } else {
                chords
                    .binary_search(&(u, w))
                    .expect("pair is a chord of the triangulation")
                    + 1
            }
        };
        let connected = |u: usize, w: usize| -> bool {
            let (u, w) = if u < w { (u, w) } else { (w, u) };
            is_boundary_pair(nv, u, w) || chords.binary_search(&(u, w)).is_ok()
        };
        // in convex position any three pairwise connected vertices bound a
        // triangle of the subdivision
        let mut faces = Vec::new();
        for u in 1..=nv {
            for v in u + 1..=nv {
                if !connected(u, v) {
                    continue;
                }
                for w in v + 1..=nv {
                    if connected(u, w) && connected(v, w) {
                        faces.push([u, v, w]);
                    }
                }
            }
        }
        assert_eq!(faces.len(), nv - 2, "face count of a triangulated polygon");
        // store each face clockwise: u -> w -> v for ccw vertices u < v < w
        let triangles = faces
            .iter()
            .map(|&[u, v, w]| [label_of(u, w), label_of(v, w), label_of(u, v)])
            .collect();
        let triangulation = Triangulation::new(n, nv, triangles);
        debug_assert!(triangulation.validate().is_ok());
        PolygonModel {
            vertex_count: nv,
            chords,
            faces,
            triangulation,
        }
    }

    /// Fan triangulation: every chord from vertex 1.
    pub fn fan(nv: usize) -> PolygonModel {
        let chords: Vec<(usize, usize)> = (3..nv).map(|j| (1, j)).collect();
        Self::from_chords(nv, &chords)
    }

    /// All vertex pairs that are arcs of the polygon (non-adjacent pairs).
    pub fn all_chord_pairs(nv: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 1..=nv {
            for w in u + 2..=nv {
                if !(u == 1 && w == nv) {
                    out.push((u, w));
                }
            }
        }
        out
    }

    /// Flip the chord with interior label `k`, returning the new chord set.
    pub fn flip_chord(&self, k: usize) -> Vec<(usize, usize)> {
        let (p, q) = self.chords[k - 1];
        let third_vertices: Vec<usize> = self
            .faces
            .iter()
            .filter(|f| f.contains(&p) && f.contains(&q))
            .map(|f| *f.iter().find(|&&x| x != p && x != q).unwrap())
            .collect();
        assert_eq!(third_vertices.len(), 2);
        let (r, s) = (third_vertices[0], third_vertices[1]);
        let new_chord = if r < s { (r, s) } else { (s, r) };
        let mut chords = self.chords.clone();
        chords.remove(k - 1);
        chords.push(new_chord);
        chords.sort_unstable();
        chords
    }

    /// Every triangulation of the polygon, enumerated by breadth-first flip
    /// search from the fan.
    pub fn all_triangulations(nv: usize) -> Vec<PolygonModel> {
        let fan = Self::fan(nv);
        let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
        let mut queue: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut out = Vec::new();
        seen.insert(fan.chords.clone());
        queue.push(fan.chords.clone());
        let mut head = 0;
        while head < queue.len() {
            let chords = queue[head].clone();
            head += 1;
            let model = Self::from_chords(nv, &chords);
            for k in 1..=model.chords.len() {
                let next = model.flip_chord(k);
                if seen.insert(next.clone()) {
                    queue.push(next);
                }
            }
            out.push(model);
        }
        out
    }

    /// Express the chord `(a, b)` as an arc through this triangulation:
    /// the chords it crosses, ordered along the straight segment from `a`
    /// to `b`, plus the triangle its first segment lies in. `None` when the
    /// chord is one of the triangulation's own arcs.
    pub fn arc_spec(&self, chord: (usize, usize)) -> Option<ArcSpec> {
        let (a, b) = if chord.0 < chord.1 {
            chord
        } else {
            (chord.1, chord.0)
        };
        assert!(!is_boundary_pair(self.vertex_count, a, b), "boundary edge");
        if self.chords.binary_search(&(a, b)).is_ok() {
            return None;
        }
        // convex position on a parabola keeps everything in exact integers
        let point = |v: usize| -> (i64, i64) { (v as i64, (v * v) as i64) };
        let cross = |o: (i64, i64), p: (i64, i64), q: (i64, i64)| -> i64 {
            (p.0 - o.0) * (q.1 - o.1) - (p.1 - o.1) * (q.0 - o.0)
        };
        let (pa, pb) = (point(a), point(b));
        let mut crossings: Vec<(i64, i64, usize)> = Vec::new();
        for (ix, &(c, d)) in self.chords.iter().enumerate() {
            if c == a || c == b || d == a || d == b {
                continue;
            }
            let strictly_between = |x: usize| a < x && x < b;
            if strictly_between(c) == strictly_between(d) {
                continue;
            }
            let (pc, pd) = (point(c), point(d));
            // parameter of the intersection along a -> b
            let num = cross(pa, pc, pd);
            let den = cross(pa, pb, pd) - cross(pa, pb, pc);
            let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
            debug_assert!(den > 0 && num > 0 && num < den);
            crossings.push((num, den, ix + 1));
        }
        debug_assert!(!crossings.is_empty(), "maximal triangulation");
        crossings.sort_by(|x, y| (x.0 * y.1).cmp(&(y.0 * x.1)));
        let labels: Vec<usize> = crossings.iter().map(|&(_, _, l)| l).collect();
        let first = labels[0];
        let start_triangle = self
            .faces
            .iter()
            .position(|f| {
                f.contains(&a) && {
                    let (u, w) = self.chords[first - 1];
                    f.contains(&u) && f.contains(&w)
                }
            })
            .expect("start triangle exists");
        Some(ArcSpec::new(labels, start_triangle))
    }
}
