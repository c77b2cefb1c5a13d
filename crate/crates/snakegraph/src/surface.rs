//! Combinatorial model of a triangulated unpunctured surface.
//!
//! A triangulation is stored as a list of triangles, each an ordered triple
//! of arc labels. Interior arcs carry labels `1..=n`, boundary arcs
//! `n+1..=n+m`. Every triple lists the sides of its triangle in the cyclic
//! order induced by the fixed orientation of the surface; all sign rules in
//! this crate (the B-matrix below, tile labels in [`crate::snake`], the
//! coefficient conventions in [`crate::matching`]) refer to this single
//! stored order, so a consistent global reversal of all triples yields the
//! mirror surface.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Skew-symmetric exchange matrix with 1-based indexing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl BMatrix {
    pub fn zero(n: usize) -> Self {
        BMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let mut m = Self::zero(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n);
            for (j, &v) in row.iter().enumerate() {
                m.entries[i * n + j] = v;
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry `b_{ij}`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[(i - 1) * self.n + (j - 1)] = v;
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (1..=self.n).all(|i| (1..=self.n).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    /// Matrix mutation in direction `k` (1-based):
    /// entries in row or column `k` change sign, and every other entry
    /// becomes `b_ij + sgn(b_ik) * max(b_ik * b_kj, 0)`.
    pub fn mutated(&self, k: usize) -> Self {
        let mut out = Self::zero(self.n);
        for i in 1..=self.n {
            for j in 1..=self.n {
                let v = if i == k || j == k {
                    -self.get(i, j)
                } else {
                    let bik = self.get(i, k);
                    let bkj = self.get(k, j);
                    self.get(i, j) + bik.signum() * (bik * bkj).max(0)
                };
                out.set(i, j, v);
            }
        }
        out
    }
}

/// One defect found by [`Triangulation::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A triangle uses a label outside `1..=n+m`.
    BadLabel { triangle: usize, label: usize },
    /// The three sides of a triangle are not pairwise distinct.
    RepeatedSide { triangle: usize, label: usize },
    /// An interior arc must lie in exactly 2 triangles, a boundary arc in
    /// exactly 1.
    IncidenceCount {
        label: usize,
        count: usize,
        expected: usize,
    },
    /// `3 * triangles != 2n + m`.
    EulerMismatch {
        triangles: usize,
        n: usize,
        m: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadLabel { triangle, label } => {
                write!(f, "triangle {triangle}: label {label} out of range")
            }
            Violation::RepeatedSide { triangle, label } => {
                write!(f, "triangle {triangle}: repeated side {label}")
            }
            Violation::IncidenceCount {
                label,
                count,
                expected,
            } => write!(
                f,
                "arc {label} occurs in {count} triangles, expected {expected}"
            ),
            Violation::EulerMismatch { triangles, n, m } => write!(
                f,
                "triangle count {triangles} inconsistent with n={n}, m={m} (need 3t = 2n+m)"
            ),
        }
    }
}

/// Error while walking an arc's crossing sequence through the triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArcError {
    EmptyCrossings,
    /// Crossing label is not an interior arc. Position is 1-based.
    NotInterior {
        position: usize,
        label: usize,
    },
    BadStartTriangle {
        index: usize,
    },
    /// The start triangle does not have the first crossed arc as a side.
    StartMissesFirstCrossing {
        label: usize,
    },
    /// Two consecutive crossings of the same arc. Position of the first of
    /// the pair, 1-based.
    ConsecutiveRepeat {
        position: usize,
    },
    /// Crossings at positions `k`, `k+1` are not two sides of the forced
    /// next triangle of the walk.
    NoCommonTriangle {
        position: usize,
    },
}

impl fmt::Display for ArcError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArcError::EmptyCrossings => write!(f, "crossing sequence is empty"),
            ArcError::NotInterior { position, label } => {
                write!(
                    f,
                    "crossing {position}: label {label} is not an interior arc"
                )
            }
            ArcError::BadStartTriangle { index } => {
                write!(f, "start triangle index {index} out of range")
            }
            ArcError::StartMissesFirstCrossing { label } => {
                write!(
                    f,
                    "start triangle does not contain the first crossing {label}"
                )
            }
            ArcError::ConsecutiveRepeat { position } => {
                write!(
                    f,
                    "crossings {position} and {} repeat the same arc",
                    position + 1
                )
            }
            ArcError::NoCommonTriangle { position } => write!(
                f,
                "crossings {position} and {} are not sides of a common triangle on the walk",
                position + 1
            ),
        }
    }
}

impl core::error::Error for ArcError {}

/// Error from [`Triangulation::flip`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlipError {
    NotInterior {
        label: usize,
    },
    /// The flip would produce a triangle with a repeated side.
    SelfGlued {
        label: usize,
    },
}

impl fmt::Display for FlipError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlipError::NotInterior { label } => {
                write!(f, "arc {label} is not an interior arc")
            }
            FlipError::SelfGlued { label } => {
                write!(f, "flipping arc {label} would glue a triangle to itself")
            }
        }
    }
}

impl core::error::Error for FlipError {}

/// Triangulated unpunctured surface with `n` interior and `m` boundary arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub n: usize,
    pub m: usize,
    /// Ordered triples of arc labels, cyclic order following the surface
    /// orientation.
    pub triangles: Vec<[usize; 3]>,
}

/// An arc through the triangulation, recorded by the interior arcs it
/// crosses, in order, together with the triangle its starting segment lies
/// in. `start_triangle` is a 0-based index into `triangles` and must contain
/// the first crossed arc as a side.
///
/// Only the local walk consistency is checked; crossing sequences that do not
/// come from a simple curve are accepted and produce formal output.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ArcSpec {
    pub crossings: Vec<usize>,
    pub start_triangle: usize,
}

impl ArcSpec {
    pub fn new(crossings: impl Into<Vec<usize>>, start_triangle: usize) -> Self {
        ArcSpec {
            crossings: crossings.into(),
            start_triangle,
        }
    }

    /// Number of crossings `d`.
    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }
}

/// The derived data of an arc: the chain of triangles it traverses and the
/// connecting arcs along which consecutive snake tiles are glued.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcContext {
    /// Triangle indices `Δ0..Δd` (length `d+1`).
    pub triangle_chain: Vec<usize>,
    /// For `k = 1..d-1`, the third side of `Δk` besides the two crossings
    /// (length `d-1`).
    pub connecting: Vec<usize>,
}

impl Triangulation {
    pub fn new(n: usize, m: usize, triangles: Vec<[usize; 3]>) -> Self {
        Triangulation { n, m, triangles }
    }

    pub fn interior_arcs(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    pub fn is_interior(&self, label: usize) -> bool {
        (1..=self.n).contains(&label)
    }

    pub fn is_boundary(&self, label: usize) -> bool {
        (self.n + 1..=self.n + self.m).contains(&label)
    }

    /// Check all structural invariants, reporting every violation found.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        let total = self.n + self.m;
        let mut counts = vec![0usize; total + 1];
        for (t, tri) in self.triangles.iter().enumerate() {
            for (s, &label) in tri.iter().enumerate() {
                if label == 0 || label > total {
                    violations.push(Violation::BadLabel { triangle: t, label });
                    continue;
                }
                counts[label] += 1;
                if tri[..s].contains(&label) {
                    violations.push(Violation::RepeatedSide { triangle: t, label });
                }
            }
        }
        for label in 1..=total {
            let expected = if label <= self.n { 2 } else { 1 };
            if counts[label] != expected {
                violations.push(Violation::IncidenceCount {
                    label,
                    count: counts[label],
                    expected,
                });
            }
        }
        if 3 * self.triangles.len() != 2 * self.n + self.m {
            violations.push(Violation::EulerMismatch {
                triangles: self.triangles.len(),
                n: self.n,
                m: self.m,
            });
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    /// Check `n = 6g + 3b + m - 6` against declared genus, boundary
    /// component count and marked point count.
    pub fn rank_check(
        &self,
        genus: usize,
        boundaries: usize,
        marked: usize,
    ) -> Result<(), RankMismatch> {
        let expected_n = (6 * genus as i64) + (3 * boundaries as i64) + marked as i64 - 6;
        if expected_n == self.n as i64 && marked == self.m {
            Ok(())
        } else {
            Err(RankMismatch {
                expected_n,
                actual_n: self.n,
                expected_m: marked,
                actual_m: self.m,
            })
        }
    }

    /// Signed adjacency matrix of the interior arcs. Within each triangle,
    /// `τ_j` immediately following `τ_i` in the stored cyclic order
    /// contributes `+1` to `b_ij` and `-1` to `b_ji`; boundary arcs are
    /// ignored. The result is skew-symmetric with entries in `{0,±1,±2}`.
    pub fn b_matrix(&self) -> BMatrix {
        let mut b = BMatrix::zero(self.n);
        for tri in &self.triangles {
            for s in 0..3 {
                let i = tri[s];
                let j = tri[(s + 1) % 3];
                if self.is_interior(i) && self.is_interior(j) {
                    b.set(i, j, b.get(i, j) + 1);
                    b.set(j, i, b.get(j, i) - 1);
                }
            }
        }
        debug_assert!(b.is_skew_symmetric());
        b
    }

    /// The two triangle indices containing interior arc `k`, lowest first.
    pub fn flanks(&self, k: usize) -> Result<(usize, usize), FlipError> {
        if !self.is_interior(k) {
            return Err(FlipError::NotInterior { label: k });
        }
        let mut found = self
            .triangles
            .iter()
            .enumerate()
            .filter(|(_, tri)| tri.contains(&k))
            .map(|(t, _)| t);
        let a = found.next().expect("validated triangulation");
        let b = found.next().expect("validated triangulation");
        Ok((a, b))
    }

    fn rotate_to(&self, t: usize, label: usize) -> [usize; 3] {
        let tri = self.triangles[t];
        let p = tri.iter().position(|&x| x == label).expect("label present");
        [tri[p], tri[(p + 1) % 3], tri[(p + 2) % 3]]
    }

    /// The quadrilateral around interior arc `k`: its two flank triangles
    /// `(k,ρ1,σ1)` and `(k,ρ2,σ2)` read in stored cyclic order, with
    /// `ρ1,ρ2` opposite sides and `σ1,σ2` opposite sides.
    pub fn quadrilateral(&self, k: usize) -> Result<Quadrilateral, FlipError> {
        let (ta, tb) = self.flanks(k)?;
        let [_, a, b] = self.rotate_to(ta, k);
        let [_, c, d] = self.rotate_to(tb, k);
        Ok(Quadrilateral {
            diagonal: k,
            rho1: a,
            sigma1: b,
            rho2: c,
            sigma2: d,
            flank_a: ta,
            flank_b: tb,
        })
    }

    /// Replace the diagonal of the quadrilateral around `k` by the other
    /// diagonal (which inherits the label `k`). Triangle list slots are
    /// reused, so triangle indices held by callers stay meaningful.
    pub fn flip(&self, k: usize) -> Result<(Triangulation, Quadrilateral), FlipError> {
        let quad = self.quadrilateral(k)?;
        let (a, b, c, d) = (quad.rho1, quad.sigma1, quad.rho2, quad.sigma2);
        if a == d || b == c {
            return Err(FlipError::SelfGlued { label: k });
        }
        let mut out = self.clone();
        out.triangles[quad.flank_a] = [a, k, d];
        out.triangles[quad.flank_b] = [b, c, k];
        Ok((out, quad))
    }

    /// Walk the arc through the triangulation: starting from `Δ0`, the next
    /// triangle is the unique other triangle containing the current
    /// crossing, and it must have the next crossing as a side.
    pub fn connecting_arcs(&self, arc: &ArcSpec) -> Result<ArcContext, ArcError> {
        let d = arc.crossings.len();
        if d == 0 {
            return Err(ArcError::EmptyCrossings);
        }
        for (pos, &label) in arc.crossings.iter().enumerate() {
            if !self.is_interior(label) {
                return Err(ArcError::NotInterior {
                    position: pos + 1,
                    label,
                });
            }
        }
        if arc.start_triangle >= self.triangles.len() {
            return Err(ArcError::BadStartTriangle {
                index: arc.start_triangle,
            });
        }
        if !self.triangles[arc.start_triangle].contains(&arc.crossings[0]) {
            return Err(ArcError::StartMissesFirstCrossing {
                label: arc.crossings[0],
            });
        }
        let mut chain = Vec::with_capacity(d + 1);
        let mut connecting = Vec::with_capacity(d.saturating_sub(1));
        chain.push(arc.start_triangle);
        for k in 0..d {
            let cur = arc.crossings[k];
            let (fa, fb) = self.flanks(cur).expect("validated crossing");
            let prev = chain[k];
            let next_tri = if prev == fa { fb } else { fa };
            if k + 1 < d {
                let next = arc.crossings[k + 1];
                if next == cur {
                    return Err(ArcError::ConsecutiveRepeat { position: k + 1 });
                }
                if !self.triangles[next_tri].contains(&next) {
                    return Err(ArcError::NoCommonTriangle { position: k + 1 });
                }
                let third = self.triangles[next_tri]
                    .iter()
                    .copied()
                    .find(|&s| s != cur && s != next)
                    .expect("distinct sides");
                connecting.push(third);
            }
            chain.push(next_tri);
        }
        Ok(ArcContext {
            triangle_chain: chain,
            connecting,
        })
    }
}

/// The quadrilateral around an interior arc, as returned by
/// [`Triangulation::quadrilateral`] and [`Triangulation::flip`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadrilateral {
    pub diagonal: usize,
    pub rho1: usize,
    pub sigma1: usize,
    pub rho2: usize,
    pub sigma2: usize,
    /// Triangle index of the flank read as `(k, rho1, sigma1)`.
    pub flank_a: usize,
    /// Triangle index of the flank read as `(k, rho2, sigma2)`.
    pub flank_b: usize,
}

/// Declared topology does not match the triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankMismatch {
    pub expected_n: i64,
    pub actual_n: usize,
    pub expected_m: usize,
    pub actual_m: usize,
}

impl fmt::Display for RankMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rank mismatch: formula gives n={}, triangulation has n={}; declared m={}, triangulation has m={}",
            self.expected_n, self.actual_n, self.expected_m, self.actual_m
        )
    }
}

impl core::error::Error for RankMismatch {}

/// Sample surfaces used throughout the tests and shipped as JSON fixtures.
pub mod fixtures {
    use super::{ArcSpec, Triangulation};
    use alloc::vec;

    /// Annulus with two marked points on each boundary component: four
    /// interior arcs `1..4`, boundary arcs `5..8`.
    pub fn annulus() -> Triangulation {
        Triangulation::new(4, 4, vec![[1, 6, 2], [2, 3, 8], [3, 4, 7], [1, 4, 5]])
    }

    /// The arc of the annulus that winds one and a half times around,
    /// crossing `1,2,3,4,1,2`, starting in the triangle `(1,4,5)`.
    pub fn annulus_arc() -> ArcSpec {
        ArcSpec::new(vec![1, 2, 3, 4, 1, 2], 3)
    }

    /// Disc with four marked points and a single interior arc.
    pub fn quadrilateral() -> Triangulation {
        Triangulation::new(1, 4, vec![[1, 2, 3], [1, 4, 5]])
    }

    /// Annulus with one marked point per boundary component; the two
    /// interior arcs produce a double exchange arrow.
    pub fn kronecker() -> Triangulation {
        Triangulation::new(2, 2, vec![[1, 2, 3], [1, 2, 4]])
    }

    /// Torus with a disk removed, one marked point. Arcs 2 and 3 share both
    /// their triangles, giving `b_23 = 2`.
    pub fn torus_with_disk() -> Triangulation {
        Triangulation::new(4, 1, vec![[2, 3, 1], [2, 3, 4], [1, 4, 5]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn annulus_validates() {
        assert!(fixtures::annulus().validate().is_ok());
        assert!(fixtures::quadrilateral().validate().is_ok());
        assert!(fixtures::kronecker().validate().is_ok());
        assert!(fixtures::torus_with_disk().validate().is_ok());
    }

    #[test]
    fn repeated_side_is_rejected() {
        let t = Triangulation::new(1, 2, vec![[1, 1, 2]]);
        let violations = t.validate().unwrap_err();
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::RepeatedSide { label: 1, .. })));
    }

    #[test]
    fn incidence_and_euler_checks() {
        let t = Triangulation::new(2, 2, vec![[1, 2, 3]]);
        let violations = t.validate().unwrap_err();
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::EulerMismatch { .. })));
        assert!(violations.iter().any(|v| matches!(
            v,
            Violation::IncidenceCount {
                label: 1,
                count: 1,
                expected: 2
            }
        )));
    }

    #[test]
    fn rank_formula_rows() {
        // polygon row: g=0, b=1, m=n+3
        let quad = fixtures::quadrilateral();
        assert!(quad.rank_check(0, 1, 4).is_ok());
        // annulus row: g=0, b=2, m=n
        assert!(fixtures::annulus().rank_check(0, 2, 4).is_ok());
        // torus with disk removed: g=1, b=1, m=1 gives n=4
        assert!(fixtures::torus_with_disk().rank_check(1, 1, 1).is_ok());
        assert!(fixtures::annulus().rank_check(0, 1, 4).is_err());
    }

    #[test]
    fn b_matrix_annulus() {
        let b = fixtures::annulus().b_matrix();
        let expected = BMatrix::from_rows(&[
            &[0, -1, 0, 1],
            &[1, 0, 1, 0],
            &[0, -1, 0, 1],
            &[-1, 0, -1, 0],
        ]);
        assert_eq!(b, expected);
    }

    #[test]
    fn b_matrix_double_arrow() {
        let b = fixtures::torus_with_disk().b_matrix();
        assert_eq!(b.get(2, 3), 2);
        assert_eq!(b.get(3, 2), -2);
        assert!(b.is_skew_symmetric());
        let k = fixtures::kronecker().b_matrix();
        assert_eq!(k.get(1, 2), 2);
    }

    #[test]
    fn b_matrix_quadrilateral_is_zero() {
        let b = fixtures::quadrilateral().b_matrix();
        assert_eq!(b, BMatrix::zero(1));
    }

    #[test]
    fn entries_bounded_by_two() {
        for t in [
            fixtures::annulus(),
            fixtures::kronecker(),
            fixtures::torus_with_disk(),
        ] {
            let b = t.b_matrix();
            for i in 1..=t.n {
                for j in 1..=t.n {
                    assert!(b.get(i, j).abs() <= 2);
                }
            }
        }
    }

    #[test]
    fn annulus_connecting_arcs() {
        let t = fixtures::annulus();
        let ctx = t.connecting_arcs(&fixtures::annulus_arc()).unwrap();
        assert_eq!(ctx.connecting, vec![6, 8, 7, 5, 6]);
        assert_eq!(ctx.triangle_chain, vec![3, 0, 1, 2, 3, 0, 1]);
    }

    #[test]
    fn single_crossing_walk() {
        let t = fixtures::quadrilateral();
        let ctx = t.connecting_arcs(&ArcSpec::new(vec![1], 1)).unwrap();
        assert!(ctx.connecting.is_empty());
        assert_eq!(ctx.triangle_chain, vec![1, 0]);
    }

    #[test]
    fn consecutive_repeat_is_an_error() {
        let t = fixtures::annulus();
        let err = t.connecting_arcs(&ArcSpec::new(vec![1, 1], 3)).unwrap_err();
        assert_eq!(err, ArcError::ConsecutiveRepeat { position: 1 });
    }

    #[test]
    fn bad_walks_are_errors() {
        let t = fixtures::annulus();
        assert_eq!(
            t.connecting_arcs(&ArcSpec::new(vec![1, 3], 3)).unwrap_err(),
            ArcError::NoCommonTriangle { position: 1 }
        );
        assert_eq!(
            t.connecting_arcs(&ArcSpec::new(vec![5], 3)).unwrap_err(),
            ArcError::NotInterior {
                position: 1,
                label: 5
            }
        );
        assert_eq!(
            t.connecting_arcs(&ArcSpec::new(vec![2], 3)).unwrap_err(),
            ArcError::StartMissesFirstCrossing { label: 2 }
        );
    }

    #[test]
    fn flip_is_an_involution_up_to_rotation() {
        let t = fixtures::annulus();
        for k in 1..=t.n {
            let (t1, _) = t.flip(k).unwrap();
            assert!(t1.validate().is_ok());
            let (t2, _) = t1.flip(k).unwrap();
            let canon = |tr: &Triangulation| {
                let mut out: Vec<[usize; 3]> = tr
                    .triangles
                    .iter()
                    .map(|tri| {
                        let p = tri
                            .iter()
                            .enumerate()
                            .min_by_key(|(_, &l)| l)
                            .map(|(i, _)| i)
                            .unwrap();
                        [tri[p], tri[(p + 1) % 3], tri[(p + 2) % 3]]
                    })
                    .collect();
                out.sort();
                out
            };
            assert_eq!(canon(&t2), canon(&t));
        }
    }

    #[test]
    fn flip_quadrilateral_surface() {
        let t = fixtures::quadrilateral();
        let (t1, quad) = t.flip(1).unwrap();
        assert!(t1.validate().is_ok());
        assert_eq!(quad.diagonal, 1);
        // the four boundary sides survive
        let mut labels: Vec<usize> = t1.triangles.iter().flatten().copied().collect();
        labels.sort();
        assert_eq!(labels, vec![1, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn flip_commutes_with_matrix_mutation() {
        for t in [
            fixtures::annulus(),
            fixtures::kronecker(),
            fixtures::torus_with_disk(),
        ] {
            for k in 1..=t.n {
                let (flipped, _) = t.flip(k).unwrap();
                assert_eq!(flipped.b_matrix(), t.b_matrix().mutated(k), "arc {k}");
            }
        }
    }

    #[test]
    fn mutation_is_involutive_and_skew() {
        let b = fixtures::annulus().b_matrix();
        for k in 1..=4 {
            let m = b.mutated(k);
            assert!(m.is_skew_symmetric());
            assert_eq!(m.mutated(k), b);
        }
    }

    #[test]
    fn boundary_flip_rejected() {
        assert_eq!(
            fixtures::annulus().flip(7).unwrap_err(),
            FlipError::NotInterior { label: 7 }
        );
    }

    #[test]
    fn self_gluing_flip_rejected() {
        // flipping arc 1 would create a triangle with side 2 repeated
        let t = Triangulation::new(2, 2, vec![[1, 2, 3], [1, 4, 2]]);
        assert!(t.validate().is_ok());
        assert_eq!(t.flip(1).unwrap_err(), FlipError::SelfGlued { label: 1 });
    }
}
