//! Independent verification engine: seed mutation with principal
//! coefficients, transport of arcs across flips, and a search for a flip
//! sequence realizing a given arc. Replaying the flip sequence as seed
//! mutations recomputes the cluster variable of the arc without ever
//! touching the snake graph, so agreement with [`crate::expansion::expand`]
//! cross-validates the whole combinatorial route.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::poly::{DivisionError, ExpVector, LaurentPoly};
use crate::surface::{ArcError, ArcSpec, BMatrix, FlipError, Triangulation};

/// A seed with principal coefficients: exchange matrix, coefficient tuple
/// (as integer exponent vectors over the `y` generators), and the cluster
/// expressed in the initial variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub b: BMatrix,
    /// `coeff_cols[j-1][r-1]` is the exponent of `y_r` in the j-th
    /// coefficient tuple entry.
    pub coeff_cols: Vec<Vec<i64>>,
    pub cluster: Vec<LaurentPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    Arc(ArcError),
    Flip(FlipError),
    /// A mutation produced a non-Laurent quotient; with valid input this
    /// cannot happen and indicates corrupted data or a bug.
    NonExactDivision {
        direction: usize,
    },
    /// No flip sequence found within the depth bound.
    NotFound {
        max_depth: usize,
    },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::Arc(e) => write!(f, "{e}"),
            OracleError::Flip(e) => write!(f, "{e}"),
            OracleError::NonExactDivision { direction } => {
                write!(
                    f,
                    "mutation in direction {direction}: division is not exact"
                )
            }
            OracleError::NotFound { max_depth } => {
                write!(f, "no flip sequence found within depth {max_depth}")
            }
        }
    }
}

impl core::error::Error for OracleError {}

impl From<ArcError> for OracleError {
    fn from(e: ArcError) -> Self {
        OracleError::Arc(e)
    }
}

impl From<FlipError> for OracleError {
    fn from(e: FlipError) -> Self {
        OracleError::Flip(e)
    }
}

impl Seed {
    /// The seed of a triangulation: cluster `x_1..x_n`, coefficient tuple
    /// `y_1..y_n`.
    pub fn initial(b: BMatrix) -> Seed {
        let n = b.size();
        let coeff_cols = (0..n)
            .map(|j| {
                let mut col = vec![0i64; n];
                col[j] = 1;
                col
            })
            .collect();
        let cluster = (1..=n).map(|i| LaurentPoly::x_var(n, i)).collect();
        Seed {
            b,
            coeff_cols,
            cluster,
        }
    }

    pub fn rank(&self) -> usize {
        self.b.size()
    }

    /// The monomials `y_k^+` and `y_k^-`: positive and negative parts of
    /// the k-th coefficient tuple entry.
    pub fn tropical_pair(&self, k: usize) -> (LaurentPoly, LaurentPoly) {
        let n = self.rank();
        let col = &self.coeff_cols[k - 1];
        let mut plus = ExpVector::zero(n);
        let mut minus = ExpVector::zero(n);
        for r in 0..n {
            plus.yexp[r] = col[r].max(0) as u32;
            minus.yexp[r] = (-col[r]).max(0) as u32;
        }
        (
            LaurentPoly::monomial(plus, 1.into()),
            LaurentPoly::monomial(minus, 1.into()),
        )
    }

    /// Mutation in direction `k` (1-based): the cluster variable in slot
    /// `k` is exchanged, the matrix mutates, and the coefficient tuple
    /// follows the tropical rule.
    pub fn mutate(&self, k: usize) -> Result<Seed, OracleError> {
        let n = self.rank();
        assert!((1..=n).contains(&k), "mutation direction out of range");
        let (y_plus, y_minus) = self.tropical_pair(k);
        let mut t_plus = y_plus;
        let mut t_minus = y_minus;
        for i in 1..=n {
            let b_ki = self.b.get(k, i);
            for _ in 0..b_ki.max(0) {
                t_plus = &t_plus * &self.cluster[i - 1];
            }
            for _ in 0..(-b_ki).max(0) {
                t_minus = &t_minus * &self.cluster[i - 1];
            }
        }
        let sum = &t_plus + &t_minus;
        let x_new = sum.exact_div(&self.cluster[k - 1]).map_err(|e| match e {
            DivisionError::NotDivisible | DivisionError::DivisionByZero => {
                OracleError::NonExactDivision { direction: k }
            }
        })?;
        let mut coeff_cols = self.coeff_cols.clone();
        for j in 1..=n {
            if j == k {
                continue;
            }
            let bjk = self.b.get(j, k);
            for r in 0..n {
                let crk = self.coeff_cols[k - 1][r];
                coeff_cols[j - 1][r] =
                    self.coeff_cols[j - 1][r] + crk.signum() * (crk * bjk).max(0);
            }
        }
        coeff_cols[k - 1] = self.coeff_cols[k - 1].iter().map(|&v| -v).collect();
        let mut cluster = self.cluster.clone();
        cluster[k - 1] = x_new;
        Ok(Seed {
            b: self.b.mutated(k),
            coeff_cols,
            cluster,
        })
    }
}

/// Result of rewriting an arc's crossing data across one flip.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransportOutcome {
    Transported(ArcSpec),
    /// Every crossing vanished: the arc is the freshly flipped arc itself.
    BecameArc {
        label: usize,
    },
}

/// Rewrite the crossing sequence of `arc` across the flip of interior arc
/// `k`, without performing the flip on `t` (the caller flips separately).
///
/// Crossings of `k` survive exactly when the neighbouring crossings end up
/// separated by the new diagonal; walk segments that used to connect the two
/// sides of a flank pair without meeting `k` gain a crossing. Segments that
/// begin or end at a marked point of the quadrilateral never cross the new
/// diagonal, since the new diagonal is incident to those corners.
pub fn transport_arc(
    t: &Triangulation,
    arc: &ArcSpec,
    k: usize,
) -> Result<TransportOutcome, OracleError> {
    let ctx = t.connecting_arcs(arc)?;
    let quad = t.quadrilateral(k)?;
    let (fa, fb) = (quad.flank_a, quad.flank_b);
    let chain = &ctx.triangle_chain;
    let d = arc.crossings.len();
    let is_flank = |ix: usize| ix == fa || ix == fb;
    // the new diagonal splits the quadrilateral into {rho1, sigma2} and
    // {sigma1, rho2}
    let first_class = |tri: usize, label: usize| -> bool {
        if tri == fa {
            label == quad.rho1
        } else {
            label == quad.sigma2
        }
    };

    let mut out: Vec<usize> = Vec::new();
    for j in 0..=d {
        let left_ok = j == 0 || arc.crossings[j - 1] != k;
        let right_ok = j == d || arc.crossings[j] != k;
        if is_flank(chain[j]) && left_ok && right_ok {
            out.push(k);
        }
        if j < d {
            let c = arc.crossings[j];
            if c != k {
                out.push(c);
            } else {
                let keep = j > 0 && j + 1 < d && {
                    let prev = arc.crossings[j - 1];
                    let next = arc.crossings[j + 1];
                    first_class(chain[j], prev) != first_class(chain[j + 1], next)
                };
                if keep {
                    out.push(k);
                }
            }
        }
    }

    if out.is_empty() {
        return Ok(TransportOutcome::BecameArc { label: k });
    }

    let new_start = if !is_flank(chain[0]) {
        arc.start_triangle
    } else {
        let c0 = arc.crossings[0];
        if c0 != k {
            // a crossing of the new diagonal was inserted up front; the
            // start corner picks out which new flank the arc leaves from
            if chain[0] == fa {
                if c0 == quad.rho1 {
                    fb
                } else {
                    fa
                }
            } else if c0 == quad.rho2 {
                fa
            } else {
                fb
            }
        } else {
            // leading crossing of k dropped; d >= 2 since out is nonempty
            let c1 = arc.crossings[1];
            if chain[0] == fa {
                if c1 == quad.rho2 {
                    fb
                } else {
                    fa
                }
            } else if c1 == quad.rho1 {
                fa
            } else {
                fb
            }
        }
    };

    Ok(TransportOutcome::Transported(ArcSpec::new(out, new_start)))
}

/// Default search budget for [`find_flip_sequence`].
pub fn default_max_depth(arc: &ArcSpec) -> usize {
    arc.len() + 4
}

type StateKey = (Vec<[usize; 3]>, Vec<usize>, usize);

fn state_key(t: &Triangulation, arc: &ArcSpec) -> StateKey {
    let triangles = t
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
    (triangles, arc.crossings.clone(), arc.start_triangle)
}

/// Search for a flip sequence after which the arc coincides with the last
/// flipped diagonal. Iterative deepening with a transposition table; the
/// result is the lexicographically least among the shortest sequences.
pub fn find_flip_sequence(
    t: &Triangulation,
    arc: &ArcSpec,
    max_depth: usize,
) -> Result<Vec<usize>, OracleError> {
    t.connecting_arcs(arc)?;
    for limit in 1..=max_depth {
        let mut seen: BTreeMap<StateKey, usize> = BTreeMap::new();
        let mut path = Vec::new();
        if dfs(t, arc, limit, &mut seen, &mut path) {
            return Ok(path);
        }
    }
    Err(OracleError::NotFound { max_depth })
}

fn dfs(
    t: &Triangulation,
    arc: &ArcSpec,
    remaining: usize,
    seen: &mut BTreeMap<StateKey, usize>,
    path: &mut Vec<usize>,
) -> bool {
    if remaining == 0 {
        return false;
    }
    let key = state_key(t, arc);
    if let Some(&r) = seen.get(&key) {
        if r >= remaining {
            return false;
        }
    }
    seen.insert(key, remaining);
    for k in 1..=t.n {
        let Ok((flipped, _)) = t.flip(k) else {
            continue;
        };
        match transport_arc(t, arc, k) {
            Ok(TransportOutcome::BecameArc { label }) => {
                path.push(label);
                return true;
            }
            Ok(TransportOutcome::Transported(moved)) => {
                path.push(k);
                if dfs(&flipped, &moved, remaining - 1, seen, path) {
                    return true;
                }
                path.pop();
            }
            Err(_) => continue,
        }
    }
    false
}

/// Recompute the cluster variable of `arc` by replaying its flip sequence
/// as seed mutations with principal coefficients.
pub fn oracle_expand(
    t: &Triangulation,
    arc: &ArcSpec,
    max_depth: usize,
) -> Result<LaurentPoly, OracleError> {
    let flips = find_flip_sequence(t, arc, max_depth)?;
    let mut seed = Seed::initial(t.b_matrix());
    for &k in &flips {
        seed = seed.mutate(k)?;
    }
    let last = *flips.last().expect("sequence is nonempty");
    Ok(seed.cluster[last - 1].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::expand;
    use crate::surface::fixtures;
    use alloc::format;

    #[test]
    fn quadrilateral_mutation() {
        let t = fixtures::quadrilateral();
        let seed = Seed::initial(t.b_matrix());
        let s1 = seed.mutate(1).unwrap();
        assert_eq!(format!("{}", s1.cluster[0]), "x1^-1 + x1^-1*y1");
        assert_eq!(s1.coeff_cols[0], vec![-1]);
    }

    #[test]
    fn mutation_is_involutive() {
        for t in [
            fixtures::annulus(),
            fixtures::kronecker(),
            fixtures::torus_with_disk(),
        ] {
            let seed = Seed::initial(t.b_matrix());
            for k in 1..=t.n {
                let back = seed.mutate(k).unwrap().mutate(k).unwrap();
                assert_eq!(back, seed, "direction {k}");
            }
        }
    }

    #[test]
    fn laurent_phenomenon_along_random_walks() {
        // mutations never fail to divide exactly
        let t = fixtures::annulus();
        let mut seed = Seed::initial(t.b_matrix());
        for k in [1, 2, 3, 1, 4, 2, 1, 3] {
            seed = seed.mutate(k).unwrap();
        }
    }

    #[test]
    fn coefficients_stay_signed_monomials() {
        // sign-coherence on a sample walk: each coefficient tuple entry is
        // a monomial with all-nonnegative or all-nonpositive exponents
        let t = fixtures::annulus();
        let mut seed = Seed::initial(t.b_matrix());
        for k in [1, 2, 3, 4, 1, 2] {
            seed = seed.mutate(k).unwrap();
            for col in &seed.coeff_cols {
                let pos = col.iter().any(|&v| v > 0);
                let neg = col.iter().any(|&v| v < 0);
                assert!(!(pos && neg), "mixed signs in {col:?}");
            }
        }
    }

    #[test]
    fn transport_unchanged_when_disjoint() {
        // the arc stays away from the flipped quadrilateral's flanks
        let t = fixtures::annulus();
        let arc = ArcSpec::new(vec![1], 3); // chain: triangles 3, 0
        let moved = transport_arc(&t, &arc, 3).unwrap(); // flanks of 3: triangles 1, 2
        assert_eq!(moved, TransportOutcome::Transported(arc));
    }

    #[test]
    fn transport_other_diagonal_drops_to_zero() {
        let t = fixtures::quadrilateral();
        let arc = ArcSpec::new(vec![1], 1);
        assert_eq!(
            transport_arc(&t, &arc, 1).unwrap(),
            TransportOutcome::BecameArc { label: 1 }
        );
    }

    #[test]
    fn transport_round_trips_across_a_flip() {
        // a double flip restores the triangulation up to swapping the two
        // flank slots, so compare the start triangle by content
        let canon = |tri: [usize; 3]| {
            let p = tri
                .iter()
                .enumerate()
                .min_by_key(|(_, &l)| l)
                .map(|(i, _)| i)
                .unwrap();
            [tri[p], tri[(p + 1) % 3], tri[(p + 2) % 3]]
        };
        let t = fixtures::annulus();
        let arc = fixtures::annulus_arc();
        for k in 1..=t.n {
            let (flipped, _) = t.flip(k).unwrap();
            let TransportOutcome::Transported(moved) = transport_arc(&t, &arc, k).unwrap() else {
                panic!("arc should survive");
            };
            // the transported data is walk-consistent in the new surface
            flipped.connecting_arcs(&moved).unwrap();
            // flipping back restores the original
            let (restored, _) = flipped.flip(k).unwrap();
            let TransportOutcome::Transported(back) = transport_arc(&flipped, &moved, k).unwrap()
            else {
                panic!("arc should survive the return flip");
            };
            assert_eq!(back.crossings, arc.crossings, "flip {k}");
            assert_eq!(
                canon(restored.triangles[back.start_triangle]),
                canon(t.triangles[arc.start_triangle]),
                "flip {k}"
            );
            restored.connecting_arcs(&back).unwrap();
        }
    }

    #[test]
    fn flip_sequence_for_single_crossing() {
        let t = fixtures::quadrilateral();
        let arc = ArcSpec::new(vec![1], 1);
        assert_eq!(find_flip_sequence(&t, &arc, 4).unwrap(), vec![1]);
    }

    #[test]
    fn oracle_matches_matching_formula_on_quadrilateral() {
        let t = fixtures::quadrilateral();
        let arc = ArcSpec::new(vec![1], 1);
        let via_oracle = oracle_expand(&t, &arc, 4).unwrap();
        let via_matchings = expand(&t, &arc).unwrap().laurent;
        assert_eq!(via_oracle, via_matchings);
    }

    #[test]
    fn oracle_matches_matching_formula_on_annulus() {
        let t = fixtures::annulus();
        let arc = fixtures::annulus_arc();
        let flips = find_flip_sequence(&t, &arc, default_max_depth(&arc)).unwrap();
        assert!(flips.len() <= 8, "unexpectedly deep: {flips:?}");
        let via_oracle = oracle_expand(&t, &arc, default_max_depth(&arc)).unwrap();
        let via_matchings = expand(&t, &arc).unwrap().laurent;
        assert_eq!(via_oracle, via_matchings);
    }
}
