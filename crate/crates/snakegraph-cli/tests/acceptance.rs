//! Acceptance suite: one test per criterion, each printing a PASS line when
//! it holds. Criterion 1 pins the output to the classical worked example
//! for the winding annulus arc; the enumeration here (cross-validated by
//! the independent seed-mutation engine and by exhaustive search) finds one
//! more matching than that reference list, so the criterion fails with a
//! diagnostic naming the extra term. All other criteria pass.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use snakegraph::expansion::{self, Expansion};
use snakegraph::matching::{
    boundary_matchings, count_matchings, enumerate_matchings, height_function, oriented_tiles,
    symmdiff_tiles, tiles_to_y_labels, Matching,
};
use snakegraph::num_bigint::BigInt;
use snakegraph::oracle;
use snakegraph::poly::{ExpVector, LaurentPoly, Multidegree};
use snakegraph::polygon::PolygonModel;
use snakegraph::snake::SnakeGraph;
use snakegraph::surface::{ArcSpec, Triangulation};
use snakegraph_cli::format::{load_arc, load_surface};

fn fixture(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn annulus() -> (Triangulation, ArcSpec) {
    let (t, _) = load_surface(&fixture("annulus.json")).unwrap();
    let arc = load_arc(&fixture("arc_winding.json"), &t).unwrap();
    (t, arc)
}

struct Instance {
    name: String,
    t: Triangulation,
    arc: ArcSpec,
}

/// 50 distinct valid arcs on the annulus with `d <= 10`, generated by a
/// seeded random walk over the triangulation.
fn random_annulus_arcs() -> Vec<ArcSpec> {
    let (t, _) = annulus();
    let mut rng = StdRng::seed_from_u64(0xA77);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < 50 {
        let start = rng.gen_range(0..t.triangles.len());
        let interior: Vec<usize> = t.triangles[start]
            .iter()
            .copied()
            .filter(|&l| t.is_interior(l))
            .collect();
        let first = interior[rng.gen_range(0..interior.len())];
        let d = rng.gen_range(1..=10);
        let mut crossings = vec![first];
        let mut tri = start;
        while crossings.len() < d {
            let cur = *crossings.last().unwrap();
            let (fa, fb) = t.flanks(cur).unwrap();
            tri = if tri == fa { fb } else { fa };
            let candidates: Vec<usize> = t.triangles[tri]
                .iter()
                .copied()
                .filter(|&l| t.is_interior(l) && l != cur)
                .collect();
            if candidates.is_empty() {
                break;
            }
            crossings.push(candidates[rng.gen_range(0..candidates.len())]);
        }
        let arc = ArcSpec::new(crossings, start);
        t.connecting_arcs(&arc)
            .expect("walk-consistent by construction");
        if seen.insert(arc.clone()) {
            out.push(arc);
        }
    }
    out
}

/// The shared corpus: the winding annulus arc, every arc of every
/// triangulation of the hexagon and heptagon (triangulations enumerated by
/// flip search), and 50 random annulus arcs.
fn corpus() -> Vec<Instance> {
    let mut out = Vec::new();
    let (t, arc) = annulus();
    out.push(Instance {
        name: "annulus winding arc".into(),
        t: t.clone(),
        arc,
    });
    for nv in [6usize, 7] {
        for (i, model) in PolygonModel::all_triangulations(nv).iter().enumerate() {
            for pair in PolygonModel::all_chord_pairs(nv) {
                if let Some(arc) = model.arc_spec(pair) {
                    out.push(Instance {
                        name: format!("{nv}-gon T{i} chord {pair:?}"),
                        t: model.triangulation.clone(),
                        arc,
                    });
                }
            }
        }
    }
    for (i, arc) in random_annulus_arcs().into_iter().enumerate() {
        out.push(Instance {
            name: format!("annulus random {i}"),
            t: t.clone(),
            arc,
        });
    }
    out
}

/// The sixteen products of the reference list for the winding annulus arc:
/// (sorted edge labels, sorted coefficient labels).
fn reference_products() -> Vec<(Vec<usize>, Vec<usize>)> {
    let raw: [([usize; 7], &[usize]); 16] = [
        ([4, 6, 8, 4, 4, 6, 8], &[1, 1, 3, 4]),
        ([4, 6, 8, 4, 4, 1, 3], &[1, 1, 2, 3, 4]),
        ([4, 6, 8, 4, 5, 2, 8], &[1, 3, 4]),
        ([4, 6, 2, 3, 1, 2, 8], &[1]),
        ([4, 6, 2, 7, 5, 2, 8], &[1, 4]),
        ([4, 6, 2, 7, 4, 6, 8], &[1, 1, 4]),
        ([4, 1, 3, 4, 4, 6, 8], &[1, 1, 2, 3, 4]),
        ([4, 1, 3, 4, 4, 1, 3], &[1, 1, 2, 2, 3, 4]),
        ([4, 1, 3, 4, 5, 2, 8], &[1, 2, 3, 4]),
        ([5, 2, 8, 4, 4, 6, 8], &[1, 3, 4]),
        ([5, 2, 8, 4, 4, 1, 3], &[1, 2, 3, 4]),
        ([5, 2, 8, 4, 5, 2, 8], &[3, 4]),
        ([5, 2, 2, 3, 1, 2, 8], &[]),
        ([5, 2, 2, 7, 4, 6, 8], &[1, 4]),
        ([5, 2, 2, 7, 4, 1, 3], &[1, 2, 4]),
        ([5, 2, 2, 7, 5, 2, 8], &[4]),
    ];
    let mut out: Vec<(Vec<usize>, Vec<usize>)> = raw
        .iter()
        .map(|(w, y)| {
            let mut w = w.to_vec();
            w.sort_unstable();
            (w, y.to_vec())
        })
        .collect();
    out.sort();
    out
}

/// The collected sum of the reference list: twelve distinct Laurent terms.
fn reference_merged() -> LaurentPoly {
    let terms: [([i32; 4], [u32; 4], i64); 12] = [
        ([0, 0, 0, 3], [2, 0, 1, 1], 1),
        ([1, 0, 1, 3], [2, 1, 1, 1], 2),
        ([0, 1, 0, 2], [1, 0, 1, 1], 2),
        ([1, 2, 1, 1], [1, 0, 0, 0], 1),
        ([0, 2, 0, 1], [1, 0, 0, 1], 2),
        ([0, 1, 0, 2], [2, 0, 0, 1], 1),
        ([2, 0, 2, 3], [2, 2, 1, 1], 1),
        ([1, 1, 1, 2], [1, 1, 1, 1], 2),
        ([0, 2, 0, 1], [0, 0, 1, 1], 1),
        ([1, 3, 1, 0], [0, 0, 0, 0], 1),
        ([1, 2, 1, 1], [1, 1, 0, 1], 1),
        ([0, 3, 0, 0], [0, 0, 0, 1], 1),
    ];
    LaurentPoly::from_terms(
        4,
        terms.iter().map(|&(x, y, c)| {
            (
                ExpVector {
                    xexp: x.to_vec(),
                    yexp: y.to_vec(),
                },
                BigInt::from(c),
            )
        }),
    )
    .divide_by_x_monomial(&[2, 2, 1, 1])
}

fn premerge(e: &Expansion) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out: Vec<(Vec<usize>, Vec<usize>)> = e
        .terms
        .iter()
        .map(|term| (term.weight_labels.clone(), term.y_labels.clone()))
        .collect();
    out.sort();
    out
}

#[test]
fn criterion_1_golden_reproduction() {
    let started = Instant::now();
    let (t, arc) = annulus();
    SnakeGraph::build(&t, &arc).unwrap();
    let e = expansion::expand(&t, &arc).unwrap();
    let count = e.terms.len();
    let mine = premerge(&e);
    let reference = reference_products();
    let missing: Vec<_> = reference.iter().filter(|p| !mine.contains(p)).collect();
    let extra: Vec<_> = mine.iter().filter(|p| !reference.contains(p)).collect();
    let merged_ok = e.laurent == reference_merged();
    // the duplicate pair x1*x3*x4^3*y1^2*y2*y3*y4 must merge to 2 either way
    assert_eq!(
        e.laurent.coeff(&ExpVector {
            xexp: vec![-1, -2, 0, 2],
            yexp: vec![2, 1, 1, 1],
        }),
        BigInt::from(2)
    );
    assert!(
        started.elapsed() < Duration::from_secs(1),
        "criterion 1 runtime"
    );
    let pass = count == 16 && missing.is_empty() && extra.is_empty() && merged_ok;
    println!("criterion 1: {}", if pass { "PASS" } else { "FAIL" });
    assert!(
        pass,
        "reference reproduction failed: {count} matchings (reference lists 16); \
         all reference products present: {}; extra terms: {extra:?}. \
         The enumeration is cross-validated by exhaustive subset search and by the \
         independent seed-mutation engine (criteria 5 and 8), which both confirm \
         {count} terms; the reference list omits the matching with path weight \
         x4*x6*x2*x7*x4*x1*x3 and coefficient y1^2*y2*y4.",
        missing.is_empty()
    );
}

#[test]
fn criterion_2_minimal_matching() {
    let (t, arc) = annulus();
    let g = SnakeGraph::build(&t, &arc).unwrap();
    let (m_minus, _) = boundary_matchings(&g).unwrap();
    let expected: BTreeSet<((usize, usize), (usize, usize))> = [
        ((0, 0), (0, 1)),
        ((1, 0), (1, 1)),
        ((0, 2), (0, 3)),
        ((1, 2), (2, 2)),
        ((1, 3), (2, 3)),
        ((3, 2), (3, 3)),
        ((2, 4), (3, 4)),
    ]
    .into();
    let got: BTreeSet<((usize, usize), (usize, usize))> = m_minus
        .edge_indices()
        .iter()
        .map(|&i| {
            let e = &g.edges()[i];
            (e.a, e.b)
        })
        .collect();
    assert_eq!(got, expected, "minimal matching edge set");
    // weight x1 * x2^3 * x3 after boundary substitution
    assert_eq!(m_minus.weight_labels(&g), vec![1, 2, 2, 2, 3, 5, 8]);
    let mut weight = ExpVector::zero(t.n);
    for &l in &m_minus.weight_labels(&g) {
        if t.is_interior(l) {
            weight.xexp[l - 1] += 1;
        }
    }
    assert_eq!(weight.xexp, vec![1, 3, 1, 0]);
    println!("criterion 2: PASS");
}

#[test]
fn criterion_3_formula_equivalence() {
    let started = Instant::now();
    let corpus = corpus();
    for inst in &corpus {
        let direct = expansion::expand(&inst.t, &inst.arc).unwrap();
        let via_subgraphs = expansion::expand_via_subgraphs(&inst.t, &inst.arc).unwrap();
        assert_eq!(
            direct.laurent, via_subgraphs.laurent,
            "routes disagree on {}",
            inst.name
        );
        assert_eq!(
            direct.terms.len(),
            via_subgraphs.terms.len(),
            "term counts disagree on {}",
            inst.name
        );
    }
    assert!(
        started.elapsed() < Duration::from_secs(30),
        "criterion 3 runtime"
    );
    println!(
        "criterion 3: PASS ({} instances in {:?})",
        corpus.len(),
        started.elapsed()
    );
}

#[test]
fn criterion_4_coefficient_rules() {
    let corpus = corpus();
    let mut matchings = 0usize;
    for inst in &corpus {
        let g = SnakeGraph::build(&inst.t, &inst.arc).unwrap();
        let (m_minus, m_plus) = boundary_matchings(&g).unwrap();
        let all = enumerate_matchings(&g);
        let full: BTreeSet<usize> = (1..=g.len()).collect();
        assert!(oriented_tiles(&g, &m_minus).is_empty(), "{}", inst.name);
        assert_eq!(oriented_tiles(&g, &m_plus), full, "{}", inst.name);
        for m in &all {
            let oriented = oriented_tiles(&g, m);
            let via_symmdiff = symmdiff_tiles(&g, m, &m_minus).unwrap();
            assert_eq!(oriented, via_symmdiff, "{}", inst.name);
            let h = height_function(&g, m, &m_minus).unwrap();
            let mut from_heights: Vec<usize> = Vec::new();
            for (ix, tile) in g.tiles.iter().enumerate() {
                assert!(h[ix] >= 0, "{}", inst.name);
                for _ in 0..h[ix] {
                    from_heights.push(tile.diagonal);
                }
            }
            from_heights.sort_unstable();
            assert_eq!(
                from_heights,
                tiles_to_y_labels(&g, &oriented),
                "{}",
                inst.name
            );
            matchings += 1;
        }
    }
    println!("criterion 4: PASS ({matchings} matchings checked)");
}

#[test]
fn criterion_5_oracle_equality() {
    let started = Instant::now();
    let mut checked = 0usize;
    for nv in [5usize, 6, 7] {
        let model = PolygonModel::fan(nv);
        for pair in PolygonModel::all_chord_pairs(nv) {
            let Some(arc) = model.arc_spec(pair) else {
                continue;
            };
            let direct = expansion::expand(&model.triangulation, &arc)
                .unwrap()
                .laurent;
            let depth = oracle::default_max_depth(&arc);
            let via_oracle = oracle::oracle_expand(&model.triangulation, &arc, depth).unwrap();
            assert_eq!(direct, via_oracle, "{nv}-gon chord {pair:?}");
            checked += 1;
        }
    }
    let (t, arc) = annulus();
    let direct = expansion::expand(&t, &arc).unwrap().laurent;
    let via_oracle = oracle::oracle_expand(&t, &arc, oracle::default_max_depth(&arc)).unwrap();
    assert_eq!(direct, via_oracle, "annulus winding arc");
    checked += 1;
    assert!(
        started.elapsed() < Duration::from_secs(60),
        "criterion 5 runtime"
    );
    println!(
        "criterion 5: PASS ({checked} arcs in {:?})",
        started.elapsed()
    );
}

#[test]
fn criterion_6_structural_claims() {
    let corpus = corpus();
    for inst in &corpus {
        let e = expansion::expand(&inst.t, &inst.arc).unwrap();
        let f = expansion::f_polynomial(&inst.t, &inst.arc).unwrap();
        // constant term 1
        assert_eq!(
            f.coeff(&ExpVector::zero(inst.t.n)),
            BigInt::from(1),
            "{}",
            inst.name
        );
        // unique maximal term: product of y over all crossings, divisible
        // by every other term
        let mut top = ExpVector::zero(inst.t.n);
        for &c in &inst.arc.crossings {
            top.yexp[c - 1] += 1;
        }
        assert_eq!(f.coeff(&top), BigInt::from(1), "{}", inst.name);
        for (exp, _) in f.terms() {
            assert!(
                exp.yexp.iter().zip(&top.yexp).all(|(a, b)| a <= b),
                "{}: term above the top monomial",
                inst.name
            );
        }
        // homogeneity and the g-vector
        let gv = expansion::g_vector(&inst.t, &inst.arc).unwrap();
        match e.laurent.multidegree(&inst.t.b_matrix()) {
            Multidegree::Homogeneous(deg) => assert_eq!(deg, gv, "{}", inst.name),
            Multidegree::Heterogeneous => panic!("{}: not homogeneous", inst.name),
        }
        // the numerator counts matchings at x = y = 1
        let g = SnakeGraph::build(&inst.t, &inst.arc).unwrap();
        assert_eq!(
            e.laurent.eval_all_ones(),
            BigInt::from(enumerate_matchings(&g).len()),
            "{}",
            inst.name
        );
        // positivity
        for (_, c) in e.laurent.terms() {
            assert!(c > &BigInt::from(0), "{}", inst.name);
        }
    }
    // the pinned g-vector of the winding annulus arc
    let (t, arc) = annulus();
    assert_eq!(expansion::g_vector(&t, &arc).unwrap(), vec![-1, 1, 0, -1]);
    println!("criterion 6: PASS ({} instances)", corpus.len());
}

#[test]
fn criterion_7_exchange_relations() {
    let mut triangulations: Vec<(String, Triangulation)> = Vec::new();
    let (t, _) = annulus();
    triangulations.push(("annulus".into(), t));
    for nv in [5usize, 6, 7] {
        for (i, model) in PolygonModel::all_triangulations(nv).iter().enumerate() {
            triangulations.push((format!("{nv}-gon T{i}"), model.triangulation.clone()));
        }
    }
    let mut checked = 0usize;
    for (name, t) in &triangulations {
        for k in t.interior_arcs() {
            expansion::exchange_check(t, k).unwrap_or_else(|e| panic!("{name} arc {k}: {e}"));
            checked += 1;
        }
    }
    println!("criterion 7: PASS ({checked} exchange relations)");
}

/// Exhaustive search over all (d+1)-subsets of non-diagonal edges, pruned
/// only by vertex conflicts. Independent of the interface-state walk.
fn brute_force_matchings(g: &SnakeGraph) -> BTreeSet<Matching> {
    let edges: Vec<usize> = g.matching_edge_indices().collect();
    let need = g.vertices().len() / 2;
    let mut out = BTreeSet::new();
    fn rec(
        g: &SnakeGraph,
        edges: &[usize],
        from: usize,
        need: usize,
        covered: &mut BTreeSet<(usize, usize)>,
        chosen: &mut Vec<usize>,
        out: &mut BTreeSet<Matching>,
    ) {
        if chosen.len() == need {
            if covered.len() == 2 * need {
                out.insert(Matching::from_edge_indices(g, chosen.clone()));
            }
            return;
        }
        for (pos, &i) in edges.iter().enumerate().skip(from) {
            let e = &g.edges()[i];
            if covered.contains(&e.a) || covered.contains(&e.b) {
                continue;
            }
            covered.insert(e.a);
            covered.insert(e.b);
            chosen.push(i);
            rec(g, edges, pos + 1, need, covered, chosen, out);
            chosen.pop();
            covered.remove(&e.a);
            covered.remove(&e.b);
        }
    }
    rec(
        g,
        &edges,
        0,
        need,
        &mut BTreeSet::new(),
        &mut Vec::new(),
        &mut out,
    );
    out
}

#[test]
fn criterion_8_brute_force_oracle() {
    let corpus = corpus();
    let mut checked = 0usize;
    for inst in corpus.iter().filter(|i| i.arc.len() <= 8) {
        let g = SnakeGraph::build(&inst.t, &inst.arc).unwrap();
        let dp: BTreeSet<Matching> = enumerate_matchings(&g).into_iter().collect();
        let brute = brute_force_matchings(&g);
        assert_eq!(dp.len(), brute.len(), "{}", inst.name);
        assert_eq!(dp, brute, "{}", inst.name);
        assert_eq!(
            count_matchings(&g),
            snakegraph::num_bigint::BigUint::from(brute.len()),
            "{}",
            inst.name
        );
        checked += 1;
    }
    assert!(checked > 100, "corpus should cover many instances");
    println!("criterion 8: PASS ({checked} instances)");
}
