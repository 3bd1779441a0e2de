use proptest::prelude::*;

use spinecell::homology::HomologyProfile;
use spinecell::rebuild::clear_edge;
use spinecell::spine::{
    build_initial_spine, check_invariants, collapse_all, collapse_free_triangle, collapse_isolated_edge, PaintState,
};
use spinecell::triangulation::{generate, pachner_move, scramble, CensusKind, PachnerKind};
use spinecell::{ChainComplex, Error, SimplexId, Strategy, Triangulation};

fn d4() -> Triangulation {
    generate(CensusKind::Boundary4Simplex).unwrap()
}

fn strategy(k: u8) -> Strategy {
    [Strategy::Bfs, Strategy::Dfs, Strategy::Star][k as usize % 3]
}

fn free_moves(s: &PaintState) -> Vec<(usize, usize)> {
    let sk = s.base().skeleton();
    s.black_triangles()
        .flat_map(|f| {
            let mut es = sk.triangles[f].edges().to_vec();
            es.sort_unstable();
            es.dedup();
            es.into_iter().filter(|&e| s.edge_multiplicity(e) == 1).map(move |e| (f, e)).collect::<Vec<_>>()
        })
        .collect()
}

fn isolated_edges(s: &PaintState) -> Vec<usize> {
    s.black_edges().filter(|&e| collapse_isolated_edge(s, SimplexId::edge(e)).is_ok()).collect()
}

fn is_cell(s: &PaintState) -> bool {
    s.chi() == 1 && s.is_white_connected()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn free_triangle_collapses_keep_a_cell(moves in 0usize..24, seed in 0u64..10_000, tet in 0usize..64, k in 0u8..3, picks in prop::collection::vec(any::<prop::sample::Index>(), 1..12)) {
        let t = scramble(&d4(), moves, seed);
        let mut s = build_initial_spine(&t, SimplexId::tet(tet % t.tet_count()), strategy(k)).unwrap();
        for pick in picks {
            let options = free_moves(&s);
            if options.is_empty() {
                break;
            }
            let (f, e) = options[pick.index(options.len())];
            s = collapse_free_triangle(&s, SimplexId::triangle(f), SimplexId::edge(e)).unwrap();
            prop_assert!(is_cell(&s));
        }
    }

    #[test]
    fn isolated_edge_collapses_keep_a_cell(moves in 0usize..24, seed in 0u64..10_000, tet in 0usize..64, k in 0u8..3, picks in prop::collection::vec(any::<prop::sample::Index>(), 1..8)) {
        let t = scramble(&d4(), moves, seed);
        let s = build_initial_spine(&t, SimplexId::tet(tet % t.tet_count()), strategy(k)).unwrap();
        let mut s = s;
        while let Some(&(f, e)) = free_moves(&s).first() {
            s = collapse_free_triangle(&s, SimplexId::triangle(f), SimplexId::edge(e)).unwrap();
        }
        for pick in picks {
            let options = isolated_edges(&s);
            if options.is_empty() {
                break;
            }
            let e = options[pick.index(options.len())];
            s = collapse_isolated_edge(&s, SimplexId::edge(e)).unwrap();
            prop_assert!(is_cell(&s));
        }
    }

    #[test]
    fn pachner_moves_preserve_homology(moves in 0usize..30, seed in 0u64..10_000, kind in 0u8..4, target in 0usize..512) {
        let t = scramble(&d4(), moves, seed);
        let kind = [PachnerKind::OneFour, PachnerKind::TwoThree, PachnerKind::ThreeTwo, PachnerKind::FourOne][kind as usize];
        let dim = match kind {
            PachnerKind::OneFour => 3,
            PachnerKind::TwoThree => 2,
            PachnerKind::ThreeTwo => 1,
            PachnerKind::FourOne => 0,
        };
        let id = SimplexId { dim, index: target % t.simplex_count(dim) };
        match pachner_move(&t, kind, id) {
            Ok((u, _)) => {
                prop_assert!(u.validate().passes());
                prop_assert_eq!(ChainComplex::of_triangulation(&u).homology().unwrap(), HomologyProfile::sphere3());
            }
            Err(e) => prop_assert!(matches!(e, Error::MoveNotApplicable(_)), "{}", e),
        }
    }
}

/// Stuck spines of the subdivided minimal sphere, one per seed tetrahedron and strategy.
fn stuck() -> &'static [PaintState] {
    use std::sync::OnceLock;
    static CELL: OnceLock<Vec<PaintState>> = OnceLock::new();
    CELL.get_or_init(|| {
        let t = generate(CensusKind::MinimalS3).unwrap().barycentric_subdivision();
        let mut out = Vec::new();
        for tet in 0..t.tet_count() {
            for k in 0..2 {
                let s = build_initial_spine(&t, SimplexId::tet(tet), strategy(k)).unwrap();
                let (s, outcome) = collapse_all(&s);
                if outcome == spinecell::spine::CollapseOutcome::NoFreeFaces {
                    out.push(s);
                }
            }
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn clear_edge_postcondition_or_anomaly(which in any::<prop::sample::Index>(), edge in any::<prop::sample::Index>(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let pool = stuck();
        prop_assume!(!pool.is_empty());
        let s = &pool[which.index(pool.len())];
        let sk = s.base().skeleton();
        let crowded: Vec<usize> = s.black_edges().filter(|&e| s.edge_multiplicity(e) >= 2).collect();
        let e = crowded[edge.index(crowded.len())];
        let mut on: Vec<usize> = sk.edges[e].triangles.iter().copied().filter(|&f| s.is_black_triangle(f)).collect();
        on.sort_unstable();
        on.dedup();
        let (i, j) = (a.index(on.len()), b.index(on.len()));
        prop_assume!(i != j);
        let ring_tets: Vec<usize> = sk.edges[e].ring.iter().map(|r| r.tet).collect();
        match clear_edge(s, SimplexId::edge(e), (SimplexId::triangle(on[i]), SimplexId::triangle(on[j]))) {
            Ok(out) => {
                prop_assert_eq!(out.edge_multiplicity(e), 2);
                prop_assert!(out.is_black_triangle(on[i]) && out.is_black_triangle(on[j]));
                prop_assert!(check_invariants(&out, true).passes());
                let far = |f: usize| !sk.triangles[f].tets().any(|t| ring_tets.contains(&t));
                let untouched = (0..sk.triangles.len()).filter(|&f| far(f)).all(|f| {
                    !s.is_black_triangle(f) || out.is_black_triangle(f)
                });
                prop_assert!(untouched, "far black triangle whitened");
            }
            Err(err) => prop_assert!(matches!(err, Error::Anomaly { .. } | Error::NotSeparating(_)), "{}", err),
        }
    }
}
