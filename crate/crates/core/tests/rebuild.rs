use std::collections::BTreeSet;
use std::sync::Arc;

use spinecell::rebuild::{clear_edge, clear_vertex, detect_pyramids, edge_star_chain, repair_dead_ends, Side};
use spinecell::spine::{build_initial_spine, check_invariants, collapse_all, CollapseOutcome};
use spinecell::triangulation::{generate, scramble, CensusKind};
use spinecell::{Error, PaintState, SimplexId, Strategy, Triangulation};

fn d4() -> Triangulation {
    generate(CensusKind::Boundary4Simplex).unwrap()
}

fn tri_of(t: &Triangulation, vs: [usize; 3]) -> usize {
    (0..t.triangle_count())
        .find(|&f| {
            let mut x = t.skeleton().triangles[f].vertices;
            x.sort_unstable();
            x == vs
        })
        .unwrap()
}

/// Collapsed spines that got stuck: the subdivided minimal sphere, then
/// scrambled boundaries of the 4-simplex.
fn stuck_spines(count: usize) -> Vec<PaintState> {
    let sub = generate(CensusKind::MinimalS3).unwrap().barycentric_subdivision();
    let base = d4();
    let mut out = Vec::new();
    let candidates = std::iter::once(sub).chain((1..40).map(|seed| scramble(&base, 100, seed)));
    for t in candidates {
        for seed_tet in 0..4 {
            let s = build_initial_spine(&t, SimplexId::tet(seed_tet), Strategy::Bfs).unwrap();
            let (s, outcome) = collapse_all(&s);
            if outcome == CollapseOutcome::NoFreeFaces {
                out.push(s);
            }
        }
        if out.len() >= count {
            break;
        }
    }
    out
}

fn black_on(s: &PaintState, e: usize) -> Vec<usize> {
    let mut fs: Vec<usize> =
        s.base().skeleton().edges[e].triangles.iter().copied().filter(|&f| s.is_black_triangle(f)).collect();
    fs.sort_unstable();
    fs.dedup();
    fs
}

#[test]
fn chain_arcs_partition_a_degree_three_ring() {
    let t = d4();
    let s = build_initial_spine(&t, SimplexId::tet(0), Strategy::Star).unwrap();
    let e = 0;
    let ring = &t.skeleton().edges[e].ring;
    assert_eq!(ring.len(), 3);
    let (a, b) = (ring[0].exit_triangle, ring[1].exit_triangle);
    let ends = (SimplexId::triangle(a), SimplexId::triangle(b));
    let up = edge_star_chain(&s, SimplexId::edge(e), Side::Upper, ends).unwrap();
    let down = edge_star_chain(&s, SimplexId::edge(e), Side::Lower, ends).unwrap();
    assert_eq!(up.len() + down.len(), 3);
    let mut all: Vec<usize> = up.tets.iter().chain(&down.tets).copied().collect();
    all.sort_unstable();
    all.dedup();
    assert_eq!(all.len(), 3);
    assert_eq!(up.triangles.len(), up.len() - 1);
}

#[test]
fn opposite_triangles_split_a_six_ring_evenly() {
    let base = d4();
    let found = (1..200).find_map(|seed| {
        let t = scramble(&base, 20, seed);
        let e = (0..t.edge_count()).find(|&e| {
            let ring = &t.skeleton().edges[e].ring;
            let mut tets: Vec<usize> = ring.iter().map(|r| r.tet).collect();
            tets.sort_unstable();
            tets.dedup();
            ring.len() == 6 && tets.len() == 6
        })?;
        Some((t, e))
    });
    let (t, e) = found.expect("a degree-six edge");
    let s = build_initial_spine(&t, SimplexId::tet(0), Strategy::Bfs).unwrap();
    let ring = &t.skeleton().edges[e].ring;
    let ends = (SimplexId::triangle(ring[0].exit_triangle), SimplexId::triangle(ring[3].exit_triangle));
    for side in [Side::Upper, Side::Lower] {
        assert_eq!(edge_star_chain(&s, SimplexId::edge(e), side, ends).unwrap().len(), 3);
    }
}

#[test]
fn equal_chain_ends_do_not_separate() {
    let t = d4();
    let s = build_initial_spine(&t, SimplexId::tet(0), Strategy::Star).unwrap();
    let f = SimplexId::triangle(t.skeleton().edges[0].ring[0].exit_triangle);
    assert!(matches!(
        edge_star_chain(&s, SimplexId::edge(0), Side::Upper, (f, f)),
        Err(Error::NotSeparating(_))
    ));
}

#[test]
fn clear_edge_leaves_the_keep_pair() {
    let mut cleared = 0;
    for s in stuck_spines(12) {
        let Some(e) = s.black_edges().find(|&e| s.edge_multiplicity(e) >= 3 && black_on(&s, e).len() >= 3) else {
            continue;
        };
        let on = black_on(&s, e);
        let keep = (SimplexId::triangle(on[0]), SimplexId::triangle(on[1]));
        match clear_edge(&s, SimplexId::edge(e), keep) {
            Ok(out) => {
                assert_eq!(out.edge_multiplicity(e), 2);
                assert!(out.is_black_triangle(on[0]) && out.is_black_triangle(on[1]));
                assert!(check_invariants(&out, true).passes());
                assert_eq!(out.trace().len(), s.trace().len() + 1);
                cleared += 1;
            }
            Err(err) => assert!(matches!(err, Error::Anomaly { .. } | Error::NotSeparating(_)), "{err}"),
        }
    }
    assert!(cleared > 0);
}

#[test]
fn clear_edge_on_a_standard_edge_is_a_no_op() {
    let s = stuck_spines(1).remove(0);
    let e = s.black_edges().find(|&e| s.edge_multiplicity(e) == 2 && black_on(&s, e).len() == 2).unwrap();
    let on = black_on(&s, e);
    let out = clear_edge(&s, SimplexId::edge(e), (SimplexId::triangle(on[0]), SimplexId::triangle(on[1]))).unwrap();
    assert_eq!(out, s);
    assert_eq!(out.trace().len(), s.trace().len());
}

#[test]
fn clear_edge_rejects_a_keep_triangle_off_the_edge() {
    let s = stuck_spines(1).remove(0);
    let sk = s.base().skeleton();
    let e = s.black_edges().find(|&e| s.edge_multiplicity(e) >= 2).unwrap();
    let on = black_on(&s, e);
    let off = s.black_triangles().find(|&f| !sk.triangles[f].edges().contains(&e)).unwrap();
    assert_eq!(
        clear_edge(&s, SimplexId::edge(e), (SimplexId::triangle(on[0]), SimplexId::triangle(off))),
        Err(Error::UnknownSimplex(SimplexId::triangle(off)))
    );
}

/// The star spine with every face of `tet` painted black as well.
fn walled_in(tet: usize) -> (Triangulation, PaintState) {
    let t = d4();
    let s = build_initial_spine(&t, SimplexId::tet(4), Strategy::Star).unwrap();
    let mut tris = s.triangle_mask().to_vec();
    for f in t.skeleton().tet_triangles[tet] {
        tris[f] = true;
    }
    let (v, e, _, _) = t.counts();
    let walled = PaintState::from_masks(Arc::new(t.clone()), tris, vec![true; e], vec![true; v]).unwrap();
    (t, walled)
}

#[test]
fn repair_reopens_a_single_cut_off_tetrahedron() {
    let (t, s) = walled_in(2);
    assert!(!s.is_white_connected());
    let out = repair_dead_ends(&s, &BTreeSet::new()).unwrap();
    assert!(out.is_white_connected());
    assert_eq!(out.black_triangle_count(), s.black_triangle_count() - 1);
    let opened: Vec<usize> = s.black_triangles().filter(|&f| !out.is_black_triangle(f)).collect();
    assert_eq!(opened.len(), 1);
    assert!(t.skeleton().tet_triangles[2].contains(&opened[0]));
}

#[test]
fn repair_without_dead_ends_is_a_no_op() {
    let t = d4();
    let s = build_initial_spine(&t, SimplexId::tet(0), Strategy::Bfs).unwrap();
    let out = repair_dead_ends(&s, &BTreeSet::new()).unwrap();
    assert_eq!(out, s);
    assert_eq!(out.trace().len(), s.trace().len());
}

#[test]
fn repair_fails_when_the_frontier_is_protected() {
    let (t, s) = walled_in(2);
    let protected: BTreeSet<usize> = t.skeleton().tet_triangles[2].iter().copied().collect();
    assert!(matches!(repair_dead_ends(&s, &protected), Err(Error::Anomaly { .. })));
}

/// The star spine at vertex 0 with the fan over the link cycle 1-2-3 as keep.
fn star_fan() -> (Triangulation, PaintState, Vec<SimplexId>) {
    let t = d4();
    let s = build_initial_spine(&t, SimplexId::tet(4), Strategy::Star).unwrap();
    let keep = [[0, 1, 2], [0, 2, 3], [0, 1, 3]].map(|vs| SimplexId::triangle(tri_of(&t, vs))).to_vec();
    (t, s, keep)
}

#[test]
fn pyramid_sides_of_the_star_spine() {
    let (t, s, keep) = star_fan();
    let reports: Vec<_> =
        [Side::Upper, Side::Lower].map(|side| detect_pyramids(&s, SimplexId::vertex(0), &keep, side).unwrap()).into();
    let empty = reports.iter().filter(|r| r.is_clean() && r.flowers.is_empty()).count();
    assert_eq!(empty, 1);
    let busy = reports.iter().find(|r| !r.is_clean()).unwrap();
    assert!(busy.pyramids.is_empty());
    let expected: Vec<usize> = {
        let mut v: Vec<usize> = [[0, 1, 4], [0, 2, 4], [0, 3, 4]].iter().map(|&vs| tri_of(&t, vs)).collect();
        v.sort_unstable();
        v
    };
    assert_eq!(busy.partitions, expected);
}

#[test]
fn pyramids_need_a_separating_keep_cycle() {
    let (_, s, keep) = star_fan();
    assert!(matches!(
        detect_pyramids(&s, SimplexId::vertex(0), &keep[..1], Side::Upper),
        Err(Error::NotSeparating(_))
    ));
}

#[test]
fn clear_vertex_strips_the_star_to_the_fan() {
    let (t, s, keep) = star_fan();
    let out = clear_vertex(&s, SimplexId::vertex(0), &keep).unwrap();
    assert!(check_invariants(&out, true).passes());
    let at_zero: BTreeSet<usize> = out.black_triangles().filter(|&f| t.skeleton().triangles[f].vertices.contains(&0)).collect();
    let want: BTreeSet<usize> = keep.iter().map(|k| k.index).collect();
    assert_eq!(at_zero, want);
    assert_eq!(out.trace().last().unwrap().op, "clear_vertex");
}

#[test]
fn clear_vertex_on_a_clean_vertex_is_a_no_op() {
    let (_, s, keep) = star_fan();
    let once = clear_vertex(&s, SimplexId::vertex(0), &keep).unwrap();
    let twice = clear_vertex(&once, SimplexId::vertex(0), &keep).unwrap();
    assert_eq!(twice, once);
    assert_eq!(twice.trace().len(), once.trace().len());
}
