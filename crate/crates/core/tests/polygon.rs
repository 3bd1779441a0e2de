use std::sync::Arc;

use spinecell::polygon::{
    absorb_inner_edge, extend_polygon, handle_disk_situation, recognize, reduce_figure_eight, seed_polygon,
    ExtendOutcome, RecognizeConfig, Verdict, DISK_OP, SEED_OP,
};
use spinecell::spine::{build_initial_spine, check_invariants, collapse_all, replay_trace};
use spinecell::triangulation::{generate, CensusKind};
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

/// A spine made of the given triangles of the boundary of the 4-simplex and their faces.
fn spine_of(t: &Triangulation, tris: &[[usize; 3]]) -> PaintState {
    let (v, e, f, _) = t.counts();
    let sk = t.skeleton();
    let (mut tm, mut em, mut vm) = (vec![false; f], vec![false; e], vec![false; v]);
    for &vs in tris {
        let g = tri_of(t, vs);
        tm[g] = true;
        for x in sk.triangles[g].edges() {
            em[x] = true;
        }
        for x in sk.triangles[g].vertices {
            vm[x] = true;
        }
    }
    let s = PaintState::from_masks(Arc::new(t.clone()), tm, em, vm).unwrap();
    assert!(check_invariants(&s, true).passes());
    s
}

#[test]
fn seed_is_one_triangle_with_three_red_edges() {
    let t = d4();
    let s = build_initial_spine(&t, SimplexId::tet(4), Strategy::Star).unwrap();
    let f = s.black_triangles().next().unwrap();
    let (out, p) = seed_polygon(&s, SimplexId::triangle(f)).unwrap();
    assert_eq!(p.blue_triangles(), &[f]);
    assert_eq!(p.red_edges(&t).len(), 3);
    assert_eq!(out.trace().last().unwrap().op, SEED_OP);
}

#[test]
fn seed_needs_a_black_triangle() {
    let t = d4();
    let s = build_initial_spine(&t, SimplexId::tet(4), Strategy::Star).unwrap();
    let (point, _) = collapse_all(&s);
    assert!(matches!(seed_polygon(&point, SimplexId::triangle(0)), Err(Error::PreconditionUnmet(_))));
    let bad = SimplexId::triangle(t.triangle_count());
    assert_eq!(seed_polygon(&s, bad).unwrap_err(), Error::UnknownSimplex(bad));
}

#[test]
fn boundary_edges_are_not_inner() {
    let t = d4();
    let s = spine_of(&t, &[[0, 1, 2], [0, 1, 3]]);
    let (s, p) = seed_polygon(&s, SimplexId::triangle(tri_of(&t, [0, 1, 2]))).unwrap();
    let e = p.red_edges(&t)[0];
    assert_eq!(absorb_inner_edge(&s, &p, SimplexId::edge(e)).unwrap_err(), Error::NotInner(e));
}

#[test]
fn extension_then_disk_retraction_in_reverse_order() {
    let t = d4();
    let first = tri_of(&t, [0, 1, 2]);
    let second = tri_of(&t, [0, 1, 3]);
    let s = spine_of(&t, &[[0, 1, 2], [0, 1, 3]]);
    let (s, p) = seed_polygon(&s, SimplexId::triangle(first)).unwrap();
    let (s, p, outcome) = extend_polygon(&s, &p).unwrap();
    assert_eq!(outcome, ExtendOutcome::Extended);
    assert_eq!(p.blue_triangles(), &[first, second]);
    assert_eq!(p.red_edges(&t).len(), 4);
    let (s, p, outcome) = extend_polygon(&s, &p).unwrap();
    assert_eq!(outcome, ExtendOutcome::DiskSituation);
    let out = handle_disk_situation(&s, &p).unwrap();
    assert_eq!(out.black_triangle_count(), 0);
    assert!(check_invariants(&out, true).passes());
    let recs = &out.trace().records;
    let at = recs.iter().position(|r| r.op == DISK_OP).unwrap();
    let whitened: Vec<String> = recs[at + 1..]
        .iter()
        .filter(|r| r.op == "collapse_free_triangle")
        .map(|r| r.args[0].clone())
        .collect();
    assert_eq!(whitened, vec![second.to_string(), first.to_string()]);
}

#[test]
fn one_triangle_disk_retracts() {
    let t = d4();
    let f = tri_of(&t, [1, 2, 3]);
    let s = spine_of(&t, &[[1, 2, 3]]);
    let (s, p) = seed_polygon(&s, SimplexId::triangle(f)).unwrap();
    let out = handle_disk_situation(&s, &p).unwrap();
    assert_eq!(out.black_triangle_count(), 0);
    assert!(out.is_point());
}

#[test]
fn disk_handling_needs_an_empty_ext() {
    let t = d4();
    let s = spine_of(&t, &[[0, 1, 2], [0, 1, 3]]);
    let (s, p) = seed_polygon(&s, SimplexId::triangle(tri_of(&t, [0, 1, 2]))).unwrap();
    assert!(matches!(handle_disk_situation(&s, &p), Err(Error::PreconditionUnmet(_))));
}

#[test]
fn single_cycle_reduction_is_a_no_op() {
    let t = d4();
    let s = spine_of(&t, &[[0, 1, 2], [0, 1, 3]]);
    let (s, p) = seed_polygon(&s, SimplexId::triangle(tri_of(&t, [0, 1, 2]))).unwrap();
    let (out, q) = reduce_figure_eight(&s, &p).unwrap();
    assert_eq!(q, p);
    assert_eq!(out.trace().len(), s.trace().len());
}

#[test]
fn recognizes_the_census_spheres() {
    for kind in [CensusKind::Boundary4Simplex, CensusKind::MinimalS3] {
        let t = generate(kind).unwrap();
        let out = recognize(&t, &RecognizeConfig::default()).unwrap();
        assert_eq!(out.verdict, Verdict::Sphere, "{}", out.line());
        assert!(out.state.as_ref().unwrap().is_point());
        let end = replay_trace(&t, &out.trace, true).unwrap();
        assert!(end.is_point());
    }
}

#[test]
fn lens_spaces_are_refused() {
    for (p, torsion) in [(2, "H1=Z/2"), (3, "H1=Z/3")] {
        let t = generate(CensusKind::Lens { p, q: 1 }).unwrap();
        let out = recognize(&t, &RecognizeConfig::default()).unwrap();
        assert_eq!(out.verdict.keyword(), "NOT_SIMPLY_CONNECTED");
        assert_eq!(out.verdict.exit_code(), 2);
        assert_eq!(out.detail, torsion);
        assert!(out.trace.is_empty());
    }
}

#[test]
fn zero_step_budget() {
    let t = d4();
    let config = RecognizeConfig { max_steps: 0, ..Default::default() };
    let out = recognize(&t, &config).unwrap();
    assert_eq!(out.verdict, Verdict::IterationLimit(0));
    assert_eq!(out.line(), format!("verdict=ITERATION_LIMIT steps=0 tets=5 detail={}", out.detail));
}

#[test]
fn small_step_budget_stops_the_collapse() {
    let t = d4();
    let config = RecognizeConfig { max_steps: 3, ..Default::default() };
    let out = recognize(&t, &config).unwrap();
    assert!(matches!(out.verdict, Verdict::IterationLimit(n) if n > 3));
}

#[test]
fn trace_file_matches_the_outcome() {
    let t = generate(CensusKind::MinimalS3).unwrap();
    let path = std::env::temp_dir().join(format!("spinecell-trace-{}.txt", std::process::id()));
    let config = RecognizeConfig { trace_path: Some(path.clone()), ..Default::default() };
    let out = recognize(&t, &config).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(text, out.trace.to_text());
}

#[test]
fn invalid_input_is_an_error() {
    let t = Triangulation::parse("tetrahedra 1\ntet 0: - - - -\n").unwrap();
    assert!(matches!(recognize(&t, &RecognizeConfig::default()), Err(Error::NotClosedManifold(_))));
}
