use std::collections::BTreeMap;

use super::PaintState;
use crate::error::{Error, Result};
use crate::simplex::SimplexId;

/// Classification of a black triangle by the black multiplicities of its edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriangleClass {
    /// Some edge has multiplicity 1; lists all such edges ascending.
    Free { free_edges: Vec<usize> },
    /// No free edge, some edge with multiplicity at least 3; lists those edges.
    Multiple { edges: Vec<usize> },
    /// Every edge has multiplicity exactly 2.
    Simple,
}

impl TriangleClass {
    pub fn letter(&self) -> char {
        match self {
            TriangleClass::Free { .. } => 'F',
            TriangleClass::Multiple { .. } => 'M',
            TriangleClass::Simple => 'S',
        }
    }
}

pub(crate) fn classify(s: &PaintState, f: usize) -> TriangleClass {
    let mut edges = s.base().skeleton().triangles[f].edges().to_vec();
    edges.sort_unstable();
    edges.dedup();
    let free: Vec<usize> = edges.iter().copied().filter(|&e| s.edge_multiplicity(e) == 1).collect();
    if !free.is_empty() {
        return TriangleClass::Free { free_edges: free };
    }
    let many: Vec<usize> = edges.into_iter().filter(|&e| s.edge_multiplicity(e) >= 3).collect();
    if !many.is_empty() {
        return TriangleClass::Multiple { edges: many };
    }
    TriangleClass::Simple
}

pub fn classify_triangles(s: &PaintState) -> BTreeMap<usize, TriangleClass> {
    s.black_triangles().map(|f| (f, classify(s, f))).collect()
}

pub const FREE_TRIANGLE_OP: &str = "collapse_free_triangle";
pub const ISOLATED_EDGE_OP: &str = "collapse_isolated_edge";

pub fn collapse_free_triangle(s: &PaintState, tri: SimplexId, free_edge: SimplexId) -> Result<PaintState> {
    let mut out = s.clone();
    collapse_free_triangle_mut(&mut out, tri, free_edge)?;
    Ok(out)
}

pub(crate) fn collapse_free_triangle_mut(s: &mut PaintState, tri: SimplexId, free_edge: SimplexId) -> Result<()> {
    let f = s.base().check_id(tri, 2)?;
    let e = s.base().check_id(free_edge, 1)?;
    let on_tri = s.base().skeleton().triangles[f].edge_multiplicity(e);
    if !s.is_black_triangle(f) || on_tri == 0 {
        return Err(Error::NotFree {
            tri: f,
            edge: e,
            multiplicity: if on_tri == 0 { 0 } else { s.edge_multiplicity(e) },
        });
    }
    if s.edge_multiplicity(e) != 1 {
        return Err(Error::NotFree {
            tri: f,
            edge: e,
            multiplicity: s.edge_multiplicity(e),
        });
    }
    s.paint_triangle(f, false);
    s.paint_edge(e, false);
    s.record(FREE_TRIANGLE_OP, vec![f.to_string(), e.to_string()]);
    Ok(())
}

/// The vertex an isolated edge collapse would remove, if the edge is isolated.
pub(crate) fn isolated_end(s: &PaintState, e: usize) -> Option<usize> {
    if !s.is_black_edge(e) || s.edge_multiplicity(e) != 0 {
        return None;
    }
    let [a, b] = s.base().skeleton().edges[e].ends;
    if a == b {
        return None;
    }
    let free_a = s.black_edge_degree(a) == 1;
    let free_b = s.black_edge_degree(b) == 1;
    match (free_a, free_b) {
        (true, true) => Some(a.max(b)),
        (true, false) => Some(a),
        (false, true) => Some(b),
        (false, false) => None,
    }
}

/// Whitens an edge on no black triangle together with its free endpoint.
/// When both endpoints are free the lower-id one stays black.
pub fn collapse_isolated_edge(s: &PaintState, e: SimplexId) -> Result<PaintState> {
    let mut out = s.clone();
    collapse_isolated_edge_mut(&mut out, e)?;
    Ok(out)
}

pub(crate) fn collapse_isolated_edge_mut(s: &mut PaintState, e: SimplexId) -> Result<()> {
    let e = s.base().check_id(e, 1)?;
    let v = isolated_end(s, e).ok_or(Error::NotIsolated(e))?;
    s.paint_edge(e, false);
    s.paint_vertex(v, false);
    s.record(ISOLATED_EDGE_OP, vec![e.to_string()]);
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CollapseOutcome {
    Point,
    NoFreeFaces,
}

/// Lowest-id black triangle with a free edge, with its lowest-id free edge.
pub(crate) fn next_free_triangle(s: &PaintState, skip: impl Fn(usize) -> bool) -> Option<(usize, usize)> {
    let sk = s.base().skeleton();
    s.black_triangles().filter(|&f| !skip(f)).find_map(|f| {
        let mut es = sk.triangles[f].edges();
        es.sort_unstable();
        es.into_iter().find(|&e| s.edge_multiplicity(e) == 1).map(|e| (f, e))
    })
}

pub(crate) fn next_isolated_edge(s: &PaintState) -> Option<usize> {
    s.black_edges().find(|&e| isolated_end(s, e).is_some())
}

/// Collapses free triangles, then isolated edges, lowest id first, until stuck.
pub fn collapse_all(s: &PaintState) -> (PaintState, CollapseOutcome) {
    let mut out = s.clone();
    let outcome = collapse_all_mut(&mut out);
    (out, outcome)
}

pub(crate) fn collapse_all_mut(s: &mut PaintState) -> CollapseOutcome {
    loop {
        if let Some((f, e)) = next_free_triangle(s, |_| false) {
            collapse_free_triangle_mut(s, SimplexId::triangle(f), SimplexId::edge(e)).expect("free");
        } else if let Some(e) = next_isolated_edge(s) {
            collapse_isolated_edge_mut(s, SimplexId::edge(e)).expect("isolated");
        } else {
            break;
        }
    }
    if s.is_point() {
        CollapseOutcome::Point
    } else {
        CollapseOutcome::NoFreeFaces
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spine::{build_initial_spine, is_point_spine, Strategy};
    use crate::triangulation::{generate, CensusKind};
    use crate::Triangulation;

    fn star() -> (Triangulation, PaintState) {
        let t = generate(CensusKind::Boundary4Simplex).unwrap();
        let s = build_initial_spine(&t, SimplexId::tet(4), Strategy::Star).unwrap();
        (t, s)
    }

    fn edge_between(t: &Triangulation, a: usize, b: usize) -> usize {
        (0..t.edge_count())
            .find(|&e| {
                let ends = t.skeleton().edges[e].ends;
                ends == [a, b] || ends == [b, a]
            })
            .unwrap()
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

    #[test]
    fn star_spine_all_free() {
        let (_, s) = star();
        let classes = classify_triangles(&s);
        assert_eq!(classes.len(), 6);
        assert!(classes.values().all(|c| c.letter() == 'F'));
    }

    #[test]
    fn free_collapse_counts() {
        let (t, s) = star();
        let f = tri_of(&t, [0, 1, 2]);
        let e = edge_between(&t, 1, 2);
        let s2 = collapse_free_triangle(&s, SimplexId::triangle(f), SimplexId::edge(e)).unwrap();
        assert_eq!((s2.black_triangle_count(), s2.black_edge_count(), s2.chi()), (5, 9, 1));
        // The spoke edge {0,1} has multiplicity 2, so it is not free.
        let spoke = edge_between(&t, 0, 1);
        let g = tri_of(&t, [0, 1, 3]);
        assert!(matches!(
            collapse_free_triangle(&s, SimplexId::triangle(g), SimplexId::edge(spoke)),
            Err(Error::NotFree { multiplicity: 3, .. })
        ));
    }

    #[test]
    fn star_collapses_in_ten_moves() {
        let (t, s) = star();
        let (end, outcome) = collapse_all(&s);
        assert_eq!(outcome, CollapseOutcome::Point);
        let ops: Vec<&str> = end.trace().records[1..].iter().map(|r| r.op.as_str()).collect();
        assert_eq!(ops.iter().filter(|&&o| o == FREE_TRIANGLE_OP).count(), 6);
        assert_eq!(ops.iter().filter(|&&o| o == ISOLATED_EDGE_OP).count(), 4);
        assert_eq!(ops.len(), 10);
        assert_eq!(end.black_vertices().count(), 1);
        let _ = t;
    }

    #[test]
    fn spoke_collapse_after_rim_collapses() {
        let (t, mut s) = star();
        // Collapse every {0,i,j} through its rim edge {i,j}.
        for (i, j) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)] {
            let f = tri_of(&t, [0, i, j]);
            let e = edge_between(&t, i, j);
            s = collapse_free_triangle(&s, SimplexId::triangle(f), SimplexId::edge(e)).unwrap();
        }
        let spoke = edge_between(&t, 0, 1);
        let s = collapse_isolated_edge(&s, SimplexId::edge(spoke)).unwrap();
        assert!(!s.is_black_vertex(1));
        assert!(s.is_black_vertex(0));
        assert_eq!((s.black_edge_count(), s.black_vertex_count(), s.chi()), (3, 4, 1));
    }

    #[test]
    fn last_edge_keeps_lower_endpoint() {
        let (t, mut s) = star();
        for (i, j) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)] {
            let f = tri_of(&t, [0, i, j]);
            s = collapse_free_triangle(&s, SimplexId::triangle(f), SimplexId::edge(edge_between(&t, i, j))).unwrap();
        }
        for k in [1, 2, 3, 4] {
            s = collapse_isolated_edge(&s, SimplexId::edge(edge_between(&t, 0, k))).unwrap();
        }
        assert!(is_point_spine(&s));
        assert!(s.is_black_vertex(0));
    }

    #[test]
    fn isolated_edge_rules() {
        let (t, s) = star();
        let e = edge_between(&t, 0, 1);
        assert_eq!(collapse_isolated_edge(&s, SimplexId::edge(e)).unwrap_err(), Error::NotIsolated(e));
    }

    #[test]
    fn point_is_fixed() {
        let (_, s) = star();
        let (p, _) = collapse_all(&s);
        let (q, outcome) = collapse_all(&p);
        assert_eq!(outcome, CollapseOutcome::Point);
        assert_eq!(q.trace().len(), p.trace().len());
    }
}
