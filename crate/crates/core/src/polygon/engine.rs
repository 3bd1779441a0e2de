use std::collections::{BTreeMap, BTreeSet};

use super::blue::{walk_vertices, BluePolygon, RedBoundary};
use crate::error::{Error, Result};
use crate::rebuild::{clear_edge_protected, clear_vertex_protected};
use crate::simplex::SimplexId;
use crate::spine::collapse::{collapse_all_mut, collapse_free_triangle_mut, next_free_triangle};
use crate::spine::PaintState;

pub const SEED_OP: &str = "seed_polygon";
pub const EXTEND_OP: &str = "extend_polygon";
pub const ABSORB_OP: &str = "absorb_inner_edge";
pub const FIGURE_EIGHT_OP: &str = "reduce_figure_eight";
pub const DISK_OP: &str = "handle_disk_situation";
pub const RETRACT_OP: &str = "retract_polygon";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtendOutcome {
    Extended,
    InnerEdgeAbsorbed,
    FigureEight,
    DiskSituation,
    SphereSituation,
}

fn anomaly(op: &str, detail: impl Into<String>) -> Error {
    Error::anomaly(op, detail)
}

fn check_host(s: &PaintState, p: &BluePolygon) -> Result<()> {
    match p.blue_triangles().iter().find(|&&f| !s.is_black_triangle(f)) {
        Some(f) => Err(Error::PreconditionUnmet(format!("blue triangle {f} is white in this state"))),
        None => Ok(()),
    }
}

/// Black triangles at `x` that are not blue.
fn dirty_at(s: &PaintState, p: &BluePolygon, x: usize) -> bool {
    let sk = s.base().skeleton();
    sk.vertices[x].edges.iter().any(|&e| {
        sk.edges[e]
            .triangles
            .iter()
            .any(|&f| s.is_black_triangle(f) && !p.is_blue(f))
    })
}

/// Black non-blue triangles with a red edge, ascending. Triangles also hanging
/// on an interior edge of the polygon are left out; bluing them would fold it.
pub fn ext_triangles(s: &PaintState, p: &BluePolygon) -> Vec<usize> {
    let sk = s.base().skeleton();
    let out: BTreeSet<usize> = p
        .red_edges(s.base())
        .into_iter()
        .flat_map(|e| sk.edges[e].triangles.iter().copied())
        .filter(|&f| can_blue(s, p, f))
        .collect();
    out.into_iter().collect()
}

fn can_blue(s: &PaintState, p: &BluePolygon, f: usize) -> bool {
    s.is_black_triangle(f)
        && !p.is_blue(f)
        && s.base().skeleton().triangles[f]
            .edges()
            .into_iter()
            .all(|e| p.blue_sides(s.base(), e) < 2)
}

/// A one-triangle polygon on a black triangle.
pub fn seed_polygon(s: &PaintState, tri: SimplexId) -> Result<(PaintState, BluePolygon)> {
    let f = s.base().check_id(tri, 2)?;
    if !s.is_black_triangle(f) {
        return Err(Error::PreconditionUnmet(format!("triangle {f} is not in the spine")));
    }
    let mut out = s.clone();
    out.record(SEED_OP, vec![f.to_string()]);
    let p = BluePolygon::new(s.base(), f, s.black_triangle_count(), out.trace().len());
    Ok((out, p))
}

/// Clears every red edge of `t` down to its blue triangle and `t`, then blues
/// `t`. Red edges after the first become pending inner edges.
fn blue_across(s: PaintState, mut p: BluePolygon, t: usize, first: usize) -> Result<(PaintState, BluePolygon, Vec<usize>)> {
    let base = s.base_arc().clone();
    let mut reds: Vec<usize> = base.skeleton().triangles[t]
        .edges()
        .into_iter()
        .filter(|&e| p.blue_sides(&base, e) == 1)
        .collect();
    reds.sort_unstable();
    reds.dedup();
    reds.retain(|&e| e != first);
    reds.insert(0, first);
    let mut s = s;
    for &e in &reds {
        let b = p.blue_on(&base, e)[0];
        s = clear_edge_protected(
            &s,
            SimplexId::edge(e),
            (SimplexId::triangle(b), SimplexId::triangle(t)),
            p.blue_mask(),
        )?;
    }
    p.add(t);
    for &e in &reds[1..] {
        p.mark_inner(e);
    }
    s.record(EXTEND_OP, vec![t.to_string(), first.to_string()]);
    p.set_host(s.trace().len());
    Ok((s, p, reds[1..].to_vec()))
}

fn lone_ends(s: &PaintState, p: &BluePolygon, e: usize) -> Vec<usize> {
    let sk = s.base().skeleton();
    let others: BTreeSet<usize> = p
        .red_edges(s.base())
        .into_iter()
        .filter(|&r| r != e)
        .flat_map(|r| sk.edges[r].ends)
        .collect();
    let mut ends: Vec<usize> = sk.edges[e].ends.into_iter().filter(|v| !others.contains(v)).collect();
    ends.dedup();
    ends
}

/// Repaints a pending inner edge and its lone endpoint blue.
pub fn absorb_inner_edge(s: &PaintState, p: &BluePolygon, e: SimplexId) -> Result<(PaintState, BluePolygon)> {
    let e = s.base().check_id(e, 1)?;
    check_host(s, p)?;
    if !p.pending_inner().any(|x| x == e) {
        return Err(Error::NotInner(e));
    }
    let lone = lone_ends(s, p, e);
    if lone.is_empty() {
        return Err(Error::NotInner(e));
    }
    if s.edge_multiplicity(e) != 2 {
        return Err(Error::PreconditionUnmet(format!(
            "edge {e} has black multiplicity {}",
            s.edge_multiplicity(e)
        )));
    }
    if let Some(&x) = lone.iter().find(|&&x| dirty_at(s, p, x)) {
        return Err(Error::PreconditionUnmet(format!("black triangles remain at vertex {x}")));
    }
    let mut s = s.clone();
    let mut p = p.clone();
    p.unmark_inner(e);
    s.record(ABSORB_OP, vec![e.to_string()]);
    p.set_host(s.trace().len());
    Ok((s, p))
}

/// Clears a pending inner edge and its lone endpoints, then absorbs it. An
/// inner edge whose ends both stay on the boundary just becomes interior.
fn prepare_and_absorb(s: PaintState, p: BluePolygon, e: usize) -> Result<(PaintState, BluePolygon)> {
    let base = s.base_arc().clone();
    let mut s = s;
    let mut p = p;
    if s.edge_multiplicity(e) > 2 {
        let b = p.blue_on(&base, e);
        s = clear_edge_protected(
            &s,
            SimplexId::edge(e),
            (SimplexId::triangle(b[0]), SimplexId::triangle(b[1])),
            p.blue_mask(),
        )?;
    }
    let lone = lone_ends(&s, &p, e);
    if lone.is_empty() {
        p.unmark_inner(e);
        return Ok((s, p));
    }
    for x in lone {
        if dirty_at(&s, &p, x) {
            s = clear_vertex_protected(&s, x, p.blue_mask(), &[])?;
        }
    }
    absorb_inner_edge(&s, &p, SimplexId::edge(e))
}

/// Clears interior vertices touched by non-blue black triangles, then interior
/// edges carrying extra black triangles. Clearing one spot can spoil another;
/// when a paint state comes back the earliest copy of it is kept and the rest
/// is left for the retraction.
fn tidy(s: PaintState, p: &BluePolygon) -> Result<PaintState> {
    let base = s.base_arc().clone();
    let mut s = s;
    let mut seen: Vec<PaintState> = Vec::new();
    loop {
        if let Some(first) = seen.iter().find(|&x| *x == s) {
            return Ok(first.clone());
        }
        seen.push(s.clone());
        if let Some(x) = p.interior_vertices(&base).into_iter().find(|&x| dirty_at(&s, p, x)) {
            s = clear_vertex_protected(&s, x, p.blue_mask(), &[])?;
            continue;
        }
        if let Some(e) = p.interior_edges(&base).into_iter().find(|&e| s.edge_multiplicity(e) > 2) {
            let b = p.blue_on(&base, e);
            s = clear_edge_protected(
                &s,
                SimplexId::edge(e),
                (SimplexId::triangle(b[0]), SimplexId::triangle(b[1])),
                p.blue_mask(),
            )?;
            continue;
        }
        return Ok(s);
    }
}

/// Blues `t` across `first`, absorbs resulting inner edges and cleans up.
fn grow(s: PaintState, p: BluePolygon, t: usize, first: usize) -> Result<(PaintState, BluePolygon, bool)> {
    let (mut s, mut p, inner) = blue_across(s, p, t, first)?;
    let absorbed = !inner.is_empty();
    for e in inner {
        (s, p) = prepare_and_absorb(s, p, e)?;
    }
    let s = tidy(s, &p)?;
    Ok((s, p, absorbed))
}

/// Blues a triangle of Ext σ across its lowest red edge: ears first, then
/// triangles reaching off the boundary, then the rest, lowest id within a class.
pub fn extend_polygon(s: &PaintState, p: &BluePolygon) -> Result<(PaintState, BluePolygon, ExtendOutcome)> {
    check_host(s, p)?;
    let base = s.base_arc().clone();
    if let RedBoundary::Irregular(m) = p.boundary(&base) {
        return Err(anomaly(EXTEND_OP, m));
    }
    let rim = Rim::of(s, p);
    let sk = base.skeleton();
    let lowest_red = |t: usize| {
        sk.triangles[t]
            .edges()
            .into_iter()
            .filter(|e| rim.edges.contains(e))
            .min()
            .expect("Ext triangle has a red edge")
    };
    let Some((_, t)) = ext_triangles(s, p).into_iter().map(|t| (rim.class(s, t, lowest_red(t)), t)).min() else {
        return Ok((s.clone(), p.clone(), ExtendOutcome::DiskSituation));
    };
    let first = lowest_red(t);
    let (s, p, absorbed) = grow(s.clone(), p.clone(), t, first)?;
    let outcome = match p.boundary(&base) {
        RedBoundary::Closed => ExtendOutcome::SphereSituation,
        RedBoundary::FigureEight { .. } | RedBoundary::Loops { .. } => ExtendOutcome::FigureEight,
        RedBoundary::Cycle { .. } if absorbed => ExtendOutcome::InnerEdgeAbsorbed,
        RedBoundary::Cycle { .. } => ExtendOutcome::Extended,
        RedBoundary::Irregular(m) => return Err(anomaly(EXTEND_OP, m)),
    };
    Ok((s, p, outcome))
}

/// Grows the polygon across one loop of a pinched boundary until the boundary
/// is a single cycle again.
///
/// The loop is the shorter one at the support vertex and is followed as it
/// changes. Among black triangles on it, ears come first, then triangles whose
/// third vertex is off the boundary, then the rest; within a class the red edge
/// farthest from the support vertex wins, then the lowest triangle id.
pub fn reduce_figure_eight(s: &PaintState, p: &BluePolygon) -> Result<(PaintState, BluePolygon)> {
    check_host(s, p)?;
    let base = s.base_arc().clone();
    let sk = base.skeleton();
    let mut s = s.clone();
    let mut p = p.clone();
    let mut recorded = false;
    // Edges of the loop being filled, plus those of the last triangle blued across it.
    let mut selected: Vec<usize> = Vec::new();
    for _ in 0..4 * base.triangle_count() + 4 {
        let boundary = p.boundary(&base);
        let pinches = match &boundary {
            RedBoundary::Cycle { .. } => return Ok((s, p)),
            RedBoundary::FigureEight { support, .. } => vec![*support],
            RedBoundary::Loops { pinches, .. } => pinches.clone(),
            RedBoundary::Closed => return Err(anomaly(FIGURE_EIGHT_OP, "blue triangles closed up")),
            RedBoundary::Irregular(m) => return Err(anomaly(FIGURE_EIGHT_OP, m.clone())),
        };
        let loops = boundary.loops();
        let mut loops: Vec<&Vec<usize>> = loops.iter().collect();
        loops.sort_by_key(|l| (!l.iter().any(|e| selected.contains(e)), l.len(), l.iter().copied().min()));
        let rim = Rim::of(&s, &p);
        let mut pick = None;
        for gamma in &loops {
            let verts = walk_vertices(&base, gamma);
            let start = verts
                .iter()
                .position(|v| pinches.contains(v))
                .or_else(|| (0..verts.len()).min_by_key(|&i| verts[i]))
                .expect("nonempty loop");
            if !recorded {
                s.record(FIGURE_EIGHT_OP, vec![verts[start].to_string()]);
                recorded = true;
            }
            let n = gamma.len();
            let mut best: Option<((u8, std::cmp::Reverse<usize>, usize), usize)> = None;
            for i in 0..n {
                let e = gamma[(start + i) % n];
                let dist = i.min(n - 1 - i);
                for &t in &sk.edges[e].triangles {
                    if !can_blue(&s, &p, t) {
                        continue;
                    }
                    let key = (rim.class(&s, t, e), std::cmp::Reverse(dist), t);
                    if best.as_ref().is_none_or(|(k, _)| key < *k) {
                        best = Some((key, e));
                    }
                }
            }
            if let Some(((_, _, t), e)) = best {
                pick = Some(((*gamma).clone(), t, e));
                break;
            }
        }
        let Some((gamma, t, e)) = pick else {
            return Err(anomaly(FIGURE_EIGHT_OP, "no black triangle on any loop"));
        };
        (s, p, _) = grow(s, p, t, e)?;
        selected = gamma.iter().copied().filter(|&x| x != e).chain(sk.triangles[t].edges()).collect();
    }
    Err(anomaly(FIGURE_EIGHT_OP, "loop did not close"))
}

/// Red edges and the number of red edge ends at each vertex.
struct Rim {
    edges: BTreeSet<usize>,
    degree: BTreeMap<usize, usize>,
}

impl Rim {
    fn of(s: &PaintState, p: &BluePolygon) -> Self {
        let sk = s.base().skeleton();
        let edges: BTreeSet<usize> = p.red_edges(s.base()).into_iter().collect();
        let mut degree = BTreeMap::new();
        for &e in &edges {
            for v in sk.edges[e].ends {
                *degree.entry(v).or_insert(0) += 1;
            }
        }
        Rim { edges, degree }
    }

    /// 0 for ears (two or three red edges meeting only each other), 1 for
    /// triangles across `e` whose third vertex is off the boundary, 2 otherwise.
    fn class(&self, s: &PaintState, t: usize, e: usize) -> u8 {
        let sk = s.base().skeleton();
        let info = &sk.triangles[t];
        let reds: Vec<usize> = info.edges().into_iter().filter(|x| self.edges.contains(x)).collect();
        match reds.len() {
            3 => 0,
            2 => {
                let [a, b] = [sk.edges[reds[0]].ends, sk.edges[reds[1]].ends];
                match a.iter().find(|v| b.contains(v)) {
                    Some(w) if self.degree.get(w) == Some(&2) => 0,
                    _ => 2,
                }
            }
            _ => match info.vertices.iter().find(|v| !sk.edges[e].ends.contains(v)) {
                Some(v) if !self.degree.contains_key(v) => 1,
                _ => 2,
            },
        }
    }
}

/// Retracts a polygon with empty Ext σ: clears the boundary vertices, collapses
/// the blue triangles in reverse order of acquisition, then collapses freely.
pub fn handle_disk_situation(s: &PaintState, p: &BluePolygon) -> Result<PaintState> {
    check_host(s, p)?;
    if !ext_triangles(s, p).is_empty() {
        return Err(Error::PreconditionUnmet("Ext of the polygon is not empty".into()));
    }
    let base = s.base_arc().clone();
    let sk = base.skeleton();
    let mut s = s.clone();
    s.record(DISK_OP, vec![p.len().to_string()]);
    let red = p.red_edges(&base);
    let frozen: Vec<usize> = red.iter().flat_map(|&e| sk.edges[e].triangles.iter().copied()).collect();
    let rim: BTreeSet<usize> = red.iter().flat_map(|&e| sk.edges[e].ends).collect();
    for x in rim {
        if dirty_at(&s, p, x) {
            s = clear_vertex_protected(&s, x, p.blue_mask(), &frozen)?;
        }
    }
    let mut left: Vec<usize> = p.blue_triangles().iter().rev().copied().collect();
    let blue = p.blue_mask();
    while !left.is_empty() {
        let before = left.len();
        let mut rest = Vec::new();
        for f in left {
            let mut es = sk.triangles[f].edges();
            es.sort_unstable();
            match es.into_iter().find(|&e| s.edge_multiplicity(e) == 1) {
                Some(e) => collapse_free_triangle_mut(&mut s, SimplexId::triangle(f), SimplexId::edge(e))?,
                None => rest.push(f),
            }
        }
        if rest.len() == before {
            // Black triangles left on interior edges may come off freely first.
            match next_free_triangle(&s, |f| blue[f]) {
                Some((f, e)) => collapse_free_triangle_mut(&mut s, SimplexId::triangle(f), SimplexId::edge(e))?,
                None => return Err(anomaly(DISK_OP, format!("retraction blocked at blue triangles {rest:?}"))),
            }
        }
        left = rest;
    }
    collapse_all_mut(&mut s);
    if s.black_triangle_count() >= p.seeded_black() {
        return Err(anomaly(
            DISK_OP,
            format!(
                "black triangles did not decrease ({} before the polygon, {} after)",
                p.seeded_black(),
                s.black_triangle_count()
            ),
        ));
    }
    Ok(s)
}

/// Gives up a polygon whose spine has picked up free triangles: collapses the
/// spine and keeps the result when it has fewer black triangles than the spine
/// the polygon was seeded on.
pub fn retract_polygon(s: &PaintState, p: &BluePolygon) -> Result<PaintState> {
    check_host(s, p)?;
    if next_free_triangle(s, |_| false).is_none() {
        return Err(Error::PreconditionUnmet("spine has no free triangle".into()));
    }
    let mut out = s.clone();
    out.record(RETRACT_OP, vec![p.len().to_string()]);
    collapse_all_mut(&mut out);
    if out.black_triangle_count() >= p.seeded_black() {
        return Err(anomaly(
            RETRACT_OP,
            format!(
                "black triangles did not decrease ({} before the polygon, {} after)",
                p.seeded_black(),
                out.black_triangle_count()
            ),
        ));
    }
    Ok(out)
}
