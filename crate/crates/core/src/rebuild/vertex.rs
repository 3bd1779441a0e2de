use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use super::chain::Side;
use super::edge::clear_edge_in;
use super::work::Rebuild;
use crate::error::{Error, Result};
use crate::simplex::SimplexId;
use crate::spine::PaintState;
use crate::triangulation::SurfaceComplex;

pub const CLEAR_VERTEX_OP: &str = "clear_vertex";

/// Black triangles enclosing tetrahedra at a vertex that cannot be reached from
/// the keep triangles without crossing black.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pyramid {
    /// Black triangles whose traces form the oval around the enclosed region.
    pub oval: Vec<usize>,
    /// Tetrahedra with a corner inside the oval.
    pub interior: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PyramidReport {
    pub vertex: usize,
    pub side: Side,
    pub pyramids: Vec<Pyramid>,
    /// Black triangles at the vertex on this side that bound no enclosed region.
    pub partitions: Vec<usize>,
    /// Black edges at the vertex on this side carrying no black triangle at the vertex.
    pub flowers: Vec<usize>,
}

impl PyramidReport {
    pub fn is_clean(&self) -> bool {
        self.pyramids.is_empty() && self.partitions.is_empty()
    }
}

/// The vertex link with the keep traces marked.
struct LinkView {
    link: SurfaceComplex,
    keep_edge: Vec<bool>,
}

impl LinkView {
    fn new(s: &PaintState, v: usize, keep: &[bool]) -> Self {
        let link = SurfaceComplex::vertex_link(s.base(), v);
        let keep_edge = link.edges.iter().map(|e| keep[e.label.0]).collect();
        LinkView { link, keep_edge }
    }

    fn triangle_of(&self, le: usize) -> usize {
        self.link.edges[le].label.0
    }

    fn is_wall(&self, s: &PaintState, le: usize) -> bool {
        self.keep_edge[le] || s.is_black_triangle(self.triangle_of(le))
    }

    /// Link triangles next to a keep trace.
    fn seeds(&self) -> Vec<usize> {
        let mut out: BTreeSet<usize> = BTreeSet::new();
        for (le, e) in self.link.edges.iter().enumerate() {
            if self.keep_edge[le] {
                out.extend(e.triangles.iter().copied());
            }
        }
        out.into_iter().collect()
    }

    /// Components of link triangles joined across link edges that are not walls.
    fn regions(&self, s: &PaintState, within: &[bool]) -> Vec<usize> {
        let n = self.link.triangles.len();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != usize::MAX || !within[start] {
                continue;
            }
            comp[start] = next;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &le in &self.link.triangles[x].edges {
                    if self.is_wall(s, le) {
                        continue;
                    }
                    for &y in &self.link.edges[le].triangles {
                        if within[y] && comp[y] == usize::MAX {
                            comp[y] = next;
                            stack.push(y);
                        }
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Components of the link cut along the keep traces, and their number.
    fn keep_components(&self) -> (Vec<usize>, usize) {
        let n = self.link.triangles.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &le in &self.link.triangles[x].edges {
                    if self.keep_edge[le] {
                        continue;
                    }
                    for &y in &self.link.edges[le].triangles {
                        if comp[y] == usize::MAX {
                            comp[y] = count;
                            stack.push(y);
                        }
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// The lowest seed by corner in each component of the cut link.
    fn side_seeds(&self) -> Vec<usize> {
        let (comp, count) = self.keep_components();
        let mut best: Vec<Option<usize>> = vec![None; count];
        for t in self.seeds() {
            let key = |u: usize| (self.link.triangles[u].corner, u);
            let slot = &mut best[comp[t]];
            if slot.is_none_or(|b| key(t) < key(b)) {
                *slot = Some(t);
            }
        }
        best.into_iter().flatten().collect()
    }

    /// The two sides of the keep cycle; `None` unless the keep traces form one
    /// closed curve splitting the link in two.
    fn sides(&self) -> Option<[Vec<bool>; 2]> {
        let mut degree = vec![0usize; self.link.vertices.len()];
        let mut any = false;
        for (le, e) in self.link.edges.iter().enumerate() {
            if self.keep_edge[le] {
                any = true;
                degree[e.ends[0]] += 1;
                degree[e.ends[1]] += 1;
            }
        }
        if !any || degree.iter().any(|&d| d != 0 && d != 2) {
            return None;
        }
        let (comp, count) = self.keep_components();
        if count != 2 {
            return None;
        }
        Some([0, 1].map(|c| comp.iter().map(|&x| x == c).collect()))
    }
}

fn keep_mask(s: &PaintState, v: usize, keep: &[SimplexId]) -> Result<Vec<bool>> {
    let t = s.base();
    let mut mask = vec![false; t.triangle_count()];
    for &id in keep {
        let f = t.check_id(id, 2)?;
        if !t.skeleton().triangles[f].vertices.contains(&v) {
            return Err(Error::UnknownSimplex(id));
        }
        if !s.is_black_triangle(f) {
            return Err(Error::PreconditionUnmet(format!("keep triangle {f} is white")));
        }
        mask[f] = true;
    }
    Ok(mask)
}

/// Classifies the black traces at `v` on one side of the cycle traced by `keep`.
pub fn detect_pyramids(s: &PaintState, v: SimplexId, keep: &[SimplexId], side: Side) -> Result<PyramidReport> {
    let x = s.base().check_id(v, 0)?;
    let mask = keep_mask(s, x, keep)?;
    let view = LinkView::new(s, x, &mask);
    let sides = view
        .sides()
        .ok_or_else(|| Error::NotSeparating(format!("keep traces at vertex {x} do not form a separating cycle")))?;
    let within = &sides[match side {
        Side::Upper => 0,
        Side::Lower => 1,
    }];
    let region = view.regions(s, within);
    // Depth of each region: black walls crossed from the keep cycle.
    let mut depth: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for t in view.seeds() {
        if within[t] && depth.insert(region[t], 0).is_none() {
            queue.push_back(region[t]);
        }
    }
    let link = &view.link;
    while let Some(r) = queue.pop_front() {
        let d = depth[&r];
        for (t, _) in region.iter().enumerate().filter(|(_, &c)| c == r) {
            for &le in &link.triangles[t].edges {
                for &u in &link.edges[le].triangles {
                    if within[u] && !depth.contains_key(&region[u]) {
                        depth.insert(region[u], d + 1);
                        queue.push_back(region[u]);
                    }
                }
            }
        }
    }
    let mut ovals: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    let mut partitions = BTreeSet::new();
    for (le, e) in link.edges.iter().enumerate() {
        let f = view.triangle_of(le);
        if view.keep_edge[le] || !s.is_black_triangle(f) || !e.triangles.iter().all(|&t| within[t]) {
            continue;
        }
        let rs: BTreeSet<usize> = e.triangles.iter().map(|&t| region[t]).collect();
        let inner = rs.iter().copied().max_by_key(|r| (depth.get(r).copied().unwrap_or(usize::MAX), *r));
        match inner {
            Some(r) if rs.len() > 1 && depth.get(&r) != Some(&0) => {
                ovals.entry(r).or_default().insert(f);
            }
            _ => {
                partitions.insert(f);
            }
        }
    }
    let pyramids = ovals
        .into_iter()
        .map(|(r, oval)| {
            let interior: BTreeSet<usize> = (0..link.triangles.len())
                .filter(|&t| region[t] == r)
                .map(|t| link.triangles[t].corner.0)
                .collect();
            Pyramid {
                oval: oval.into_iter().collect(),
                interior: interior.into_iter().collect(),
            }
        })
        .collect();
    let mut side_vertex = vec![true; link.vertices.len()];
    let mut touches = vec![false; link.vertices.len()];
    let mut black_trace = vec![false; link.vertices.len()];
    for (le, e) in link.edges.iter().enumerate() {
        let inside = e.triangles.iter().all(|&t| within[t]);
        for &lv in &e.ends {
            if !inside {
                side_vertex[lv] = false;
            }
            if view.keep_edge[le] {
                touches[lv] = true;
            }
            if s.is_black_triangle(view.triangle_of(le)) {
                black_trace[lv] = true;
            }
        }
    }
    let flowers: BTreeSet<usize> = (0..link.vertices.len())
        .filter(|&lv| side_vertex[lv] && !touches[lv] && !black_trace[lv])
        .map(|lv| link.vertices[lv].label.0)
        .filter(|&e| s.is_black_edge(e))
        .collect();
    Ok(PyramidReport {
        vertex: x,
        side,
        pyramids,
        partitions: partitions.into_iter().collect(),
        flowers: flowers.into_iter().collect(),
    })
}

/// Removes every black triangle at `v` other than `keep` and flowers, by
/// pushing the shortest white chain from the keep triangles into each pyramid,
/// then collapsing what is left.
pub fn clear_vertex(s: &PaintState, v: SimplexId, keep: &[SimplexId]) -> Result<PaintState> {
    let x = s.base().check_id(v, 0)?;
    let mask = keep_mask(s, x, keep)?;
    clear_vertex_protected(s, x, &mask, &[])
}

/// [`clear_vertex`] keeping every triangle of `protected` black and every
/// triangle of `frozen` white or unchanged.
pub(crate) fn clear_vertex_protected(s: &PaintState, x: usize, protected: &[bool], frozen: &[usize]) -> Result<PaintState> {
    if !s.is_black_vertex(x) {
        return Err(Error::PreconditionUnmet(format!("vertex {x} is white")));
    }
    let mut w = Rebuild::new(s, CLEAR_VERTEX_OP, protected);
    for &f in frozen {
        w.freeze(f);
    }
    clear_vertex_in(&mut w, x, protected)?;
    w.finish(vec![x.to_string()])
}

/// Pushes tried per round before falling back to the keep edges.
const PUSH_TRIES: usize = 8;

pub(crate) fn clear_vertex_in(w: &mut Rebuild, x: usize, keep: &[bool]) -> Result<()> {
    let sk = w.s.base_arc().clone();
    let sk = sk.skeleton();
    let at_x: Vec<usize> = (0..sk.triangles.len()).filter(|&f| sk.triangles[f].vertices.contains(&x)).collect();
    let keep_at_x: Vec<usize> = at_x.iter().copied().filter(|&f| keep[f]).collect();
    if keep_at_x.is_empty() {
        return Err(Error::PreconditionUnmet(format!("no keep triangle at vertex {x}")));
    }
    let view = LinkView::new(&w.s, x, keep);
    let free_at_x = |w: &mut Rebuild| loop {
        let free = at_x.iter().copied().filter(|&f| w.s.is_black_triangle(f) && !keep[f]).find_map(|f| {
            let mut es = sk.triangles[f].edges();
            es.sort_unstable();
            es.into_iter().find(|&e| w.s.edge_multiplicity(e) == 1).map(|e| (f, e))
        });
        let Some((f, e)) = free else { return };
        w.whiten(f);
        w.s.paint_edge(e, false);
    };
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    loop {
        w.tick()?;
        free_at_x(w);
        seen.insert(w.s.triangle_mask().to_vec());
        let dirt = |w: &Rebuild| at_x.iter().filter(|&&f| w.s.is_black_triangle(f) && !keep[f]).count();
        let mut pushes = shortest_pushes(&view, &w.s);
        pushes.truncate(PUSH_TRIES);
        let mut best: Option<((usize, usize), (PaintState, Vec<bool>))> = None;
        for (g, into, root) in pushes {
            let snap = w.snapshot();
            let done = w.push(g, into).and_then(|_| w.repair(root));
            if done.is_ok() && w.is_cell() {
                free_at_x(w);
                let score = (dirt(w), w.s.black_triangle_count());
                if !seen.contains(w.s.triangle_mask()) && best.as_ref().is_none_or(|(b, _)| score < *b) {
                    best = Some((score, w.snapshot()));
                }
            }
            w.rollback(snap);
        }
        if let Some((_, snap)) = best {
            w.rollback(snap);
            continue;
        }
        if let Some((e, pair)) = dirty_keep_edge(w, x, &keep_at_x) {
            let snap = w.snapshot();
            clear_edge_in(w, e, pair)?;
            free_at_x(w);
            if !seen.contains(w.s.triangle_mask()) {
                continue;
            }
            w.rollback(snap);
        }
        let left: Vec<usize> = at_x.iter().copied().filter(|&f| w.s.is_black_triangle(f) && !keep[f]).collect();
        if !left.is_empty() {
            return Err(w.anomaly(format!("black triangles {left:?} remain at vertex {x}")));
        }
        return Ok(());
    }
}

/// An edge at `x` on two keep triangles that also carries other black triangles.
fn dirty_keep_edge(w: &Rebuild, x: usize, keep_at_x: &[usize]) -> Option<(usize, (usize, usize))> {
    let sk = w.s.base().skeleton();
    let mut on_edge: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &f in keep_at_x {
        for e in sk.triangles[f].edges() {
            if sk.edges[e].ends.contains(&x) {
                on_edge.entry(e).or_default().push(f);
            }
        }
    }
    on_edge.into_iter().find_map(|(e, fs)| {
        (fs.len() == 2 && w.s.edge_multiplicity(e) > 2).then(|| (e, (fs[0], fs[1])))
    })
}

/// Breadth-first from one keep-side seed per side through white link edges.
/// Lists the black walls with an unreached tetrahedron behind them, those of
/// the earliest reached link triangle first: the wall's triangle, the
/// tetrahedron behind it and the one in front.
fn shortest_pushes(view: &LinkView, s: &PaintState) -> Vec<(usize, usize, usize)> {
    let link = &view.link;
    let n = link.triangles.len();
    let mut seen = vec![false; n];
    let mut order = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut seeds = view.side_seeds();
    seeds.sort_by_key(|&t| (link.triangles[t].corner, t));
    for t in seeds {
        seen[t] = true;
        queue.push_back(t);
    }
    while let Some(t) = queue.pop_front() {
        order.push(t);
        let mut next: Vec<usize> = Vec::new();
        for &le in &link.triangles[t].edges {
            if view.is_wall(s, le) {
                continue;
            }
            next.extend(link.edges[le].triangles.iter().copied().filter(|&u| !seen[u]));
        }
        next.sort_by_key(|&u| (link.triangles[u].corner, u));
        next.dedup();
        for u in next {
            if !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    let mut out = Vec::new();
    for t in order {
        let mut walls: Vec<(usize, usize)> = Vec::new();
        for &le in &link.triangles[t].edges {
            if view.keep_edge[le] || !s.is_black_triangle(view.triangle_of(le)) {
                continue;
            }
            for &u in &link.edges[le].triangles {
                if !seen[u] {
                    walls.push((link.triangles[u].corner.0, view.triangle_of(le)));
                }
            }
        }
        walls.sort_unstable();
        walls.dedup();
        out.extend(walls.into_iter().map(|(into, g)| (g, into, link.triangles[t].corner.0)));
    }
    out
}
