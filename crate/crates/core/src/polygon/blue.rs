use std::collections::{BTreeMap, BTreeSet};

use crate::triangulation::Triangulation;

/// Shape of the red boundary of a blue polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RedBoundary {
    /// One closed walk, as edges in order starting from the lowest edge.
    Cycle { edges: Vec<usize>, vertices: Vec<usize> },
    /// Two closed walks through the support vertex.
    FigureEight { support: usize, loops: [Vec<usize>; 2] },
    /// Any other union of closed walks, split into simple loops; `pinches` are
    /// the vertices with more than two red edge ends.
    Loops { pinches: Vec<usize>, loops: Vec<Vec<usize>> },
    /// No red edge: the blue triangles close up.
    Closed,
    Irregular(String),
}

impl RedBoundary {
    /// The simple loops, in order; empty for closed and irregular boundaries.
    pub fn loops(&self) -> Vec<Vec<usize>> {
        match self {
            RedBoundary::Cycle { edges, .. } => vec![edges.clone()],
            RedBoundary::FigureEight { loops, .. } => loops.to_vec(),
            RedBoundary::Loops { loops, .. } => loops.clone(),
            _ => Vec::new(),
        }
    }

    /// Number of red edge traversals.
    pub fn len(&self) -> usize {
        match self {
            RedBoundary::Cycle { edges, .. } => edges.len(),
            RedBoundary::FigureEight { loops, .. } => loops[0].len() + loops[1].len(),
            RedBoundary::Loops { loops, .. } => loops.iter().map(Vec::len).sum(),
            _ => 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A set of blue spine triangles grown one triangle at a time.
///
/// An edge is red when exactly one blue triangle side lies on it, or when it is
/// an inner edge still waiting to be absorbed; an inner edge is walked twice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BluePolygon {
    blue: Vec<bool>,
    order: Vec<usize>,
    inner: BTreeSet<usize>,
    /// Black triangle count of the state the polygon was seeded on.
    seeded_black: usize,
    /// Trace length of the state generation the polygon was last updated against.
    host: usize,
}

impl BluePolygon {
    pub(crate) fn new(t: &Triangulation, tri: usize, seeded_black: usize, host: usize) -> Self {
        let mut blue = vec![false; t.triangle_count()];
        blue[tri] = true;
        BluePolygon {
            blue,
            order: vec![tri],
            inner: BTreeSet::new(),
            seeded_black,
            host,
        }
    }

    /// Blue triangles in acquisition order.
    pub fn blue_triangles(&self) -> &[usize] {
        &self.order
    }

    pub fn is_blue(&self, f: usize) -> bool {
        self.blue[f]
    }

    pub fn blue_mask(&self) -> &[bool] {
        &self.blue
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn seeded_black(&self) -> usize {
        self.seeded_black
    }

    pub fn host_step(&self) -> usize {
        self.host
    }

    pub(crate) fn set_host(&mut self, step: usize) {
        self.host = step;
    }

    /// Inner edges not yet absorbed.
    pub fn pending_inner(&self) -> impl Iterator<Item = usize> + '_ {
        self.inner.iter().copied()
    }

    pub(crate) fn add(&mut self, f: usize) {
        if !self.blue[f] {
            self.blue[f] = true;
            self.order.push(f);
        }
    }

    pub(crate) fn mark_inner(&mut self, e: usize) {
        self.inner.insert(e);
    }

    pub(crate) fn unmark_inner(&mut self, e: usize) -> bool {
        self.inner.remove(&e)
    }

    /// Blue triangle sides on `e`.
    pub fn blue_sides(&self, t: &Triangulation, e: usize) -> usize {
        t.skeleton().edges[e].triangles.iter().filter(|&&f| self.blue[f]).count()
    }

    /// Blue triangles on `e`, one entry per side.
    pub fn blue_on(&self, t: &Triangulation, e: usize) -> Vec<usize> {
        let mut out: Vec<usize> = t.skeleton().edges[e].triangles.iter().copied().filter(|&f| self.blue[f]).collect();
        out.sort_unstable();
        out
    }

    fn blue_edges(&self, t: &Triangulation) -> BTreeSet<usize> {
        self.order.iter().flat_map(|&f| t.skeleton().triangles[f].edges()).collect()
    }

    /// Edges with exactly one blue side, plus pending inner edges.
    pub fn red_edges(&self, t: &Triangulation) -> Vec<usize> {
        self.blue_edges(t)
            .into_iter()
            .filter(|&e| self.blue_sides(t, e) == 1 || self.inner.contains(&e))
            .collect()
    }

    /// Edges with two blue sides that are not pending.
    pub fn interior_edges(&self, t: &Triangulation) -> Vec<usize> {
        self.blue_edges(t)
            .into_iter()
            .filter(|&e| self.blue_sides(t, e) == 2 && !self.inner.contains(&e))
            .collect()
    }

    /// Vertices of blue triangles on no red edge.
    pub fn interior_vertices(&self, t: &Triangulation) -> Vec<usize> {
        let sk = t.skeleton();
        let red: BTreeSet<usize> = self.red_edges(t).into_iter().flat_map(|e| sk.edges[e].ends).collect();
        let all: BTreeSet<usize> = self.order.iter().flat_map(|&f| sk.triangles[f].vertices).collect();
        all.difference(&red).copied().collect()
    }

    /// χ of the closure of the blue triangles.
    pub fn euler_characteristic(&self, t: &Triangulation) -> i64 {
        let sk = t.skeleton();
        let edges = self.blue_edges(t);
        let verts: BTreeSet<usize> = self.order.iter().flat_map(|&f| sk.triangles[f].vertices).collect();
        verts.len() as i64 - edges.len() as i64 + self.order.len() as i64
    }

    pub fn boundary(&self, t: &Triangulation) -> RedBoundary {
        let sk = t.skeleton();
        for e in self.blue_edges(t) {
            let n = self.blue_sides(t, e);
            if n > 2 {
                return RedBoundary::Irregular(format!("edge {e} has {n} blue sides"));
            }
        }
        // Red edge traversals: inner edges appear twice.
        let mut darts: Vec<usize> = Vec::new();
        for e in self.red_edges(t) {
            if sk.edges[e].ends[0] == sk.edges[e].ends[1] {
                return RedBoundary::Irregular(format!("red edge {e} is a loop"));
            }
            darts.push(e);
            if self.inner.contains(&e) {
                darts.push(e);
            }
        }
        if darts.is_empty() {
            return RedBoundary::Closed;
        }
        let mut at: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (k, &e) in darts.iter().enumerate() {
            for v in sk.edges[e].ends {
                at.entry(v).or_default().push(k);
            }
        }
        let odd: Vec<usize> = at.iter().filter(|(_, ds)| ds.len() % 2 == 1).map(|(&v, _)| v).collect();
        if !odd.is_empty() {
            return RedBoundary::Irregular(format!("red vertices {odd:?} have odd degree"));
        }
        let branch: Vec<usize> = at.iter().filter(|(_, ds)| ds.len() > 2).map(|(&v, _)| v).collect();
        let loops = simple_loops(t, &darts, &at);
        match (branch.as_slice(), loops.len()) {
            ([], 1) => {
                let edges = loops.into_iter().next().expect("one loop");
                let vertices = walk_vertices(t, &edges);
                RedBoundary::Cycle { edges, vertices }
            }
            ([x0], 2) if at[x0].len() == 4 => {
                let [l1, l2]: [Vec<usize>; 2] = loops.try_into().expect("two loops");
                RedBoundary::FigureEight {
                    support: *x0,
                    loops: [l1, l2],
                }
            }
            _ => RedBoundary::Loops { pinches: branch, loops },
        }
    }
}

/// Vertices visited by a closed edge walk: the start of each edge in turn.
pub(crate) fn walk_vertices(t: &Triangulation, edges: &[usize]) -> Vec<usize> {
    let sk = t.skeleton();
    match edges {
        [] => Vec::new(),
        [e] => vec![sk.edges[*e].ends[0]],
        [e, f, ..] => {
            let [a, b] = sk.edges[*e].ends;
            let mut v = if sk.edges[*f].ends.contains(&b) { a } else { b };
            let mut out = Vec::with_capacity(edges.len());
            for &x in edges {
                out.push(v);
                let [p, q] = sk.edges[x].ends;
                v = if p == v { q } else { p };
            }
            out
        }
    }
}

/// Splits the red darts into simple closed loops. Walks from the lowest unused
/// dart, always taking the lowest unused dart at the current vertex, and cuts
/// off a loop whenever the walk revisits a vertex.
fn simple_loops(t: &Triangulation, darts: &[usize], at: &BTreeMap<usize, Vec<usize>>) -> Vec<Vec<usize>> {
    let sk = t.skeleton();
    let mut order: Vec<usize> = (0..darts.len()).collect();
    order.sort_by_key(|&k| (darts[k], k));
    let mut used = vec![false; darts.len()];
    let mut loops = Vec::new();
    for k0 in order {
        if used[k0] {
            continue;
        }
        let start = sk.edges[darts[k0]].ends[0];
        let mut path_v = vec![start];
        let mut path_e: Vec<usize> = Vec::new();
        let mut v = start;
        loop {
            let next = at[&v]
                .iter()
                .copied()
                .filter(|&k| !used[k])
                .min_by_key(|&k| (k != k0 || !path_e.is_empty(), darts[k], k));
            let Some(k) = next else { break };
            used[k] = true;
            let [a, b] = sk.edges[darts[k]].ends;
            let w = if a == v { b } else { a };
            path_e.push(darts[k]);
            match path_v.iter().position(|&x| x == w) {
                Some(i) => {
                    loops.push(path_e.split_off(i));
                    path_v.truncate(i + 1);
                }
                None => path_v.push(w),
            }
            v = w;
        }
    }
    loops
}
