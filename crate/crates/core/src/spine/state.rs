use std::collections::VecDeque;
use std::sync::Arc;

use super::trace::{MoveTrace, PaintToken, TraceRecord};
use crate::error::{Error, Result};
use crate::homology::ChainComplex;
use crate::triangulation::Triangulation;

/// Black/white painting of a triangulation's 2-skeleton.
///
/// Black simplices form the spine; white triangles glue the tetrahedra into one
/// open cell. Tetrahedra are always white.
#[derive(Clone, Debug)]
pub struct PaintState {
    base: Arc<Triangulation>,
    tris: Vec<bool>,
    edges: Vec<bool>,
    verts: Vec<bool>,
    /// Black triangle sides incident to each edge.
    mult: Vec<usize>,
    counts: [usize; 3],
    trace: MoveTrace,
}

impl PartialEq for PaintState {
    /// Paint equality; traces are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.tris == other.tris && self.edges == other.edges && self.verts == other.verts
    }
}

impl PaintState {
    /// Everything black.
    pub(crate) fn all_black(base: Arc<Triangulation>) -> Self {
        let (v, e, f, _) = base.counts();
        Self::from_masks_unchecked(base, vec![true; f], vec![true; e], vec![true; v])
    }

    /// A state with the given black sets. No invariants are checked; use
    /// [`crate::spine::check_invariants`] to inspect the result.
    pub fn from_masks(base: Arc<Triangulation>, tris: Vec<bool>, edges: Vec<bool>, verts: Vec<bool>) -> Result<Self> {
        let (v, e, f, _) = base.counts();
        if tris.len() != f || edges.len() != e || verts.len() != v {
            return Err(Error::InvalidParameters(format!(
                "mask sizes ({}, {}, {}) do not match (V, E, F) = ({v}, {e}, {f})",
                verts.len(),
                edges.len(),
                tris.len()
            )));
        }
        Ok(Self::from_masks_unchecked(base, tris, edges, verts))
    }

    fn from_masks_unchecked(base: Arc<Triangulation>, tris: Vec<bool>, edges: Vec<bool>, verts: Vec<bool>) -> Self {
        let mut mult = vec![0; edges.len()];
        for (f, _) in tris.iter().enumerate().filter(|(_, &b)| b) {
            for e in base.skeleton().triangles[f].edges() {
                mult[e] += 1;
            }
        }
        let count = |m: &[bool]| m.iter().filter(|&&b| b).count();
        let counts = [count(&tris), count(&edges), count(&verts)];
        PaintState {
            base,
            tris,
            edges,
            verts,
            mult,
            counts,
            trace: MoveTrace::default(),
        }
    }

    pub fn base(&self) -> &Triangulation {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<Triangulation> {
        &self.base
    }

    pub fn trace(&self) -> &MoveTrace {
        &self.trace
    }

    pub fn into_trace(self) -> MoveTrace {
        self.trace
    }

    pub fn is_black_triangle(&self, f: usize) -> bool {
        self.tris[f]
    }

    pub fn is_black_edge(&self, e: usize) -> bool {
        self.edges[e]
    }

    pub fn is_black_vertex(&self, v: usize) -> bool {
        self.verts[v]
    }

    pub fn triangle_mask(&self) -> &[bool] {
        &self.tris
    }

    pub fn edge_mask(&self) -> &[bool] {
        &self.edges
    }

    pub fn vertex_mask(&self) -> &[bool] {
        &self.verts
    }

    pub fn black_triangles(&self) -> impl Iterator<Item = usize> + '_ {
        self.tris.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn black_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn black_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.verts.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn black_triangle_count(&self) -> usize {
        self.counts[0]
    }

    pub fn black_edge_count(&self) -> usize {
        self.counts[1]
    }

    pub fn black_vertex_count(&self) -> usize {
        self.counts[2]
    }

    /// χ of the black complex.
    pub fn chi(&self) -> i64 {
        self.counts[2] as i64 - self.counts[1] as i64 + self.counts[0] as i64
    }

    /// Number of black triangle sides on edge `e`.
    pub fn edge_multiplicity(&self, e: usize) -> usize {
        self.mult[e]
    }

    /// Black edges at `v`, loops counted twice.
    pub fn black_edge_degree(&self, v: usize) -> usize {
        self.base.skeleton().vertices[v].edges.iter().filter(|&&e| self.edges[e]).count()
    }

    pub(crate) fn paint_triangle(&mut self, f: usize, black: bool) {
        if self.tris[f] == black {
            return;
        }
        self.tris[f] = black;
        for e in self.base.skeleton().triangles[f].edges() {
            if black {
                self.mult[e] += 1;
            } else {
                self.mult[e] -= 1;
            }
        }
        bump(&mut self.counts[0], black);
    }

    pub(crate) fn paint_edge(&mut self, e: usize, black: bool) {
        if self.edges[e] != black {
            self.edges[e] = black;
            bump(&mut self.counts[1], black);
        }
    }

    pub(crate) fn paint_vertex(&mut self, v: usize, black: bool) {
        if self.verts[v] != black {
            self.verts[v] = black;
            bump(&mut self.counts[2], black);
        }
    }

    pub(crate) fn apply_token(&mut self, t: PaintToken) -> Result<()> {
        let (v, e, f, _) = self.base.counts();
        let unknown = |id| Err(Error::UnknownSimplex(id));
        match t {
            PaintToken::Triangle(i, b) if i < f => self.paint_triangle(i, b),
            PaintToken::Edge(i, b) if i < e => self.paint_edge(i, b),
            PaintToken::Vertex(i, b) if i < v => self.paint_vertex(i, b),
            PaintToken::Triangle(i, _) => return unknown(crate::SimplexId::triangle(i)),
            PaintToken::Edge(i, _) => return unknown(crate::SimplexId::edge(i)),
            PaintToken::Vertex(i, _) => return unknown(crate::SimplexId::vertex(i)),
        }
        Ok(())
    }

    /// Repaint tokens turning `before` into `self`: triangles, then edges, then vertices.
    pub(crate) fn delta_from(&self, before: &PaintState) -> Vec<PaintToken> {
        let mut out = Vec::new();
        for (i, (&a, &b)) in before.tris.iter().zip(&self.tris).enumerate() {
            if a != b {
                out.push(PaintToken::Triangle(i, b));
            }
        }
        for (i, (&a, &b)) in before.edges.iter().zip(&self.edges).enumerate() {
            if a != b {
                out.push(PaintToken::Edge(i, b));
            }
        }
        for (i, (&a, &b)) in before.verts.iter().zip(&self.verts).enumerate() {
            if a != b {
                out.push(PaintToken::Vertex(i, b));
            }
        }
        out
    }

    /// Appends a trace record stamped with the current counts.
    pub(crate) fn record(&mut self, op: &str, args: Vec<String>) {
        let rec = TraceRecord {
            step: self.trace.records.len(),
            op: op.to_string(),
            args,
            black_triangles: self.counts[0],
            black_edges: self.counts[1],
            black_vertices: self.counts[2],
            chi: self.chi(),
        };
        self.trace.records.push(rec);
    }

    pub(crate) fn take_trace(&mut self) -> MoveTrace {
        std::mem::take(&mut self.trace)
    }

    pub(crate) fn set_trace(&mut self, trace: MoveTrace) {
        self.trace = trace;
    }

    /// Tetrahedra reachable from tetrahedron 0 through white triangles.
    pub fn white_reachable(&self) -> Vec<bool> {
        self.white_reachable_from(0)
    }

    pub(crate) fn white_reachable_from(&self, start: usize) -> Vec<bool> {
        let t = &self.base;
        let sk = t.skeleton();
        let mut seen = vec![false; t.tet_count()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(x) = queue.pop_front() {
            for f in 0..4 {
                if self.tris[sk.tet_triangles[x][f]] {
                    continue;
                }
                if let Some(g) = t.gluing(x, f) {
                    if !seen[g.tet] {
                        seen[g.tet] = true;
                        queue.push_back(g.tet);
                    }
                }
            }
        }
        seen
    }

    pub fn is_white_connected(&self) -> bool {
        self.white_reachable().into_iter().all(|s| s)
    }

    /// Chain complex of the black subcomplex.
    pub fn black_complex(&self) -> ChainComplex {
        ChainComplex::of_subcomplex(
            &self.base,
            &self.verts,
            &self.edges,
            &self.tris,
            &vec![false; self.base.tet_count()],
        )
    }

    /// True iff exactly one vertex and nothing else is black.
    pub fn is_point(&self) -> bool {
        self.counts == [0, 0, 1]
    }
}

fn bump(c: &mut usize, up: bool) {
    if up {
        *c += 1;
    } else {
        *c -= 1;
    }
}
