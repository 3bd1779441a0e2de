use std::collections::HashMap;

use super::skeleton::face_vertices;
use super::Triangulation;

/// One corner of a tetrahedron at the linked vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceTriangle {
    /// `(tet, local vertex)` of the corner this triangle is the trace of.
    pub corner: (usize, usize),
    pub vertices: [usize; 3],
    /// Surface edge across the face opposite each local vertex slot; slot `k`
    /// pairs with `vertices[k]` being absent from that edge.
    pub edges: [usize; 3],
}

/// Trace of one corner of a 3-manifold triangle at the linked vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceEdge {
    /// `(triangle, vertex position in the triangle)`.
    pub label: (usize, usize),
    pub ends: [usize; 2],
    /// Incident surface triangles (two on a closed surface).
    pub triangles: Vec<usize>,
}

/// Trace of one end of a 3-manifold edge at the linked vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceVertex {
    /// `(edge, end)` where end 0 is the tail of the canonical orientation.
    pub label: (usize, usize),
}

/// A triangulated surface, used for vertex links.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurfaceComplex {
    pub vertex: usize,
    pub triangles: Vec<SurfaceTriangle>,
    pub edges: Vec<SurfaceEdge>,
    pub vertices: Vec<SurfaceVertex>,
}

impl SurfaceComplex {
    pub(crate) fn vertex_link(tri: &Triangulation, x: usize) -> Self {
        let sk = tri.skeleton();
        let gl = tri.gluings();
        let mut out = SurfaceComplex {
            vertex: x,
            ..Default::default()
        };
        let mut vertex_ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut edge_ids: HashMap<(usize, usize), usize> = HashMap::new();
        for &(t, v) in &sk.vertices[x].corners {
            let idx = out.triangles.len();
            let others: Vec<usize> = (0..4).filter(|&w| w != v).collect();
            let mut verts = [0; 3];
            for (k, &w) in others.iter().enumerate() {
                let label = sk.edge_end(t, v, w);
                let next = out.vertices.len();
                verts[k] = *vertex_ids.entry(label).or_insert_with(|| {
                    out.vertices.push(SurfaceVertex { label });
                    next
                });
            }
            let mut edges = [0; 3];
            for (k, &f) in others.iter().enumerate() {
                // Face f of t contains v and the two other slots.
                let label = sk.triangle_corner(gl, t, f, v);
                let next = out.edges.len();
                let eid = *edge_ids.entry(label).or_insert_with(|| {
                    let fv = face_vertices(f);
                    let ends: Vec<usize> = fv
                        .iter()
                        .filter(|&&w| w != v)
                        .map(|&w| verts[others.iter().position(|&o| o == w).unwrap()])
                        .collect();
                    out.edges.push(SurfaceEdge {
                        label,
                        ends: [ends[0], ends[1]],
                        triangles: Vec::new(),
                    });
                    next
                });
                out.edges[eid].triangles.push(idx);
                edges[k] = eid;
            }
            out.triangles.push(SurfaceTriangle {
                corner: (t, v),
                vertices: verts,
                edges,
            });
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    pub fn is_closed(&self) -> bool {
        self.edges.iter().all(|e| e.triangles.len() == 2)
    }

    /// Connected through shared edges (every vertex lies on a triangle).
    pub fn is_connected(&self) -> bool {
        if self.triangles.is_empty() {
            return self.vertices.len() <= 1;
        }
        let mut seen = vec![false; self.triangles.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            for &e in &self.triangles[t].edges {
                for &n in &self.edges[e].triangles {
                    if !seen[n] {
                        seen[n] = true;
                        stack.push(n);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Closed, connected, χ = 2.
    pub fn is_sphere(&self) -> bool {
        self.is_closed() && self.is_connected() && self.euler_characteristic() == 2
    }

    /// Surface edge labelled by `(triangle, position)`, if present.
    pub fn edge_by_label(&self, label: (usize, usize)) -> Option<usize> {
        self.edges.iter().position(|e| e.label == label)
    }

    /// Surface triangle of the corner `(tet, local vertex)`.
    pub fn triangle_by_corner(&self, corner: (usize, usize)) -> Option<usize> {
        self.triangles.iter().position(|t| t.corner == corner)
    }
}
