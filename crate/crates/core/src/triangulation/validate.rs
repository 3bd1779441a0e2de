use std::fmt;

use super::{SurfaceComplex, Triangulation};

/// A violated closed-manifold condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationFailure {
    BoundaryFace { tet: usize, face: usize },
    /// Ring not a single closed cycle, or the edge is glued to itself reversed.
    BadEdgeLink { edge: usize },
    /// Vertex link is not a connected closed surface of Euler characteristic 2.
    BadVertexLink { vertex: usize, chi: i64, connected: bool },
    Disconnected,
    EulerMismatch { chi: i64 },
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationFailure::BoundaryFace { tet, face } => {
                write!(f, "BoundaryFace(tet {tet} face {face})")
            }
            ValidationFailure::BadEdgeLink { edge } => write!(f, "BadEdgeLink(edge {edge})"),
            ValidationFailure::BadVertexLink { vertex, chi, connected } => {
                write!(f, "BadVertexLink(vertex {vertex} chi {chi} connected {connected})")
            }
            ValidationFailure::Disconnected => write!(f, "Disconnected"),
            ValidationFailure::EulerMismatch { chi } => write!(f, "EulerMismatch(chi {chi})"),
        }
    }
}

/// Counts and per-simplex data for a closed-manifold check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// `(V, E, F, T)`.
    pub counts: (usize, usize, usize, usize),
    pub chi: i64,
    pub connected: bool,
    pub ring_lengths: Vec<usize>,
    pub link_chi: Vec<i64>,
    /// Informational only.
    pub orientable: bool,
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub(crate) fn of(tri: &Triangulation) -> Self {
        let sk = tri.skeleton();
        let mut failures = Vec::new();
        for (t, row) in tri.gluings().iter().enumerate() {
            for (f, g) in row.iter().enumerate() {
                if g.is_none() {
                    failures.push(ValidationFailure::BoundaryFace { tet: t, face: f });
                }
            }
        }
        let ring_lengths: Vec<usize> = sk.edges.iter().map(|e| e.ring.len()).collect();
        for (id, e) in sk.edges.iter().enumerate() {
            if !e.closed || e.self_reversed {
                failures.push(ValidationFailure::BadEdgeLink { edge: id });
            }
        }
        let mut link_chi = Vec::with_capacity(sk.vertices.len());
        for v in 0..sk.vertices.len() {
            let link = SurfaceComplex::vertex_link(tri, v);
            let chi = link.euler_characteristic();
            let connected = link.is_connected();
            link_chi.push(chi);
            if !(link.is_closed() && connected && chi == 2) {
                failures.push(ValidationFailure::BadVertexLink {
                    vertex: v,
                    chi,
                    connected,
                });
            }
        }
        let connected = dual_connected(tri);
        if !connected {
            failures.push(ValidationFailure::Disconnected);
        }
        let chi = tri.euler_characteristic();
        if chi != 0 {
            failures.push(ValidationFailure::EulerMismatch { chi });
        }
        ValidationReport {
            counts: tri.counts(),
            chi,
            connected,
            ring_lengths,
            link_chi,
            orientable: orientable(tri),
            failures,
        }
    }

    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.failures.is_empty() {
            return "ok".into();
        }
        self.failures
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn dual_connected(tri: &Triangulation) -> bool {
    let n = tri.tet_count();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(t) = stack.pop() {
        for g in tri.gluings()[t].iter().flatten() {
            if !seen[g.tet] {
                seen[g.tet] = true;
                stack.push(g.tet);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Consistent orientation of all tetrahedra exists.
fn orientable(tri: &Triangulation) -> bool {
    let n = tri.tet_count();
    let mut orient = vec![0i64; n];
    for start in 0..n {
        if orient[start] != 0 {
            continue;
        }
        orient[start] = 1;
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            for g in tri.gluings()[t].iter().flatten() {
                // Gluing must reverse orientation between consistently oriented tets.
                let want = -orient[t] * g.perm.sign();
                if orient[g.tet] == 0 {
                    orient[g.tet] = want;
                    stack.push(g.tet);
                } else if orient[g.tet] != want {
                    return false;
                }
            }
        }
    }
    true
}
