use std::fmt;

use super::PaintState;
use crate::homology::{HomologyGroup, HomologyProfile};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantFailure {
    /// A black triangle with a white edge.
    OpenTriangle { tri: usize, edge: usize },
    /// A black edge with a white endpoint.
    OpenEdge { edge: usize, vertex: usize },
    /// Tetrahedra not reachable from tetrahedron 0 through white triangles.
    WhiteDisconnected { unreachable: usize },
    EulerMismatch { chi: i64 },
    /// The black complex is empty or has several components.
    BlackDisconnected { components: usize },
    H1Nontrivial(HomologyGroup),
    H2Nontrivial(HomologyGroup),
    /// The homology computation itself failed.
    Oracle(String),
}

impl fmt::Display for InvariantFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantFailure::OpenTriangle { tri, edge } => write!(f, "OpenTriangle(t{tri} e{edge})"),
            InvariantFailure::OpenEdge { edge, vertex } => write!(f, "OpenEdge(e{edge} v{vertex})"),
            InvariantFailure::WhiteDisconnected { unreachable } => {
                write!(f, "WhiteDisconnected({unreachable} tetrahedra cut off)")
            }
            InvariantFailure::EulerMismatch { chi } => write!(f, "EulerMismatch(chi={chi})"),
            InvariantFailure::BlackDisconnected { components } => {
                write!(f, "BlackDisconnected({components} components)")
            }
            InvariantFailure::H1Nontrivial(g) => write!(f, "H1Nontrivial({g})"),
            InvariantFailure::H2Nontrivial(g) => write!(f, "H2Nontrivial({g})"),
            InvariantFailure::Oracle(m) => write!(f, "Oracle({m})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub failures: Vec<InvariantFailure>,
    /// Present when the homology checks ran.
    pub homology: Option<HomologyProfile>,
}

impl InvariantReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.failures.is_empty() {
            return "ok".into();
        }
        self.failures.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    }
}

/// Checks closure, white connectivity, χ = 1 and connectivity of the spine;
/// with `expect_simply_connected` also `H1 = H2 = 0`.
pub fn check_invariants(s: &PaintState, expect_simply_connected: bool) -> InvariantReport {
    let sk = s.base().skeleton();
    let mut failures = Vec::new();
    for f in s.black_triangles() {
        for e in sk.triangles[f].edges() {
            if !s.is_black_edge(e) {
                failures.push(InvariantFailure::OpenTriangle { tri: f, edge: e });
            }
        }
    }
    for e in s.black_edges() {
        for v in sk.edges[e].ends {
            if !s.is_black_vertex(v) {
                failures.push(InvariantFailure::OpenEdge { edge: e, vertex: v });
            }
        }
    }
    let unreachable = s.white_reachable().iter().filter(|&&r| !r).count();
    if unreachable > 0 {
        failures.push(InvariantFailure::WhiteDisconnected { unreachable });
    }
    if s.chi() != 1 {
        failures.push(InvariantFailure::EulerMismatch { chi: s.chi() });
    }
    let components = black_components(s);
    if components != 1 {
        failures.push(InvariantFailure::BlackDisconnected { components });
    }
    let mut homology = None;
    if expect_simply_connected && failures.iter().all(|f| !matches!(f, InvariantFailure::OpenTriangle { .. } | InvariantFailure::OpenEdge { .. })) {
        match s.black_complex().homology() {
            Ok(h) => {
                if !h.group(1).is_trivial() {
                    failures.push(InvariantFailure::H1Nontrivial(h.group(1).clone()));
                }
                if !h.group(2).is_trivial() {
                    failures.push(InvariantFailure::H2Nontrivial(h.group(2).clone()));
                }
                homology = Some(h);
            }
            Err(e) => failures.push(InvariantFailure::Oracle(e.to_string())),
        }
    }
    InvariantReport { failures, homology }
}

/// Connected components of black vertices joined by black edges.
fn black_components(s: &PaintState) -> usize {
    let sk = s.base().skeleton();
    let n = sk.vertices.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in s.black_edges() {
        let [a, b] = sk.edges[e].ends;
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let mut roots: Vec<usize> = s.black_vertices().map(|v| find(&mut parent, v)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}
