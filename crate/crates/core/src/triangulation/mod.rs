//! Closed 3-manifold triangulations given by face-gluing tables.
//!
//! A [`Triangulation`] stores, for every tetrahedron and each of its four faces
//! (face `k` is the face opposite vertex `k`), the tetrahedron it is glued to and
//! the vertex permutation realizing the gluing. The vertex, edge and triangle
//! skeleton is derived eagerly from the orbits of the gluing permutations, so
//! incidence queries are plain array lookups.
//!
//! Gluings may identify two faces of the same tetrahedron; the resulting
//! complexes are Δ-complexes rather than simplicial complexes, which is what
//! one-vertex triangulations need.

mod census;
mod format;
mod link;
mod pachner;
mod scramble;
mod skeleton;
mod subdivide;
mod validate;

pub use census::{generate, CensusKind};
pub use link::{SurfaceComplex, SurfaceEdge, SurfaceTriangle, SurfaceVertex};
pub use pachner::{pachner_move, IdCorrespondence, PachnerKind};
pub use scramble::{scramble, scramble_with, ScrambleConfig, ScrambleReport};
pub use skeleton::{EdgeInfo, RingSlot, Skeleton, TriangleInfo, VertexInfo, LOCAL_EDGES};
pub use validate::{ValidationFailure, ValidationReport};

use crate::error::{Error, Result};
use crate::perm::Perm4;
use crate::simplex::SimplexId;

/// Target of one face gluing: the partner tetrahedron and the vertex map into it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FaceGluing {
    pub tet: usize,
    pub perm: Perm4,
}

/// A triangulated 3-dimensional pseudo-manifold with its derived skeleton.
///
/// Values are immutable after construction.
#[derive(Clone, Debug)]
pub struct Triangulation {
    gluings: Vec<[Option<FaceGluing>; 4]>,
    skeleton: Skeleton,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.gluings == other.gluings
    }
}

impl Eq for Triangulation {}

impl Triangulation {
    /// Builds a triangulation from a gluing table, checking that the table is
    /// well formed (in-range indices, involutive pairings). Manifold conditions
    /// are not checked here; see [`Triangulation::validate`].
    pub fn from_gluings(gluings: Vec<[Option<FaceGluing>; 4]>) -> Result<Self> {
        if gluings.is_empty() {
            return Err(Error::EmptyTriangulation);
        }
        let n = gluings.len();
        for (t, faces) in gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                let bad = |reason: String| Error::InvalidGluing {
                    tet: t,
                    face: f,
                    reason,
                };
                if g.tet >= n {
                    return Err(bad(format!("target tetrahedron {} out of range", g.tet)));
                }
                let target_face = g.perm.apply(f);
                if g.tet == t && target_face == f {
                    return Err(bad("face glued to itself".into()));
                }
                match gluings[g.tet][target_face] {
                    Some(back) if back.tet == t && back.perm == g.perm.inverse() => {}
                    Some(back) => {
                        return Err(bad(format!(
                            "reverse gluing of tetrahedron {} face {} points to {}/{} instead of {}/{}",
                            g.tet,
                            target_face,
                            back.tet,
                            back.perm,
                            t,
                            g.perm.inverse()
                        )))
                    }
                    None => {
                        return Err(bad(format!(
                            "reverse gluing of tetrahedron {} face {} is missing",
                            g.tet, target_face
                        )))
                    }
                }
            }
        }
        let skeleton = Skeleton::build(&gluings);
        Ok(Triangulation { gluings, skeleton })
    }

    /// Same as [`Triangulation::from_gluings`] for a table without boundary faces.
    pub fn from_closed_gluings(table: Vec<[(usize, Perm4); 4]>) -> Result<Self> {
        Self::from_gluings(
            table
                .into_iter()
                .map(|row| row.map(|(tet, perm)| Some(FaceGluing { tet, perm })))
                .collect(),
        )
    }

    pub fn tet_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Option<FaceGluing> {
        self.gluings[tet][face]
    }

    pub fn gluings(&self) -> &[[Option<FaceGluing>; 4]] {
        &self.gluings
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn vertex_count(&self) -> usize {
        self.skeleton.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.skeleton.edges.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.skeleton.triangles.len()
    }

    /// `(V, E, F, T)`.
    pub fn counts(&self) -> (usize, usize, usize, usize) {
        (
            self.vertex_count(),
            self.edge_count(),
            self.triangle_count(),
            self.tet_count(),
        )
    }

    pub fn euler_characteristic(&self) -> i64 {
        let (v, e, f, t) = self.counts();
        v as i64 - e as i64 + f as i64 - t as i64
    }

    pub fn is_closed(&self) -> bool {
        self.gluings.iter().all(|row| row.iter().all(Option::is_some))
    }

    /// Number of simplices of the given dimension.
    pub fn simplex_count(&self, dim: u8) -> usize {
        match dim {
            0 => self.vertex_count(),
            1 => self.edge_count(),
            2 => self.triangle_count(),
            3 => self.tet_count(),
            _ => 0,
        }
    }

    /// Checks that `id` names an existing simplex of dimension `dim`.
    pub fn check_id(&self, id: SimplexId, dim: u8) -> Result<usize> {
        if id.dim != dim || id.index >= self.simplex_count(dim) {
            return Err(Error::UnknownSimplex(id));
        }
        Ok(id.index)
    }

    /// Cyclic ring of `(tetrahedron, triangle)` pairs around an edge; the
    /// triangle of each slot is the one shared with the next slot.
    pub fn edge_ring(&self, e: SimplexId) -> Result<Vec<(usize, usize)>> {
        let e = self.check_id(e, 1)?;
        Ok(self.skeleton.edges[e]
            .ring
            .iter()
            .map(|slot| (slot.tet, slot.exit_triangle))
            .collect())
    }

    /// Link surface of a vertex, labelled by the simplices its cells are traces of.
    pub fn vertex_link(&self, v: SimplexId) -> Result<SurfaceComplex> {
        let v = self.check_id(v, 0)?;
        Ok(SurfaceComplex::vertex_link(self, v))
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport::of(self)
    }

    /// Errors unless the triangulation passes [`Triangulation::validate`].
    pub fn require_closed_manifold(&self) -> Result<()> {
        let report = self.validate();
        if report.passes() {
            Ok(())
        } else {
            Err(Error::NotClosedManifold(report.summary()))
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        format::parse(text)
    }

    /// Canonical text form; see the crate documentation for the grammar.
    pub fn serialize(&self) -> String {
        format::serialize(self)
    }
}

impl std::str::FromStr for Triangulation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        format::parse(s)
    }
}
