//! Spine-based sphere recognition for closed triangulated 3-manifolds.
//!
//! A [`Triangulation`] is painted into a white open cell and a black 2-dimensional
//! spine ([`PaintState`]). Elementary collapses shrink the spine; when they get
//! stuck, the rebuild moves and the blue polygon loop in [`polygon`] repaint it
//! until it collapses to a point (verdict `SPHERE`) or the engine gives up with a
//! structured report. Every state is checked against an integer homology oracle.
//!
//! Gluing files look like
//!
//! ```text
//! tetrahedra 2
//! tet 0: 1/0123 1/0123 1/0123 1/0123
//! tet 1: 0/0123 0/0123 0/0123 0/0123
//! ```
//!
//! where face `k` of each tetrahedron is the face opposite vertex `k` and the
//! four digits give the images of vertices 0..3 in the target tetrahedron.

pub mod error;
pub mod homology;
pub mod perm;
pub mod polygon;
pub mod rebuild;
pub mod simplex;
pub mod spine;
pub mod triangulation;

pub use error::{Error, Result};
pub use homology::{ChainComplex, HomologyGroup, HomologyProfile};
pub use perm::Perm4;
pub use polygon::{recognize, RecognizeConfig, RecognizeOutcome, Verdict};
pub use simplex::SimplexId;
pub use spine::{MoveTrace, PaintState, Strategy};
pub use triangulation::{CensusKind, Triangulation};
