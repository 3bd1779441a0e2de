//! Compound moves that restructure a stuck spine while keeping the white
//! region a single cell: clearing an edge of extra black triangles, repairing
//! dead ends, and clearing a vertex of pyramids.
//!
//! Each move works on a copy, is certified with
//! [`check_invariants`](crate::spine::check_invariants) and appends a single
//! trace record whose arguments list the repaint tokens.

mod chain;
mod edge;
mod vertex;
mod work;

pub use chain::{edge_star_chain, SChain, Side};
pub use edge::{clear_edge, repair_dead_ends, CLEAR_EDGE_OP, REPAIR_OP};
pub use vertex::{clear_vertex, detect_pyramids, Pyramid, PyramidReport, CLEAR_VERTEX_OP};

pub(crate) use edge::clear_edge_protected;
pub(crate) use vertex::clear_vertex_protected;
