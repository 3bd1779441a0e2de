//! Blue polygons grown inside a stuck spine, and the recognizer built on them.
//!
//! A polygon starts as one black triangle and grows across its red boundary
//! edges. Inner edges are absorbed, figure-eight boundaries are reduced, and
//! when nothing black borders the polygon it is retracted, which strictly
//! shrinks the spine.

mod blue;
mod engine;
mod recognize;

pub use blue::{BluePolygon, RedBoundary};
pub use engine::{
    absorb_inner_edge, ext_triangles, extend_polygon, handle_disk_situation, reduce_figure_eight, retract_polygon,
    seed_polygon, ExtendOutcome, ABSORB_OP, DISK_OP, EXTEND_OP, FIGURE_EIGHT_OP, RETRACT_OP, SEED_OP,
};
pub use recognize::{recognize, RecognizeConfig, RecognizeOutcome, Verdict};
