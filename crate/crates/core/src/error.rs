use thiserror::Error;

use crate::simplex::SimplexId;

/// Errors raised by triangulation, homology and spine operations.
///
/// Verdict-level failures of the recognizer (anomalies, iteration limits) are
/// not errors; they are reported through [`crate::polygon::Verdict`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("triangulation has no tetrahedra")]
    EmptyTriangulation,
    #[error("invalid gluing at tetrahedron {tet} face {face}: {reason}")]
    InvalidGluing {
        tet: usize,
        face: usize,
        reason: String,
    },
    #[error("triangulation is not a closed 3-manifold: {0}")]
    NotClosedManifold(String),
    #[error("unknown simplex {0}")]
    UnknownSimplex(SimplexId),
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("integer overflow in Smith normal form and arbitrary precision is disabled")]
    OverflowGuard,
    #[error("complex is disconnected")]
    DisconnectedComplex,
    #[error("triangle {tri} is not free along edge {edge} (black multiplicity {multiplicity})")]
    NotFree {
        tri: usize,
        edge: usize,
        multiplicity: usize,
    },
    #[error("edge {0} is not isolated")]
    NotIsolated(usize),
    #[error("not separating: {0}")]
    NotSeparating(String),
    #[error("edge {0} is not an inner edge of the polygon")]
    NotInner(usize),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("cannot write {path}: {message}")]
    Io { path: String, message: String },
    #[error("anomaly in {op}: {detail}")]
    Anomaly { op: String, detail: String },
}

impl Error {
    pub(crate) fn anomaly(op: &str, detail: impl Into<String>) -> Self {
        Error::Anomaly {
            op: op.to_string(),
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
