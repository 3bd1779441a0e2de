use std::fmt;

/// A simplex of a [`crate::Triangulation`], addressed by dimension and dense index.
///
/// Indices are only meaningful for the triangulation they were read from; Pachner
/// moves produce a fresh triangulation and renumber everything.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SimplexId {
    pub dim: u8,
    pub index: usize,
}

impl SimplexId {
    pub fn vertex(index: usize) -> Self {
        SimplexId { dim: 0, index }
    }
    pub fn edge(index: usize) -> Self {
        SimplexId { dim: 1, index }
    }
    pub fn triangle(index: usize) -> Self {
        SimplexId { dim: 2, index }
    }
    pub fn tet(index: usize) -> Self {
        SimplexId { dim: 3, index }
    }
}

impl fmt::Display for SimplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.dim {
            0 => "v",
            1 => "e",
            2 => "t",
            3 => "T",
            _ => "?",
        };
        write!(f, "{tag}{}", self.index)
    }
}
