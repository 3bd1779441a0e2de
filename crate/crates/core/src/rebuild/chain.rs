use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::simplex::SimplexId;
use crate::spine::PaintState;

/// The two arcs of an edge ring between a pair of triangles on the edge.
/// `Upper` follows the ring's canonical direction from the first triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Upper,
    Lower,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Upper => "upper",
            Side::Lower => "lower",
        })
    }
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper" => Ok(Side::Upper),
            "lower" => Ok(Side::Lower),
            _ => Err(Error::InvalidParameters(format!("unknown side {s:?}"))),
        }
    }
}

/// Tetrahedra around an edge, consecutive ones sharing `triangles[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SChain {
    pub edge: usize,
    pub side: Side,
    pub tets: Vec<usize>,
    /// `triangles[i]` is shared by `tets[i]` and `tets[i + 1]`.
    pub triangles: Vec<usize>,
}

impl SChain {
    pub fn len(&self) -> usize {
        self.tets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tets.is_empty()
    }
}

/// Ring position of the single occurrence of `tri` as a ring face of `e`.
fn ring_position(s: &PaintState, e: usize, tri: usize) -> Result<usize> {
    let ring = &s.base().skeleton().edges[e].ring;
    let hits: Vec<usize> = (0..ring.len()).filter(|&i| ring[i].exit_triangle == tri).collect();
    match hits.as_slice() {
        [p] => Ok(*p),
        [] => Err(Error::UnknownSimplex(SimplexId::triangle(tri))),
        _ => Err(Error::NotSeparating(format!("triangle {tri} meets edge {e} more than once"))),
    }
}

/// The arc of the ring of `e` on `side`, from `ends.0` to `ends.1`.
pub fn edge_star_chain(s: &PaintState, e: SimplexId, side: Side, ends: (SimplexId, SimplexId)) -> Result<SChain> {
    let t = s.base();
    let e = t.check_id(e, 1)?;
    let a = t.check_id(ends.0, 2)?;
    let b = t.check_id(ends.1, 2)?;
    if a == b {
        return Err(Error::NotSeparating(format!("both ends are triangle {a}")));
    }
    let pa = ring_position(s, e, a)?;
    let pb = ring_position(s, e, b)?;
    let ring = &t.skeleton().edges[e].ring;
    let n = ring.len();
    let (tets, triangles): (Vec<usize>, Vec<usize>) = match side {
        Side::Upper => {
            let len = (pb + n - pa) % n;
            let tets = (1..=len).map(|k| ring[(pa + k) % n].tet).collect();
            let tris = (1..len).map(|k| ring[(pa + k) % n].exit_triangle).collect();
            (tets, tris)
        }
        Side::Lower => {
            let len = (pa + n - pb) % n;
            let tets = (0..len).map(|k| ring[(pa + n - k) % n].tet).collect();
            let tris = (1..len).map(|k| ring[(pa + n - k) % n].exit_triangle).collect();
            (tets, tris)
        }
    };
    let mut seen = tets.clone();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::NotSeparating(format!("the {side} arc of edge {e} repeats a tetrahedron")));
    }
    Ok(SChain {
        edge: e,
        side,
        tets,
        triangles,
    })
}
