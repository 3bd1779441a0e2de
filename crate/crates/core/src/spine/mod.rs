//! The black spine of a triangulation and its elementary collapses.
//!
//! Whitening a spanning tree of the dual graph turns the union of tetrahedra and
//! white triangles into one open 3-cell; the rest is the black spine. A free
//! triangle collapse whitens a triangle together with an edge it alone covers;
//! an isolated edge collapse whitens a dangling edge and its free end.

pub(crate) mod collapse;
mod invariants;
mod replay;
mod state;
mod trace;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub use collapse::{
    classify_triangles, collapse_all, collapse_free_triangle, collapse_isolated_edge, CollapseOutcome, TriangleClass,
};
pub use invariants::{check_invariants, InvariantFailure, InvariantReport};
pub use replay::{replay_trace, SUBDIVIDE_OP};
pub use state::PaintState;
pub use trace::{MoveTrace, PaintToken, TraceRecord};

use crate::error::{Error, Result};
use crate::simplex::SimplexId;
use crate::triangulation::Triangulation;

/// Order in which the dual spanning tree is grown.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    #[default]
    Bfs,
    Dfs,
    /// Breadth-first inside the star of the seed's lowest vertex, then breadth-first.
    Star,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Bfs => "bfs",
            Strategy::Dfs => "dfs",
            Strategy::Star => "star",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bfs" => Ok(Strategy::Bfs),
            "dfs" => Ok(Strategy::Dfs),
            "star" => Ok(Strategy::Star),
            _ => Err(Error::InvalidParameters(format!("unknown strategy {s:?}"))),
        }
    }
}

pub const BUILD_OP: &str = "build_initial_spine";

/// Neighbours of `tet` through its faces, by ascending triangle id.
fn dual_neighbours(t: &Triangulation, tet: usize) -> Vec<(usize, usize)> {
    let sk = t.skeleton();
    let mut out: Vec<(usize, usize)> = (0..4)
        .filter_map(|f| t.gluing(tet, f).map(|g| (sk.tet_triangles[tet][f], g.tet)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Paints the complement of a dual spanning tree black.
pub fn build_initial_spine(t: &Triangulation, seed_tet: SimplexId, strategy: Strategy) -> Result<PaintState> {
    build_initial_spine_arc(Arc::new(t.clone()), seed_tet, strategy)
}

pub fn build_initial_spine_arc(t: Arc<Triangulation>, seed_tet: SimplexId, strategy: Strategy) -> Result<PaintState> {
    let seed = t.check_id(seed_tet, 3)?;
    let n = t.tet_count();
    let mut seen = vec![false; n];
    let mut white = Vec::with_capacity(n.saturating_sub(1));
    seen[seed] = true;
    match strategy {
        Strategy::Bfs => {
            bfs(&t, VecDeque::from([seed]), &mut seen, &mut white, |_| true);
        }
        Strategy::Dfs => {
            let mut stack = vec![(seed, dual_neighbours(&t, seed), 0usize)];
            while let Some((tet, nbrs, i)) = stack.last_mut() {
                let _ = tet;
                if *i == nbrs.len() {
                    stack.pop();
                    continue;
                }
                let (f, next) = nbrs[*i];
                *i += 1;
                if !seen[next] {
                    seen[next] = true;
                    white.push(f);
                    stack.push((next, dual_neighbours(&t, next), 0));
                }
            }
        }
        Strategy::Star => {
            let sk = t.skeleton();
            let v = *sk.tet_vertices[seed].iter().min().expect("four vertices");
            let order = bfs(&t, VecDeque::from([seed]), &mut seen, &mut white, |x| {
                sk.tet_vertices[x].contains(&v)
            });
            bfs(&t, order.into(), &mut seen, &mut white, |_| true);
        }
    }
    let mut s = PaintState::all_black(t);
    for f in white {
        s.paint_triangle(f, false);
    }
    s.record(BUILD_OP, vec![seed.to_string(), strategy.to_string()]);
    Ok(s)
}

/// Breadth-first growth restricted to tetrahedra accepted by `allow`; returns
/// the visit order including the initial queue.
fn bfs(
    t: &Triangulation,
    mut queue: VecDeque<usize>,
    seen: &mut [bool],
    white: &mut Vec<usize>,
    allow: impl Fn(usize) -> bool,
) -> Vec<usize> {
    let mut order: Vec<usize> = queue.iter().copied().collect();
    while let Some(x) = queue.pop_front() {
        for (f, next) in dual_neighbours(t, x) {
            if !seen[next] && allow(next) {
                seen[next] = true;
                white.push(f);
                order.push(next);
                queue.push_back(next);
            }
        }
    }
    order
}

/// Exactly one black vertex and nothing else black.
pub fn is_point_spine(s: &PaintState) -> bool {
    s.is_point()
}
