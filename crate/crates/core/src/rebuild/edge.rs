use std::collections::BTreeSet;

use super::chain::{edge_star_chain, SChain, Side};
use super::work::Rebuild;
use crate::error::{Error, Result};
use crate::simplex::SimplexId;
use crate::spine::PaintState;

pub const CLEAR_EDGE_OP: &str = "clear_edge";
pub const REPAIR_OP: &str = "repair_dead_ends";

/// Black triangles on `e` other than the keep pair.
fn m_triangles(s: &PaintState, e: usize, keep: (usize, usize)) -> Vec<usize> {
    let mut out: Vec<usize> = s.base().skeleton().edges[e]
        .triangles
        .iter()
        .copied()
        .filter(|&f| s.is_black_triangle(f) && f != keep.0 && f != keep.1)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn check_keep(s: &PaintState, e: SimplexId, keep: (SimplexId, SimplexId)) -> Result<(usize, (usize, usize))> {
    let t = s.base();
    let e = t.check_id(e, 1)?;
    let mut ids = [0; 2];
    for (k, id) in [keep.0, keep.1].into_iter().enumerate() {
        let f = t.check_id(id, 2)?;
        if t.skeleton().triangles[f].edge_multiplicity(e) == 0 {
            return Err(Error::UnknownSimplex(id));
        }
        if !s.is_black_triangle(f) {
            return Err(Error::PreconditionUnmet(format!("keep triangle {f} is white")));
        }
        ids[k] = f;
    }
    if ids[0] == ids[1] {
        return Err(Error::NotSeparating(format!("both keep triangles are {}", ids[0])));
    }
    Ok((e, (ids[0], ids[1])))
}

/// Makes `keep` the only black triangles on `e`: on each side of the keep pair
/// the ring triangles after the first m-triangle are whitened, the other faces of
/// the tetrahedra behind them blackened, and the cell repaired.
pub fn clear_edge(s: &PaintState, e: SimplexId, keep: (SimplexId, SimplexId)) -> Result<PaintState> {
    clear_edge_protected(s, e, keep, &[])
}

pub(crate) fn clear_edge_protected(
    s: &PaintState,
    e: SimplexId,
    keep: (SimplexId, SimplexId),
    protected: &[bool],
) -> Result<PaintState> {
    let (e, keep) = check_keep(s, e, keep)?;
    if s.edge_multiplicity(e) < 2 {
        return Err(Error::PreconditionUnmet(format!("edge {e} has black multiplicity {}", s.edge_multiplicity(e))));
    }
    if m_triangles(s, e, keep).is_empty() {
        return Ok(s.clone());
    }
    let mut w = Rebuild::new(s, CLEAR_EDGE_OP, protected);
    clear_edge_in(&mut w, e, keep)?;
    w.finish(vec![e.to_string(), keep.0.to_string(), keep.1.to_string()])
}

/// The body of [`clear_edge`], run inside a larger move.
pub(crate) fn clear_edge_in(w: &mut Rebuild, e: usize, keep: (usize, usize)) -> Result<()> {
    if m_triangles(&w.s, e, keep).is_empty() {
        return Ok(());
    }
    let ends = (SimplexId::triangle(keep.0), SimplexId::triangle(keep.1));
    let chains = [
        edge_star_chain(&w.s, SimplexId::edge(e), Side::Upper, ends)?,
        edge_star_chain(&w.s, SimplexId::edge(e), Side::Lower, ends)?,
    ];
    let saved = w.save_masks();
    w.protect(keep.0);
    w.protect(keep.1);
    for f in w.s.base().skeleton().edges[e].triangles.clone() {
        w.freeze(f);
    }
    for chain in &chains {
        let plans = plan_chain(w, e, chain, keep);
        let last = plans.len().saturating_sub(1);
        for (k, plan) in plans.into_iter().enumerate() {
            w.tick()?;
            let snap = w.snapshot();
            for &f in &plan.whiten {
                w.whiten(f);
            }
            for &tet in &plan.local {
                w.mark_local(tet);
            }
            for &f in &plan.blacken {
                w.blacken(f);
            }
            w.repair(plan.root)?;
            if k == last || w.is_cell() {
                break;
            }
            w.rollback(snap);
        }
    }
    let left = m_triangles(&w.s, e, keep);
    if !left.is_empty() {
        return Err(w.anomaly(format!("edge {e} still carries m-triangles {left:?}")));
    }
    w.restore_masks(saved);
    Ok(())
}

struct ChainPlan {
    whiten: Vec<usize>,
    blacken: Vec<usize>,
    local: Vec<usize>,
    root: usize,
}

/// Repaint of one chain that moves its black triangles out of the star of `e`.
///
/// Pushing toward `keep.1` whitens from the first black chain triangle on and
/// blackens the outer faces of the tetrahedra beyond it; pushing toward
/// `keep.0` mirrors this from the last black one. New black faces on an edge
/// that already carries two protected triangles are what the next clearing
/// would have to undo, so the direction adding fewer of them comes first, then
/// the one blackening fewer faces, then the push toward `keep.1`. Empty when
/// the chain has no black triangle.
fn plan_chain(w: &Rebuild, e: usize, chain: &SChain, keep: (usize, usize)) -> Vec<ChainPlan> {
    let black: Vec<usize> = (0..chain.triangles.len()).filter(|&i| w.s.is_black_triangle(chain.triangles[i])).collect();
    let (Some(&j), Some(&k)) = (black.first(), black.last()) else {
        return Vec::new();
    };
    let sk = w.s.base().skeleton();
    let outer = |tets: &[usize]| -> Vec<usize> {
        let faces: BTreeSet<usize> = tets.iter().flat_map(|&tet| sk.tet_triangles[tet]).collect();
        faces
            .into_iter()
            .filter(|f| !chain.triangles.contains(f) && *f != keep.0 && *f != keep.1)
            .collect()
    };
    let forward = ChainPlan {
        whiten: chain.triangles[j..].to_vec(),
        blacken: outer(&chain.tets[j + 1..]),
        local: chain.tets[j..].to_vec(),
        root: chain.tets[j],
    };
    let backward = ChainPlan {
        whiten: chain.triangles[..=k].to_vec(),
        blacken: outer(&chain.tets[..=k]),
        local: chain.tets[..=k + 1].to_vec(),
        root: chain.tets[k + 1],
    };
    let cost = |plan: &ChainPlan| {
        let fresh: Vec<usize> = plan.blacken.iter().copied().filter(|&f| !w.s.is_black_triangle(f)).collect();
        let spoiled = fresh
            .iter()
            .flat_map(|&f| sk.triangles[f].edges())
            .filter(|&x| x != e && w.protected_on(x) >= 2)
            .count();
        (spoiled, fresh.len())
    };
    if cost(&backward) < cost(&forward) {
        vec![backward, forward]
    } else {
        vec![forward, backward]
    }
}

/// Reconnects tetrahedra cut off from tetrahedron 0 by whitening, per dead end,
/// the lowest-id black triangle on its frontier that is not protected.
pub fn repair_dead_ends(s: &PaintState, protected: &BTreeSet<usize>) -> Result<PaintState> {
    let mut mask = vec![false; s.base().triangle_count()];
    for &f in protected {
        s.base().check_id(SimplexId::triangle(f), 2)?;
        mask[f] = true;
    }
    let mut w = Rebuild::new(s, REPAIR_OP, &mask);
    while w.reconnect_dead_end(0)? {
        w.tick()?;
    }
    Ok(w.finish_unchecked(Vec::new()))
}
