use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{pachner_move, PachnerKind, Triangulation};
use crate::simplex::SimplexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScrambleConfig {
    /// Above this many tetrahedra only shrinking moves are drawn while any applies.
    pub tet_ceiling: usize,
    /// Draws per move before the move is skipped.
    pub retries: usize,
}

impl Default for ScrambleConfig {
    fn default() -> Self {
        ScrambleConfig {
            tet_ceiling: 64,
            retries: 32,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScrambleReport {
    pub applied: Vec<(PachnerKind, SimplexId)>,
    /// Move numbers that found no applicable draw within the retry budget.
    pub skipped: Vec<usize>,
}

/// Applies `n_moves` random Pachner moves with the default configuration.
pub fn scramble(t: &Triangulation, n_moves: usize, seed: u64) -> Triangulation {
    scramble_with(t, n_moves, seed, ScrambleConfig::default()).0
}

pub fn scramble_with(t: &Triangulation, n_moves: usize, seed: u64, config: ScrambleConfig) -> (Triangulation, ScrambleReport) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = t.clone();
    let mut report = ScrambleReport::default();
    for step in 0..n_moves {
        let mut done = false;
        for _ in 0..config.retries.max(1) {
            let shrinking = cur.tet_count() > config.tet_ceiling;
            let kinds: Vec<(PachnerKind, Vec<usize>)> = PachnerKind::ALL
                .iter()
                .map(|&k| (k, candidates(&cur, k)))
                .filter(|(_, c)| !c.is_empty())
                .collect();
            let preferred: Vec<&(PachnerKind, Vec<usize>)> = kinds
                .iter()
                .filter(|(k, _)| matches!(k, PachnerKind::ThreeTwo | PachnerKind::FourOne))
                .collect();
            let pool: Vec<&(PachnerKind, Vec<usize>)> = if shrinking && !preferred.is_empty() {
                preferred
            } else {
                kinds.iter().collect()
            };
            let Some(&&(kind, ref cands)) = pool.choose(&mut rng) else {
                break;
            };
            let target = SimplexId {
                dim: kind.target_dim(),
                index: cands[rng.gen_range(0..cands.len())],
            };
            if let Ok((next, _)) = pachner_move(&cur, kind, target) {
                cur = next;
                report.applied.push((kind, target));
                done = true;
                break;
            }
        }
        if !done {
            report.skipped.push(step);
        }
    }
    (cur, report)
}

/// Cheap necessary conditions; the move itself has the final say.
fn candidates(t: &Triangulation, kind: PachnerKind) -> Vec<usize> {
    let sk = t.skeleton();
    match kind {
        PachnerKind::OneFour => (0..t.tet_count()).collect(),
        PachnerKind::TwoThree => (0..t.triangle_count())
            .filter(|&f| {
                let s = &sk.triangles[f].sides;
                s.len() == 2 && s[0].0 != s[1].0
            })
            .collect(),
        PachnerKind::ThreeTwo => (0..t.edge_count())
            .filter(|&e| {
                let r = &sk.edges[e].ring;
                r.len() == 3 && r[0].tet != r[1].tet && r[1].tet != r[2].tet && r[0].tet != r[2].tet
            })
            .collect(),
        PachnerKind::FourOne => (0..t.vertex_count())
            .filter(|&v| sk.vertices[v].corners.len() == 4)
            .collect(),
    }
}
