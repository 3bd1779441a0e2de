//! Fundamental group presentations of 2-complexes.
//!
//! Generators are the edges outside a spanning tree of the 1-skeleton and each
//! triangle contributes its boundary word. A bounded Tietze pass then removes
//! generators. Only `generators = 0` certifies a trivial group; a nontrivial
//! abelianization certifies a nontrivial one; anything else is undecided.

use std::collections::VecDeque;

use super::chain::HomologyGroup;
use super::snf::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};
use crate::triangulation::Triangulation;

/// A 2-dimensional Δ-complex: edges with endpoints, triangles as closed edge paths.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Complex2 {
    pub vertex_count: usize,
    /// `(tail, head)` per edge.
    pub edges: Vec<[usize; 2]>,
    /// Boundary loop of each triangle: `(edge, traversed tail-to-head)`.
    pub triangles: Vec<[(usize, bool); 3]>,
}

impl Complex2 {
    /// From vertex lists; edges are oriented from the smaller to the larger vertex.
    pub fn from_simplices(vertex_count: usize, edges: &[[usize; 2]], triangles: &[[usize; 3]]) -> Result<Self> {
        let mut es: Vec<[usize; 2]> = edges.iter().map(|&[a, b]| [a.min(b), a.max(b)]).collect();
        es.sort_unstable();
        es.dedup();
        let find = |a: usize, b: usize| -> Result<(usize, bool)> {
            let key = [a.min(b), a.max(b)];
            let i = es
                .binary_search(&key)
                .map_err(|_| Error::InvalidParameters(format!("edge {key:?} missing")))?;
            Ok((i, a < b))
        };
        let mut tris = Vec::new();
        for &[a, b, c] in triangles {
            tris.push([find(a, b)?, find(b, c)?, find(c, a)?]);
        }
        Ok(Complex2 {
            vertex_count,
            edges: es,
            triangles: tris,
        })
    }

    /// Subcomplex of a triangulation's 2-skeleton selected by masks.
    pub fn of_subcomplex(t: &Triangulation, verts: &[bool], edges: &[bool], tris: &[bool]) -> Self {
        let sk = t.skeleton();
        let mut vid = vec![usize::MAX; verts.len()];
        let mut nv = 0;
        for (i, &m) in verts.iter().enumerate() {
            if m {
                vid[i] = nv;
                nv += 1;
            }
        }
        let mut eid = vec![usize::MAX; edges.len()];
        let mut out = Complex2 {
            vertex_count: nv,
            ..Default::default()
        };
        for (i, info) in sk.edges.iter().enumerate() {
            if edges[i] {
                eid[i] = out.edges.len();
                out.edges.push([vid[info.ends[0]], vid[info.ends[1]]]);
            }
        }
        for (i, info) in sk.triangles.iter().enumerate() {
            if tris[i] {
                let b = info.boundary;
                // Loop v0 -> v1 -> v2 -> v0 runs along sides 2, 0, 1; a side is traversed
                // along its canonical direction exactly when its coefficient is +1.
                out.triangles.push([2, 0, 1].map(|k| (eid[b[k].0], b[k].1 > 0)));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: usize,
    /// Words in `±(g + 1)`.
    pub relators: Vec<Vec<i64>>,
}

impl GroupPresentation {
    /// Abelianization `ℤ^b ⊕ torsion`.
    pub fn abelianization(&self) -> Result<HomologyGroup> {
        if self.generators == 0 {
            return Ok(HomologyGroup::default());
        }
        let mut m = IntMatrix::zeros(self.relators.len(), self.generators);
        for (i, r) in self.relators.iter().enumerate() {
            for &x in r {
                m.add(i, x.unsigned_abs() as usize - 1, x.signum());
            }
        }
        let snf = smith_normal_form(&m)?;
        Ok(HomologyGroup {
            betti: self.generators - snf.rank,
            torsion: snf.factors.into_iter().filter(|&f| f > 1).collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pi1Status {
    /// All generators eliminated.
    Trivial,
    /// Abelianization is nontrivial.
    NotSimplyConnected(HomologyGroup),
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi1Result {
    pub presentation: GroupPresentation,
    pub status: Pi1Status,
    /// Rewrite steps spent by the simplification pass.
    pub steps: usize,
}

pub const DEFAULT_REWRITE_BUDGET: usize = 10_000;

pub fn pi1_presentation(k: &Complex2) -> Result<Pi1Result> {
    pi1_presentation_with_budget(k, DEFAULT_REWRITE_BUDGET)
}

pub fn pi1_presentation_with_budget(k: &Complex2, budget: usize) -> Result<Pi1Result> {
    let raw = raw_presentation(k)?;
    let (presentation, steps) = simplify(raw, budget);
    let status = if presentation.generators == 0 {
        Pi1Status::Trivial
    } else {
        let ab = presentation.abelianization()?;
        if ab.is_trivial() {
            Pi1Status::Indeterminate
        } else {
            Pi1Status::NotSimplyConnected(ab)
        }
    };
    Ok(Pi1Result {
        presentation,
        status,
        steps,
    })
}

fn raw_presentation(k: &Complex2) -> Result<GroupPresentation> {
    if k.vertex_count == 0 {
        return Err(Error::DisconnectedComplex);
    }
    let mut adj = vec![Vec::new(); k.vertex_count];
    for (i, &[a, b]) in k.edges.iter().enumerate() {
        adj[a].push(i);
        adj[b].push(i);
    }
    let mut seen = vec![false; k.vertex_count];
    let mut tree = vec![false; k.edges.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &e in &adj[v] {
            let [a, b] = k.edges[e];
            let w = if a == v { b } else { a };
            if !seen[w] {
                seen[w] = true;
                tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::DisconnectedComplex);
    }
    let mut gen_of = vec![usize::MAX; k.edges.len()];
    let mut generators = 0;
    for e in 0..k.edges.len() {
        if !tree[e] {
            gen_of[e] = generators;
            generators += 1;
        }
    }
    let relators = k
        .triangles
        .iter()
        .map(|loop_| {
            loop_
                .iter()
                .filter(|(e, _)| !tree[*e])
                .map(|&(e, fwd)| {
                    let g = gen_of[e] as i64 + 1;
                    if fwd {
                        g
                    } else {
                        -g
                    }
                })
                .collect()
        })
        .collect();
    Ok(GroupPresentation { generators, relators })
}

fn reduce(word: &mut Vec<i64>) {
    let mut out: Vec<i64> = Vec::with_capacity(word.len());
    for &x in word.iter() {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    // Cyclic reduction.
    let mut lo = 0;
    let mut hi = out.len();
    while hi - lo >= 2 && out[lo] == -out[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    *word = out[lo..hi].to_vec();
}

/// Removes generator `g` (1-based) by substituting `replacement` for it.
fn substitute(p: &mut GroupPresentation, g: i64, replacement: &[i64]) {
    let inverse: Vec<i64> = replacement.iter().rev().map(|&x| -x).collect();
    for r in p.relators.iter_mut() {
        let mut out = Vec::with_capacity(r.len());
        for &x in r.iter() {
            if x == g {
                out.extend_from_slice(replacement);
            } else if x == -g {
                out.extend_from_slice(&inverse);
            } else {
                out.push(x);
            }
        }
        *r = out;
    }
    // Renumber generators above g.
    for r in p.relators.iter_mut() {
        for x in r.iter_mut() {
            if x.abs() > g {
                *x -= x.signum();
            }
        }
    }
    p.generators -= 1;
}

fn simplify(mut p: GroupPresentation, budget: usize) -> (GroupPresentation, usize) {
    let mut steps = 0;
    while steps < budget {
        for r in p.relators.iter_mut() {
            reduce(r);
        }
        p.relators.retain(|r| !r.is_empty());
        p.relators.sort_by_key(Vec::len);
        p.relators.dedup();
        // A relator containing some generator exactly once lets us solve for it.
        let mut pick = None;
        'outer: for (i, r) in p.relators.iter().enumerate() {
            for (pos, &x) in r.iter().enumerate() {
                if r.iter().filter(|y| y.abs() == x.abs()).count() == 1 {
                    pick = Some((i, pos));
                    break 'outer;
                }
            }
        }
        let Some((i, pos)) = pick else { break };
        let r = p.relators.remove(i);
        let x = r[pos];
        // r = u x v = 1  =>  x = u^-1 v^-1 (rotated: x = (v u)^-1).
        let mut vu: Vec<i64> = r[pos + 1..].to_vec();
        vu.extend_from_slice(&r[..pos]);
        let solved: Vec<i64> = vu.iter().rev().map(|&y| -y).collect();
        let (g, replacement) = if x > 0 {
            (x, solved)
        } else {
            (-x, solved.iter().rev().map(|&y| -y).collect())
        };
        substitute(&mut p, g, &replacement);
        steps += 1;
    }
    for r in p.relators.iter_mut() {
        reduce(r);
    }
    p.relators.retain(|r| !r.is_empty());
    (p, steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_is_trivial() {
        let k = Complex2 {
            vertex_count: 1,
            ..Default::default()
        };
        let r = pi1_presentation(&k).unwrap();
        assert_eq!(r.presentation.generators, 0);
        assert_eq!(r.status, Pi1Status::Trivial);
    }

    #[test]
    fn hollow_triangle_is_not_simply_connected() {
        let k = Complex2::from_simplices(3, &[[0, 1], [1, 2], [0, 2]], &[]).unwrap();
        let r = pi1_presentation(&k).unwrap();
        assert_eq!(r.presentation.generators, 1);
        assert!(r.presentation.relators.is_empty());
        assert_eq!(r.status, Pi1Status::NotSimplyConnected(HomologyGroup::free(1)));
    }

    #[test]
    fn filled_triangle_is_trivial() {
        let k = Complex2::from_simplices(3, &[[0, 1], [1, 2], [0, 2]], &[[0, 1, 2]]).unwrap();
        assert_eq!(pi1_presentation(&k).unwrap().status, Pi1Status::Trivial);
    }

    #[test]
    fn disconnected_is_an_error() {
        let k = Complex2::from_simplices(3, &[[0, 1]], &[]).unwrap();
        assert_eq!(pi1_presentation(&k).unwrap_err(), Error::DisconnectedComplex);
    }

    #[test]
    fn projective_plane_torsion() {
        // One vertex, one loop a, one disk with boundary a a.
        let k = Complex2 {
            vertex_count: 1,
            edges: vec![[0, 0]],
            triangles: vec![],
        };
        let mut p = raw_presentation(&k).unwrap();
        p.relators.push(vec![1, 1]);
        let ab = p.abelianization().unwrap();
        assert_eq!(ab.torsion, vec![2]);
    }

    #[test]
    fn substitution_eliminates_chain() {
        let p = GroupPresentation {
            generators: 3,
            relators: vec![vec![1, -2], vec![2, 3, -1], vec![3, 3, 1]],
        };
        let (q, _) = simplify(p, 100);
        assert_eq!(q.generators, 0);
    }
}
