//! Bistellar (Pachner) moves.
//!
//! Every move cuts out a ball made of distinct tetrahedra, labels the corners of
//! that ball abstractly, and fills it back in with a different set of labelled
//! tetrahedra sharing the same boundary. Gluings across the ball's boundary are
//! transported through the labels, so faces of the ball that were glued to each
//! other stay glued.

use std::collections::HashMap;
use std::fmt;

use super::{FaceGluing, SurfaceComplex, Triangulation};
use crate::error::{Error, Result};
use crate::perm::Perm4;
use crate::simplex::SimplexId;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum PachnerKind {
    /// Tetrahedron to four tetrahedra around a new vertex.
    OneFour,
    /// Two tetrahedra sharing a triangle to three around a new edge.
    TwoThree,
    /// Three tetrahedra around an edge to two sharing a new triangle.
    ThreeTwo,
    /// Four tetrahedra around a degree-4 vertex to one.
    FourOne,
}

impl PachnerKind {
    pub const ALL: [PachnerKind; 4] = [
        PachnerKind::OneFour,
        PachnerKind::TwoThree,
        PachnerKind::ThreeTwo,
        PachnerKind::FourOne,
    ];

    /// Dimension of the simplex the move is centred on.
    pub fn target_dim(self) -> u8 {
        match self {
            PachnerKind::OneFour => 3,
            PachnerKind::TwoThree => 2,
            PachnerKind::ThreeTwo => 1,
            PachnerKind::FourOne => 0,
        }
    }

    /// Change in tetrahedron count.
    pub fn tet_delta(self) -> isize {
        match self {
            PachnerKind::OneFour => 3,
            PachnerKind::TwoThree => 1,
            PachnerKind::ThreeTwo => -1,
            PachnerKind::FourOne => -3,
        }
    }
}

impl fmt::Display for PachnerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PachnerKind::OneFour => "1-4",
            PachnerKind::TwoThree => "2-3",
            PachnerKind::ThreeTwo => "3-2",
            PachnerKind::FourOne => "4-1",
        })
    }
}

impl std::str::FromStr for PachnerKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1-4" => Ok(PachnerKind::OneFour),
            "2-3" => Ok(PachnerKind::TwoThree),
            "3-2" => Ok(PachnerKind::ThreeTwo),
            "4-1" => Ok(PachnerKind::FourOne),
            _ => Err(Error::InvalidParameters(format!("unknown Pachner move {s:?}"))),
        }
    }
}

/// Where the tetrahedra of the old triangulation ended up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdCorrespondence {
    /// `tets[old]` is the new index of a surviving tetrahedron, `None` if it was replaced.
    pub tets: Vec<Option<usize>>,
    /// Indices of the tetrahedra created by the move.
    pub created: Vec<usize>,
}

pub fn pachner_move(t: &Triangulation, kind: PachnerKind, target: SimplexId) -> Result<(Triangulation, IdCorrespondence)> {
    let idx = t.check_id(target, kind.target_dim())?;
    let (old, new) = match kind {
        PachnerKind::OneFour => one_four(idx),
        PachnerKind::TwoThree => two_three(t, idx)?,
        PachnerKind::ThreeTwo => three_two(t, idx)?,
        PachnerKind::FourOne => four_one(t, idx)?,
    };
    let out = replace_region(t, &old, &new)?;
    out.0
        .require_closed_manifold()
        .map_err(|e| Error::MoveNotApplicable(format!("{kind} on {target} breaks the manifold: {e}")))?;
    Ok(out)
}

type Labels = [usize; 4];

fn one_four(tet: usize) -> (Vec<(usize, Labels)>, Vec<Labels>) {
    let new = (0..4)
        .map(|k| {
            let mut l = [0, 1, 2, 3];
            l[k] = 4;
            l
        })
        .collect();
    (vec![(tet, [0, 1, 2, 3])], new)
}

fn two_three(t: &Triangulation, tri: usize) -> Result<(Vec<(usize, Labels)>, Vec<Labels>)> {
    let info = &t.skeleton().triangles[tri];
    let [(a, fa), (b, _)] = info.sides[..] else {
        return Err(Error::MoveNotApplicable(format!("triangle {tri} is a boundary face")));
    };
    if a == b {
        return Err(Error::MoveNotApplicable(format!("triangle {tri} has one tetrahedron on both sides")));
    }
    let p = t.gluing(a, fa).expect("glued face").perm;
    let mut la = [0; 4];
    let mut lb = [0; 4];
    let mut next = 0;
    for x in 0..4 {
        if x == fa {
            la[x] = 3;
            lb[p.apply(x)] = 4;
        } else {
            la[x] = next;
            lb[p.apply(x)] = next;
            next += 1;
        }
    }
    let new = vec![[0, 1, 3, 4], [0, 2, 3, 4], [1, 2, 3, 4]];
    Ok((vec![(a, la), (b, lb)], new))
}

fn three_two(t: &Triangulation, edge: usize) -> Result<(Vec<(usize, Labels)>, Vec<Labels>)> {
    let info = &t.skeleton().edges[edge];
    if !info.closed || info.self_reversed || info.ring.len() != 3 {
        return Err(Error::MoveNotApplicable(format!(
            "edge {edge} has ring length {}, need 3",
            info.ring.len()
        )));
    }
    let tets: Vec<usize> = info.ring.iter().map(|s| s.tet).collect();
    if tets[0] == tets[1] || tets[1] == tets[2] || tets[0] == tets[2] {
        return Err(Error::MoveNotApplicable(format!("ring of edge {edge} repeats a tetrahedron")));
    }
    // Slot k carries apex c = 2 + k; its d is the apex of the previous slot.
    let old = info
        .ring
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let mut l = [0; 4];
            l[s.a] = 0;
            l[s.b] = 1;
            l[s.c] = 2 + k;
            l[s.d] = 2 + (k + 2) % 3;
            (s.tet, l)
        })
        .collect();
    Ok((old, vec![[0, 2, 3, 4], [1, 2, 3, 4]]))
}

fn four_one(t: &Triangulation, v: usize) -> Result<(Vec<(usize, Labels)>, Vec<Labels>)> {
    let sk = t.skeleton();
    let corners = &sk.vertices[v].corners;
    let reject = |why: &str| Err(Error::MoveNotApplicable(format!("vertex {v} {why}")));
    if corners.len() != 4 {
        return reject("does not have degree 4");
    }
    let mut tets: Vec<usize> = corners.iter().map(|c| c.0).collect();
    tets.sort_unstable();
    tets.dedup();
    if tets.len() != 4 {
        return reject("meets a tetrahedron more than once");
    }
    let link = SurfaceComplex::vertex_link(t, v);
    if link.vertices.len() != 4 || link.edges.len() != 6 || !link.is_sphere() {
        return reject("does not have a tetrahedral link");
    }
    let mut old = Vec::new();
    let mut seen = Vec::new();
    for (tri, &(tet, lv)) in link.triangles.iter().zip(corners) {
        let mut l = [4; 4];
        let others: Vec<usize> = (0..4).filter(|&w| w != lv).collect();
        for (k, &w) in others.iter().enumerate() {
            l[w] = tri.vertices[k];
        }
        let mut key = tri.vertices;
        key.sort_unstable();
        if key[0] == key[1] || key[1] == key[2] || seen.contains(&key) {
            return reject("does not have a tetrahedral link");
        }
        seen.push(key);
        old.push((tet, l));
    }
    Ok((old, vec![[0, 1, 2, 3]]))
}

pub(super) fn face_key(l: &Labels, f: usize) -> [usize; 3] {
    let mut k = [0; 3];
    let mut i = 0;
    for (x, &lab) in l.iter().enumerate() {
        if x != f {
            k[i] = lab;
            i += 1;
        }
    }
    k.sort_unstable();
    k
}

/// Permutation sending each local vertex of `from` to the local vertex of `to`
/// with the same label, and `from_face` to `to_face`.
pub(super) fn label_map(from: &Labels, from_face: usize, to: &Labels, to_face: usize) -> Perm4 {
    let mut img = [0u8; 4];
    for x in 0..4 {
        img[x] = if x == from_face {
            to_face as u8
        } else {
            to.iter().position(|&l| l == from[x]).expect("shared label") as u8
        };
    }
    Perm4::from_images(img).expect("labels form a bijection")
}

pub(crate) fn replace_region(
    t: &Triangulation,
    old: &[(usize, Labels)],
    new: &[Labels],
) -> Result<(Triangulation, IdCorrespondence)> {
    let n = t.tet_count();
    let mut old_pos: HashMap<usize, usize> = HashMap::new();
    for (i, &(tet, _)) in old.iter().enumerate() {
        if old_pos.insert(tet, i).is_some() {
            return Err(Error::MoveNotApplicable(format!("tetrahedron {tet} appears twice in the region")));
        }
    }
    let mut tets = vec![None; n];
    let mut kept = 0;
    for (tet, slot) in tets.iter_mut().enumerate() {
        if !old_pos.contains_key(&tet) {
            *slot = Some(kept);
            kept += 1;
        }
    }
    let created: Vec<usize> = (kept..kept + new.len()).collect();

    let mut old_faces: HashMap<[usize; 3], (usize, usize)> = HashMap::new();
    for (i, (_, l)) in old.iter().enumerate() {
        for f in 0..4 {
            old_faces.insert(face_key(l, f), (i, f));
        }
    }
    let mut new_faces: HashMap<[usize; 3], Vec<(usize, usize)>> = HashMap::new();
    for (j, l) in new.iter().enumerate() {
        for f in 0..4 {
            new_faces.entry(face_key(l, f)).or_default().push((j, f));
        }
    }
    // Boundary face of the region (as an old face) to the new face replacing it.
    let replacement = |i: usize, f: usize| -> Result<(usize, usize)> {
        match new_faces.get(&face_key(&old[i].1, f)).map(Vec::as_slice) {
            Some(&[jf]) => Ok(jf),
            _ => Err(Error::MoveNotApplicable("region boundary does not match".into())),
        }
    };

    let mut gluings: Vec<[Option<FaceGluing>; 4]> = vec![[None; 4]; kept + new.len()];
    for (tet, row) in t.gluings().iter().enumerate() {
        let Some(nt) = tets[tet] else { continue };
        for (f, g) in row.iter().enumerate() {
            gluings[nt][f] = g.map(|g| match old_pos.get(&g.tet) {
                None => Ok(FaceGluing {
                    tet: tets[g.tet].expect("surviving"),
                    perm: g.perm,
                }),
                Some(&i) => {
                    let fo = g.perm.apply(f);
                    let (j, fj) = replacement(i, fo)?;
                    Ok(FaceGluing {
                        tet: created[j],
                        perm: label_map(&old[i].1, fo, &new[j], fj).compose(g.perm),
                    })
                }
            })
            .transpose()?;
        }
    }
    for (j, l) in new.iter().enumerate() {
        for f in 0..4 {
            let key = face_key(l, f);
            let twins = &new_faces[&key];
            let gluing = if twins.len() == 2 {
                let &(j2, f2) = twins.iter().find(|&&x| x != (j, f)).expect("two sides");
                Some(FaceGluing {
                    tet: created[j2],
                    perm: label_map(l, f, &new[j2], f2),
                })
            } else {
                let &(i, fo) = old_faces
                    .get(&key)
                    .ok_or_else(|| Error::MoveNotApplicable("region boundary does not match".into()))?;
                let to_old = label_map(l, f, &old[i].1, fo);
                match t.gluing(old[i].0, fo) {
                    None => None,
                    Some(g) => match old_pos.get(&g.tet) {
                        None => Some(FaceGluing {
                            tet: tets[g.tet].expect("surviving"),
                            perm: g.perm.compose(to_old),
                        }),
                        Some(&i2) => {
                            let f2 = g.perm.apply(fo);
                            let (j2, fj2) = replacement(i2, f2)?;
                            Some(FaceGluing {
                                tet: created[j2],
                                perm: label_map(&old[i2].1, f2, &new[j2], fj2).compose(g.perm).compose(to_old),
                            })
                        }
                    },
                }
            };
            gluings[created[j]][f] = gluing;
        }
    }
    let result = Triangulation::from_gluings(gluings)?;
    Ok((result, IdCorrespondence { tets, created }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::{generate, CensusKind};

    fn s3() -> Triangulation {
        generate(CensusKind::Boundary4Simplex).unwrap()
    }

    #[test]
    fn one_four_adds_three() {
        let (t, corr) = pachner_move(&s3(), PachnerKind::OneFour, SimplexId::tet(2)).unwrap();
        assert_eq!(t.counts(), (6, 14, 16, 8));
        assert_eq!(corr.tets, vec![Some(0), Some(1), None, Some(2), Some(3)]);
        assert_eq!(corr.created, vec![4, 5, 6, 7]);
    }

    #[test]
    fn one_four_then_four_one_round_trips_counts() {
        let (t, _) = pachner_move(&s3(), PachnerKind::OneFour, SimplexId::tet(0)).unwrap();
        let v = (0..t.vertex_count())
            .find(|&v| t.skeleton().vertices[v].corners.len() == 4)
            .unwrap();
        let (back, _) = pachner_move(&t, PachnerKind::FourOne, SimplexId::vertex(v)).unwrap();
        assert_eq!(back.counts(), (5, 10, 10, 5));
    }

    #[test]
    fn two_three_and_back() {
        let (t, _) = pachner_move(&s3(), PachnerKind::TwoThree, SimplexId::triangle(0)).unwrap();
        assert_eq!(t.tet_count(), 6);
        let e = (0..t.edge_count())
            .find(|&e| t.skeleton().edges[e].ring.len() == 3)
            .unwrap();
        let (u, _) = pachner_move(&t, PachnerKind::ThreeTwo, SimplexId::edge(e)).unwrap();
        assert_eq!(u.tet_count(), 5);
    }

    #[test]
    fn three_two_needs_ring_of_three() {
        let (t, _) = pachner_move(&s3(), PachnerKind::TwoThree, SimplexId::triangle(0)).unwrap();
        let e = (0..t.edge_count())
            .find(|&e| t.skeleton().edges[e].ring.len() == 4)
            .unwrap();
        assert!(matches!(
            pachner_move(&t, PachnerKind::ThreeTwo, SimplexId::edge(e)),
            Err(Error::MoveNotApplicable(_))
        ));
    }

    #[test]
    fn wrong_dimension_is_unknown_simplex() {
        assert_eq!(
            pachner_move(&s3(), PachnerKind::OneFour, SimplexId::edge(0)).unwrap_err(),
            Error::UnknownSimplex(SimplexId::edge(0))
        );
    }

    #[test]
    fn kinds_parse_and_print() {
        for k in PachnerKind::ALL {
            assert_eq!(k.to_string().parse::<PachnerKind>().unwrap(), k);
        }
    }
}
