//! Bundled triangulations.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use super::pachner::{face_key, label_map};
use super::{FaceGluing, Triangulation};
use crate::error::{Error, Result};
use crate::perm::Perm4;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CensusKind {
    /// Boundary of the 4-simplex: five tetrahedra, the 4-subsets of `{0..4}`.
    Boundary4Simplex,
    /// Two tetrahedra, one vertex.
    MinimalS3,
    /// Lens space `L(p, q)`.
    Lens { p: u64, q: u64 },
}

impl fmt::Display for CensusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CensusKind::Boundary4Simplex => f.write_str("boundary4simplex"),
            CensusKind::MinimalS3 => f.write_str("minimal-s3"),
            CensusKind::Lens { p, q } => write!(f, "lens:{p},{q}"),
        }
    }
}

impl FromStr for CensusKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "boundary4simplex" => return Ok(CensusKind::Boundary4Simplex),
            "minimal-s3" => return Ok(CensusKind::MinimalS3),
            _ => {}
        }
        let bad = || Error::InvalidParameters(format!("unknown census member {s:?}"));
        let rest = s
            .strip_prefix("lens:")
            .or_else(|| s.strip_prefix("lens(").and_then(|r| r.strip_suffix(')')))
            .ok_or_else(bad)?;
        let (p, q) = rest.split_once(',').ok_or_else(bad)?;
        Ok(CensusKind::Lens {
            p: p.trim().parse().map_err(|_| bad())?,
            q: q.trim().parse().map_err(|_| bad())?,
        })
    }
}

pub fn generate(kind: CensusKind) -> Result<Triangulation> {
    match kind {
        CensusKind::Boundary4Simplex => boundary_4_simplex(),
        CensusKind::MinimalS3 => minimal_s3(),
        CensusKind::Lens { p, q } => lens(p, q),
    }
}

fn boundary_4_simplex() -> Result<Triangulation> {
    let mut tets = Vec::new();
    for skip in (0..5).rev() {
        let mut t = [0; 4];
        let mut k = 0;
        for v in 0..5 {
            if v != skip {
                t[k] = v;
                k += 1;
            }
        }
        tets.push(t);
    }
    Triangulation::from_simplicial(&tets)
}

fn minimal_s3() -> Result<Triangulation> {
    Triangulation::parse(MINIMAL_S3)
}

/// Found by exhaustive search over two-tetrahedron gluing tables; the tests
/// re-check it is a valid one-vertex homology sphere.
const MINIMAL_S3: &str = "tetrahedra 2
tet 0: 0/1023 0/1023 1/1203 1/0231
tet 1: 0/2013 0/0312 1/0132 1/0132
";

/// Lens space as `p` tetrahedra around the axis of a bipyramid, the upper faces
/// glued to the lower ones after a twist by `q` steps.
fn lens(p: u64, q: u64) -> Result<Triangulation> {
    if p < 2 || q < 1 || q >= p || p.gcd(&q) != 1 {
        return Err(Error::InvalidParameters(format!(
            "lens({p},{q}) needs p >= 2, 1 <= q < p, gcd(p, q) = 1"
        )));
    }
    let (p, q) = (p as usize, q as usize);
    // Local vertices: 0 north pole, 1 south pole, 2 and 3 consecutive equator points.
    let around = Perm4::from_images([0, 1, 3, 2]).expect("perm");
    let twist = Perm4::from_images([1, 0, 2, 3]).expect("perm");
    let mut table = Vec::with_capacity(p);
    for i in 0..p {
        table.push([
            ((i + p - q) % p, twist),
            ((i + q) % p, twist),
            ((i + 1) % p, around),
            ((i + p - 1) % p, around),
        ]);
    }
    Triangulation::from_closed_gluings(table)
}

impl Triangulation {
    /// Glues tetrahedra given by vertex labels along faces with equal label sets.
    /// Each label triple must occur on exactly two tetrahedra.
    pub fn from_simplicial(tets: &[[usize; 4]]) -> Result<Self> {
        let mut faces: HashMap<[usize; 3], Vec<(usize, usize)>> = HashMap::new();
        for (i, l) in tets.iter().enumerate() {
            let mut s = *l;
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameters(format!("tetrahedron {i} repeats a vertex")));
            }
            for f in 0..4 {
                faces.entry(face_key(l, f)).or_default().push((i, f));
            }
        }
        let mut gluings = vec![[None; 4]; tets.len()];
        for (key, sides) in &faces {
            let &[(a, fa), (b, fb)] = sides.as_slice() else {
                return Err(Error::InvalidParameters(format!(
                    "face {key:?} lies on {} tetrahedra",
                    sides.len()
                )));
            };
            gluings[a][fa] = Some(FaceGluing {
                tet: b,
                perm: label_map(&tets[a], fa, &tets[b], fb),
            });
            gluings[b][fb] = Some(FaceGluing {
                tet: a,
                perm: label_map(&tets[b], fb, &tets[a], fa),
            });
        }
        Triangulation::from_gluings(gluings)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{ChainComplex, HomologyProfile};

    fn homology(t: &Triangulation) -> HomologyProfile {
        ChainComplex::of_triangulation(t).homology().unwrap()
    }

    #[test]
    fn boundary_4_simplex_counts() {
        let t = generate(CensusKind::Boundary4Simplex).unwrap();
        assert_eq!(t.counts(), (5, 10, 10, 5));
        assert!(t.validate().passes());
        assert_eq!(homology(&t), HomologyProfile::sphere3());
        // Tetrahedron 4 is {1,2,3,4} and vertex ids equal labels.
        assert_eq!(t.skeleton().tet_vertices[4], [1, 2, 3, 4]);
        assert_eq!(t.skeleton().tet_vertices[0], [0, 1, 2, 3]);
    }

    #[test]
    fn minimal_s3_is_one_vertex_sphere() {
        let t = generate(CensusKind::MinimalS3).unwrap();
        assert_eq!(t.tet_count(), 2);
        assert_eq!(t.vertex_count(), 1);
        assert!(t.validate().passes(), "{}", t.validate().summary());
        assert_eq!(homology(&t), HomologyProfile::sphere3());
    }

    #[test]
    fn lens_homology() {
        for (p, q) in [(2, 1), (3, 1), (5, 2), (7, 3)] {
            let t = generate(CensusKind::Lens { p, q }).unwrap();
            assert!(t.validate().passes(), "lens({p},{q}): {}", t.validate().summary());
            let h = homology(&t);
            assert_eq!(h.group(1).torsion, vec![p], "lens({p},{q})");
            assert_eq!(h.group(1).betti, 0);
            assert!(h.group(2).is_trivial());
            assert_eq!(h.betti(3), 1);
        }
    }

    #[test]
    fn lens_parameters_checked() {
        for (p, q) in [(1, 0), (4, 2), (3, 3), (3, 0)] {
            assert!(matches!(generate(CensusKind::Lens { p, q }), Err(Error::InvalidParameters(_))));
        }
    }

    #[test]
    fn kind_names_round_trip() {
        for k in [CensusKind::Boundary4Simplex, CensusKind::MinimalS3, CensusKind::Lens { p: 5, q: 2 }] {
            assert_eq!(k.to_string().parse::<CensusKind>().unwrap(), k);
        }
        assert_eq!("lens(3,1)".parse::<CensusKind>().unwrap(), CensusKind::Lens { p: 3, q: 1 });
    }
}
