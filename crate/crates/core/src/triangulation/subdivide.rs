use super::{FaceGluing, Triangulation};
use crate::perm::Perm4;

impl Triangulation {
    /// True if some tetrahedron has two corners at the same vertex, which is
    /// the case for every one-vertex triangulation.
    pub fn has_degenerate_simplices(&self) -> bool {
        self.skeleton().tet_vertices.iter().any(|vs| {
            let mut s = *vs;
            s.sort_unstable();
            s.windows(2).any(|w| w[0] == w[1])
        })
    }

    /// Barycentric subdivision: 24 tetrahedra per tetrahedron, one per flag
    /// vertex ⊂ edge ⊂ face ⊂ tetrahedron. Local vertex `k` of a new tetrahedron
    /// is the barycentre of the `k`-dimensional member of its flag, so no new
    /// tetrahedron has repeated vertices.
    pub fn barycentric_subdivision(&self) -> Triangulation {
        let perms: Vec<Perm4> = Perm4::all().collect();
        let index = |p: Perm4| perms.iter().position(|&q| q == p).expect("24 permutations");
        let swaps = [
            Perm4::from_images([1, 0, 2, 3]).expect("perm"),
            Perm4::from_images([0, 2, 1, 3]).expect("perm"),
            Perm4::from_images([0, 1, 3, 2]).expect("perm"),
        ];
        let mut gluings = Vec::with_capacity(24 * self.tet_count());
        for t in 0..self.tet_count() {
            for &flag in &perms {
                let mut row = [None; 4];
                for (k, swap) in swaps.iter().enumerate() {
                    row[k] = Some(FaceGluing {
                        tet: 24 * t + index(flag.compose(*swap)),
                        perm: Perm4::IDENTITY,
                    });
                }
                row[3] = self.gluing(t, flag.apply(3)).map(|g| FaceGluing {
                    tet: 24 * g.tet + index(g.perm.compose(flag)),
                    perm: Perm4::IDENTITY,
                });
                gluings.push(row);
            }
        }
        Triangulation::from_gluings(gluings).expect("subdivision of a well-formed table")
    }
}

#[cfg(test)]
mod tests {
    use crate::homology::{ChainComplex, HomologyProfile};
    use crate::triangulation::{generate, CensusKind};

    #[test]
    fn subdivision_preserves_manifold() {
        for kind in [CensusKind::Boundary4Simplex, CensusKind::MinimalS3, CensusKind::Lens { p: 3, q: 1 }] {
            let t = generate(kind).unwrap();
            let b = t.barycentric_subdivision();
            assert_eq!(b.tet_count(), 24 * t.tet_count());
            assert!(b.validate().passes(), "{kind}: {}", b.validate().summary());
            assert!(!b.has_degenerate_simplices());
            let (v, e, f, n) = t.counts();
            assert_eq!(b.vertex_count(), v + e + f + n);
            assert_eq!(
                ChainComplex::of_triangulation(&b).homology().unwrap(),
                ChainComplex::of_triangulation(&t).homology().unwrap()
            );
        }
        assert!(generate(CensusKind::MinimalS3).unwrap().has_degenerate_simplices());
        assert!(!generate(CensusKind::Boundary4Simplex).unwrap().has_degenerate_simplices());
        let _ = HomologyProfile::sphere3();
    }
}
