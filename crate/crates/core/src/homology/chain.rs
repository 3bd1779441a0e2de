use std::fmt;

use super::snf::{smith_normal_form_with, IntMatrix, SnfOptions};
use crate::error::{Error, Result};
use crate::triangulation::Triangulation;

/// Integer chain complex in dimensions 0..=3 with sparse boundary columns.
///
/// `boundary[d - 1][j]` lists `(row, coefficient)` pairs of `∂_d` applied to the
/// `j`-th `d`-cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    counts: [usize; 4],
    boundary: [Vec<Vec<(usize, i64)>>; 3],
}

impl ChainComplex {
    /// Checks index ranges and `∂∂ = 0`.
    pub fn new(counts: [usize; 4], boundary: [Vec<Vec<(usize, i64)>>; 3]) -> Result<Self> {
        for d in 1..=3 {
            let cols = &boundary[d - 1];
            if cols.len() != counts[d] {
                return Err(Error::InvalidParameters(format!(
                    "boundary ∂{d} has {} columns for {} cells",
                    cols.len(),
                    counts[d]
                )));
            }
            if cols.iter().flatten().any(|&(r, _)| r >= counts[d - 1]) {
                return Err(Error::InvalidParameters(format!("boundary ∂{d} row out of range")));
            }
        }
        let c = ChainComplex { counts, boundary };
        for d in 2..=3 {
            for j in 0..counts[d] {
                let mut acc = vec![0i64; counts[d - 2]];
                for &(r, a) in &c.boundary[d - 1][j] {
                    for &(s, b) in &c.boundary[d - 2][r] {
                        acc[s] += a * b;
                    }
                }
                if acc.iter().any(|&x| x != 0) {
                    return Err(Error::InvalidParameters(format!(
                        "∂{}∂{} ≠ 0 on cell {j}",
                        d - 1,
                        d
                    )));
                }
            }
        }
        Ok(c)
    }

    /// Simplicial complex given by vertex lists; boundary signs follow the
    /// ascending global vertex order. Faces of every listed simplex must be listed.
    pub fn from_simplices(simplices: &[Vec<usize>]) -> Result<Self> {
        let mut by_dim: [Vec<Vec<usize>>; 4] = Default::default();
        for s in simplices {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            if s.is_empty() || s.len() > 4 {
                return Err(Error::InvalidParameters(format!("bad simplex {s:?}")));
            }
            if !by_dim[s.len() - 1].contains(&s) {
                by_dim[s.len() - 1].push(s);
            }
        }
        for list in by_dim.iter_mut() {
            list.sort();
        }
        let counts = [by_dim[0].len(), by_dim[1].len(), by_dim[2].len(), by_dim[3].len()];
        let mut boundary: [Vec<Vec<(usize, i64)>>; 3] = Default::default();
        for d in 1..=3 {
            for s in &by_dim[d] {
                let mut col = Vec::new();
                for skip in 0..s.len() {
                    let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    let row = by_dim[d - 1].binary_search(&face).map_err(|_| {
                        Error::InvalidParameters(format!("face {face:?} of {s:?} missing"))
                    })?;
                    col.push((row, if skip % 2 == 0 { 1 } else { -1 }));
                }
                boundary[d - 1].push(col);
            }
        }
        Self::new(counts, boundary)
    }

    /// The full cellular chain complex of a triangulation.
    pub fn of_triangulation(t: &Triangulation) -> Self {
        let n = t.tet_count();
        Self::of_subcomplex(
            t,
            &vec![true; t.vertex_count()],
            &vec![true; t.edge_count()],
            &vec![true; t.triangle_count()],
            &vec![true; n],
        )
    }

    /// Subcomplex of a triangulation selected by membership masks. Masks must be
    /// closed under taking faces.
    pub fn of_subcomplex(t: &Triangulation, verts: &[bool], edges: &[bool], tris: &[bool], tets: &[bool]) -> Self {
        let sk = t.skeleton();
        let renumber = |mask: &[bool]| {
            let mut ids = vec![usize::MAX; mask.len()];
            let mut k = 0;
            for (i, &m) in mask.iter().enumerate() {
                if m {
                    ids[i] = k;
                    k += 1;
                }
            }
            (ids, k)
        };
        let (vid, nv) = renumber(verts);
        let (eid, ne) = renumber(edges);
        let (fid, nf) = renumber(tris);
        let (_, nt) = renumber(tets);
        let mut boundary: [Vec<Vec<(usize, i64)>>; 3] = Default::default();
        for (e, info) in sk.edges.iter().enumerate().filter(|(e, _)| edges[*e]) {
            let _ = e;
            let mut col = vec![(vid[info.ends[1]], 1), (vid[info.ends[0]], -1)];
            merge(&mut col);
            boundary[0].push(col);
        }
        for (_, info) in sk.triangles.iter().enumerate().filter(|(f, _)| tris[*f]) {
            let mut col: Vec<(usize, i64)> = info.boundary.iter().map(|&(e, c)| (eid[e], c)).collect();
            merge(&mut col);
            boundary[1].push(col);
        }
        for tet in (0..t.tet_count()).filter(|&x| tets[x]) {
            let mut col: Vec<(usize, i64)> = (0..4)
                .map(|f| (fid[sk.tet_triangles[tet][f]], sk.tet_boundary[tet][f]))
                .collect();
            merge(&mut col);
            boundary[2].push(col);
        }
        ChainComplex::new([nv, ne, nf, nt], boundary).expect("subcomplex of a valid triangulation")
    }

    pub fn counts(&self) -> [usize; 4] {
        self.counts
    }

    /// Dense `∂_d` for `d` in 1..=3.
    pub fn boundary_matrix(&self, d: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.counts[d - 1], self.counts[d]);
        for (j, col) in self.boundary[d - 1].iter().enumerate() {
            for &(i, v) in col {
                m.add(i, j, v);
            }
        }
        m
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn homology(&self) -> Result<HomologyProfile> {
        self.homology_with(SnfOptions::default())
    }

    pub fn homology_with(&self, opts: SnfOptions) -> Result<HomologyProfile> {
        // rank and torsion of ∂_1..∂_3; ∂_0 and ∂_4 vanish.
        let mut ranks = [0usize; 5];
        let mut torsion: [Vec<u64>; 5] = Default::default();
        for d in 1..=3 {
            if self.counts[d] == 0 || self.counts[d - 1] == 0 {
                continue;
            }
            let snf = smith_normal_form_with(&self.boundary_matrix(d), opts)?;
            ranks[d] = snf.rank;
            torsion[d] = snf.factors.into_iter().filter(|&f| f > 1).collect();
        }
        let mut dims = Vec::with_capacity(4);
        for d in 0..4 {
            let betti = self.counts[d] - ranks[d] - ranks[d + 1];
            dims.push(HomologyGroup {
                betti,
                torsion: torsion[d + 1].clone(),
            });
        }
        Ok(HomologyProfile { dims })
    }
}

fn merge(col: &mut Vec<(usize, i64)>) {
    col.sort_unstable_by_key(|&(r, _)| r);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(col.len());
    for &(r, v) in col.iter() {
        match out.last_mut() {
            Some((lr, lv)) if *lr == r => *lv += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|&(_, v)| v != 0);
    *col = out;
}

/// `ℤ^betti ⊕ ⊕ ℤ/t` for one dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Torsion coefficients, each ≥ 2, ascending with divisibility.
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup { betti, torsion: vec![] }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join("+"))
    }
}

/// Homology groups in dimensions 0..=3.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyProfile {
    pub dims: Vec<HomologyGroup>,
}

impl HomologyProfile {
    /// Profile with the given Betti numbers and no torsion.
    pub fn free(bettis: &[usize]) -> Self {
        HomologyProfile {
            dims: bettis.iter().map(|&b| HomologyGroup::free(b)).collect(),
        }
    }

    /// `(ℤ, 0, 0, ℤ)`.
    pub fn sphere3() -> Self {
        Self::free(&[1, 0, 0, 1])
    }

    /// `(ℤ, 0, 0, 0)`: homology of a point.
    pub fn point() -> Self {
        Self::free(&[1, 0, 0, 0])
    }

    pub fn betti(&self, d: usize) -> usize {
        self.dims.get(d).map_or(0, |g| g.betti)
    }

    pub fn group(&self, d: usize) -> &HomologyGroup {
        &self.dims[d]
    }

    /// Alternating sum of Betti numbers (torsion does not contribute).
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(d, g)| if d % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum()
    }

    /// One line per dimension: `H<d> = Z^<betti>` then ` + Z/<t>` per torsion factor.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for (d, g) in self.dims.iter().enumerate() {
            out.push_str(&format!("H{d} = Z^{}", g.betti));
            for t in &g.torsion {
                out.push_str(&format!(" + Z/{t}"));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}
