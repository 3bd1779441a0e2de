use super::FaceGluing;

/// The six edges of a tetrahedron as pairs of local vertices.
pub const LOCAL_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub(crate) fn local_edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    LOCAL_EDGES.iter().position(|&p| p == (a, b)).expect("distinct local vertices")
}

/// Local vertices of face `f`, ascending.
pub(crate) fn face_vertices(f: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut k = 0;
    for v in 0..4 {
        if v != f {
            out[k] = v;
            k += 1;
        }
    }
    out
}

/// One tetrahedron corner of an edge ring.
///
/// Local vertices `a -> b` carry the edge in its canonical direction. The slot is
/// entered through the face opposite `c` and left through the face opposite `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingSlot {
    pub tet: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub entry_triangle: usize,
    pub exit_triangle: usize,
}

#[derive(Clone, Debug, Default)]
pub struct VertexInfo {
    /// `(tet, local vertex)` corners, ascending.
    pub corners: Vec<(usize, usize)>,
    /// Incident edges; a loop edge is listed twice.
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct EdgeInfo {
    /// Tail and head in the canonical orientation.
    pub ends: [usize; 2],
    pub ring: Vec<RingSlot>,
    pub closed: bool,
    /// The edge is identified with itself in reverse.
    pub self_reversed: bool,
    /// Incident triangles, repeated once per occurrence of the edge in the triangle.
    pub triangles: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct TriangleInfo {
    /// `(tet, face)` sides; the first one fixes the vertex order of the triangle.
    pub sides: Vec<(usize, usize)>,
    pub vertices: [usize; 3],
    /// Edge opposite each vertex position, with its boundary coefficient.
    pub boundary: [(usize, i64); 3],
}

impl TriangleInfo {
    pub fn edges(&self) -> [usize; 3] {
        [self.boundary[0].0, self.boundary[1].0, self.boundary[2].0]
    }

    pub fn tets(&self) -> impl Iterator<Item = usize> + '_ {
        self.sides.iter().map(|&(t, _)| t)
    }

    /// Number of occurrences of `e` among the three sides.
    pub fn edge_multiplicity(&self, e: usize) -> usize {
        self.boundary.iter().filter(|(x, _)| *x == e).count()
    }
}

/// Vertices, edges and triangles derived from a gluing table, with incidences.
#[derive(Clone, Debug, Default)]
pub struct Skeleton {
    pub vertices: Vec<VertexInfo>,
    pub edges: Vec<EdgeInfo>,
    pub triangles: Vec<TriangleInfo>,
    pub tet_vertices: Vec<[usize; 4]>,
    pub tet_edges: Vec<[usize; 6]>,
    /// +1 when local `(a, b)` with `a < b` runs along the canonical direction.
    pub tet_edge_orient: Vec<[i64; 6]>,
    pub tet_triangles: Vec<[usize; 4]>,
    /// Coefficient of face `f`'s triangle in the boundary of each tetrahedron.
    pub tet_boundary: Vec<[i64; 4]>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

impl Skeleton {
    pub(crate) fn build(gluings: &[[Option<FaceGluing>; 4]]) -> Self {
        let n = gluings.len();
        let mut sk = Skeleton {
            tet_vertices: vec![[0; 4]; n],
            tet_edges: vec![[usize::MAX; 6]; n],
            tet_edge_orient: vec![[0; 6]; n],
            tet_triangles: vec![[usize::MAX; 4]; n],
            tet_boundary: vec![[0; 4]; n],
            ..Default::default()
        };

        // Vertices: orbits of corners.
        let mut uf = UnionFind::new(4 * n);
        for (t, row) in gluings.iter().enumerate() {
            for (f, g) in row.iter().enumerate() {
                if let Some(g) = g {
                    for v in (0..4).filter(|&v| v != f) {
                        uf.union(4 * t + v, 4 * g.tet + g.perm.apply(v));
                    }
                }
            }
        }
        let mut root_id = vec![usize::MAX; 4 * n];
        for t in 0..n {
            for v in 0..4 {
                let r = uf.find(4 * t + v);
                if root_id[r] == usize::MAX {
                    root_id[r] = sk.vertices.len();
                    sk.vertices.push(VertexInfo::default());
                }
                let id = root_id[r];
                sk.tet_vertices[t][v] = id;
                sk.vertices[id].corners.push((t, v));
            }
        }

        // Triangles: one per glued face pair, or per boundary face.
        for t in 0..n {
            for f in 0..4 {
                if sk.tet_triangles[t][f] != usize::MAX {
                    continue;
                }
                let id = sk.triangles.len();
                let mut sides = vec![(t, f)];
                sk.tet_triangles[t][f] = id;
                sk.tet_boundary[t][f] = if f % 2 == 0 { 1 } else { -1 };
                if let Some(g) = gluings[t][f] {
                    let tf = g.perm.apply(f);
                    sides.push((g.tet, tf));
                    sk.tet_triangles[g.tet][tf] = id;
                    // Orientation of the partner face relative to this one.
                    let back = g.perm.inverse();
                    let fv = face_vertices(tf);
                    let mapped = [back.apply(fv[0]), back.apply(fv[1]), back.apply(fv[2])];
                    let s = crate::perm::sort3_sign(mapped);
                    sk.tet_boundary[g.tet][tf] = if tf % 2 == 0 { s } else { -s };
                }
                let fv = face_vertices(f);
                sk.triangles.push(TriangleInfo {
                    sides,
                    vertices: fv.map(|v| sk.tet_vertices[t][v]),
                    boundary: [(0, 0); 3],
                });
            }
        }

        // Edges: walk each ring once.
        for t in 0..n {
            for (le, &(a, b)) in LOCAL_EDGES.iter().enumerate() {
                if sk.tet_edges[t][le] != usize::MAX {
                    continue;
                }
                let id = sk.edges.len();
                let rest: Vec<usize> = (0..4).filter(|&x| x != a && x != b).collect();
                let (ring, closed) = walk_ring(gluings, &sk.tet_triangles, t, a, b, rest[0], rest[1]);
                let mut self_reversed = false;
                for slot in &ring {
                    let li = local_edge_index(slot.a, slot.b);
                    let orient = if slot.a < slot.b { 1 } else { -1 };
                    let existing = sk.tet_edges[slot.tet][li];
                    if existing == id && sk.tet_edge_orient[slot.tet][li] != orient {
                        self_reversed = true;
                    }
                    sk.tet_edges[slot.tet][li] = id;
                    sk.tet_edge_orient[slot.tet][li] = orient;
                }
                sk.edges.push(EdgeInfo {
                    ends: [sk.tet_vertices[t][a], sk.tet_vertices[t][b]],
                    ring,
                    closed,
                    self_reversed,
                    triangles: Vec::new(),
                });
            }
        }

        // Triangle boundaries and edge/triangle incidence.
        for id in 0..sk.triangles.len() {
            let (t, f) = sk.triangles[id].sides[0];
            let fv = face_vertices(f);
            let sides = [(fv[1], fv[2]), (fv[0], fv[2]), (fv[0], fv[1])];
            let mut boundary = [(0usize, 0i64); 3];
            for (k, &(x, y)) in sides.iter().enumerate() {
                let li = local_edge_index(x, y);
                let sign = if k % 2 == 0 { 1 } else { -1 };
                boundary[k] = (sk.tet_edges[t][li], sign * sk.tet_edge_orient[t][li]);
            }
            sk.triangles[id].boundary = boundary;
            for (e, _) in boundary {
                sk.edges[e].triangles.push(id);
            }
        }
        for (id, e) in sk.edges.iter().enumerate() {
            sk.vertices[e.ends[0]].edges.push(id);
            sk.vertices[e.ends[1]].edges.push(id);
        }
        sk
    }

    /// The triangle of face `f` of `tet` and the vertex position within that
    /// triangle of local vertex `v` (`v != f`).
    pub fn triangle_corner(&self, gluings: &[[Option<FaceGluing>; 4]], tet: usize, f: usize, v: usize) -> (usize, usize) {
        let tri = self.tet_triangles[tet][f];
        let (t0, f0) = self.triangles[tri].sides[0];
        let local = if (t0, f0) == (tet, f) {
            v
        } else {
            gluings[tet][f].expect("glued face").perm.apply(v)
        };
        let pos = face_vertices(f0).iter().position(|&x| x == local).expect("vertex on face");
        (tri, pos)
    }

    /// Edge id and canonical end (0 tail, 1 head) of the directed local edge `v -> w` of `tet`.
    pub fn edge_end(&self, tet: usize, v: usize, w: usize) -> (usize, usize) {
        let li = local_edge_index(v, w);
        let e = self.tet_edges[tet][li];
        let forward = (v < w) == (self.tet_edge_orient[tet][li] == 1);
        (e, if forward { 0 } else { 1 })
    }
}

fn walk_ring(
    gluings: &[[Option<FaceGluing>; 4]],
    tet_triangles: &[[usize; 4]],
    t: usize,
    a: usize,
    b: usize,
    c: usize,
    d: usize,
) -> (Vec<RingSlot>, bool) {
    let cap = 6 * gluings.len() + 1;
    let slot = |t: usize, a, b, c, d| RingSlot {
        tet: t,
        a,
        b,
        c,
        d,
        entry_triangle: tet_triangles[t][c],
        exit_triangle: tet_triangles[t][d],
    };
    let start = slot(t, a, b, c, d);
    let mut ring = vec![start];
    let mut cur = start;
    loop {
        let Some(g) = gluings[cur.tet][cur.d] else { break };
        let p = g.perm;
        let next = slot(g.tet, p.apply(cur.a), p.apply(cur.b), p.apply(cur.d), p.apply(cur.c));
        if next == start {
            return (ring, true);
        }
        if ring.len() >= cap {
            return (ring, false);
        }
        ring.push(next);
        cur = next;
    }
    // Open ring: extend backwards from the start.
    let mut front = Vec::new();
    cur = start;
    while let Some(g) = gluings[cur.tet][cur.c] {
        let p = g.perm;
        let prev = slot(g.tet, p.apply(cur.a), p.apply(cur.b), p.apply(cur.d), p.apply(cur.c));
        if front.len() + ring.len() >= cap {
            break;
        }
        front.push(prev);
        cur = prev;
    }
    front.reverse();
    front.extend(ring);
    (front, false)
}
