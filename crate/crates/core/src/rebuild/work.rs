use crate::error::{Error, Result};
use crate::spine::collapse::isolated_end;
use crate::spine::{check_invariants, PaintState};

/// Scratch state of one compound move. All repainting happens on a copy, so a
/// failed move leaves the caller's state untouched.
pub(crate) struct Rebuild {
    pub(crate) s: PaintState,
    before: PaintState,
    op: &'static str,
    /// Triangles this move must not whiten.
    protected: Vec<bool>,
    /// Triangles this move must not blacken.
    frozen: Vec<bool>,
    /// Tetrahedra whose faces this move repainted.
    local: Vec<bool>,
    budget: usize,
    spent: usize,
}

impl Rebuild {
    pub(crate) fn new(s: &PaintState, op: &'static str, protected: &[bool]) -> Self {
        let t = s.base();
        let mut p = vec![false; t.triangle_count()];
        for (i, &b) in protected.iter().enumerate() {
            p[i] = b;
        }
        Rebuild {
            s: s.clone(),
            before: s.clone(),
            op,
            protected: p,
            frozen: vec![false; t.triangle_count()],
            local: vec![false; t.tet_count()],
            budget: 64 * t.tet_count(),
            spent: 0,
        }
    }

    pub(crate) fn protect(&mut self, f: usize) {
        self.protected[f] = true;
    }

    pub(crate) fn save_masks(&self) -> (Vec<bool>, Vec<bool>) {
        (self.protected.clone(), self.frozen.clone())
    }

    pub(crate) fn restore_masks(&mut self, saved: (Vec<bool>, Vec<bool>)) {
        (self.protected, self.frozen) = saved;
    }

    /// Paint and locality, for undoing a tentative repaint.
    pub(crate) fn snapshot(&self) -> (PaintState, Vec<bool>) {
        (self.s.clone(), self.local.clone())
    }

    pub(crate) fn rollback(&mut self, snap: (PaintState, Vec<bool>)) {
        (self.s, self.local) = snap;
    }

    /// White region connected and χ(K) = 1.
    pub(crate) fn is_cell(&self) -> bool {
        self.s.chi() == 1 && self.s.is_white_connected()
    }

    pub(crate) fn freeze(&mut self, f: usize) {
        self.frozen[f] = true;
    }

    pub(crate) fn mark_local(&mut self, tet: usize) {
        self.local[tet] = true;
    }

    pub(crate) fn anomaly(&self, detail: impl Into<String>) -> Error {
        Error::anomaly(self.op, detail)
    }

    pub(crate) fn tick(&mut self) -> Result<()> {
        self.spent += 1;
        if self.spent > self.budget {
            return Err(self.anomaly(format!("move budget of {} repaints exhausted", self.budget)));
        }
        Ok(())
    }

    pub(crate) fn whiten(&mut self, f: usize) {
        self.s.paint_triangle(f, false);
    }

    /// Paints a triangle black together with its edges and vertices.
    pub(crate) fn blacken(&mut self, f: usize) {
        let sk = self.s.base_arc().clone();
        let info = &sk.skeleton().triangles[f];
        self.s.paint_triangle(f, true);
        for e in info.edges() {
            self.s.paint_edge(e, true);
        }
        for v in info.vertices {
            self.s.paint_vertex(v, true);
        }
    }

    /// Whitens `g` and blackens the other faces of `into`, moving `into` behind `g`.
    pub(crate) fn push(&mut self, g: usize, into: usize) -> Result<()> {
        self.tick()?;
        if self.protected[g] {
            return Err(self.anomaly(format!("push would whiten protected triangle {g}")));
        }
        self.whiten(g);
        self.local[into] = true;
        let faces = self.s.base().skeleton().tet_triangles[into];
        for h in faces {
            if h != g && !self.frozen[h] {
                self.blacken(h);
            }
        }
        Ok(())
    }

    /// Protected triangle sides on edge `e`.
    pub(crate) fn protected_on(&self, e: usize) -> usize {
        let sk = self.s.base().skeleton();
        sk.edges[e]
            .triangles
            .iter()
            .filter(|&&f| self.protected[f])
            .map(|&f| sk.triangles[f].edge_multiplicity(e))
            .sum()
    }

    fn is_local_triangle(&self, f: usize) -> bool {
        self.s.base().skeleton().triangles[f].tets().any(|t| self.local[t])
    }

    /// Restores the cell structure around `root`: reconnects dead ends, runs
    /// local collapses, drops stray black points and cuts white handles.
    pub(crate) fn repair(&mut self, root: usize) -> Result<()> {
        loop {
            if self.reconnect_dead_end(root)? || self.collapse_local() || self.drop_stray_vertex() {
                self.tick()?;
                continue;
            }
            if self.s.chi() < 1 && self.cut_handle(root) {
                self.tick()?;
                continue;
            }
            return Ok(());
        }
    }

    /// Whitens one frontier triangle of a dead end; `Ok(false)` if there is none.
    pub(crate) fn reconnect_dead_end(&mut self, root: usize) -> Result<bool> {
        let reach = self.s.white_reachable_from(root);
        if reach.iter().all(|&r| r) {
            return Ok(false);
        }
        let sk = self.s.base().skeleton();
        let pick = self
            .s
            .black_triangles()
            .filter(|&f| !self.protected[f])
            .filter(|&f| {
                let mut sides = sk.triangles[f].tets().map(|t| reach[t]);
                let first = sides.next();
                sides.any(|r| Some(r) != first)
            })
            .min_by_key(|&f| (!self.is_local_triangle(f), f));
        match pick {
            Some(f) => {
                self.whiten(f);
                Ok(true)
            }
            None => Err(self.anomaly("dead end enclosed by protected triangles")),
        }
    }

    /// One free-triangle or isolated-edge collapse among local simplices.
    fn collapse_local(&mut self) -> bool {
        let sk = self.s.base_arc().clone();
        let sk = sk.skeleton();
        let free = self
            .s
            .black_triangles()
            .filter(|&f| !self.protected[f] && self.is_local_triangle(f))
            .find_map(|f| {
                let mut es = sk.triangles[f].edges();
                es.sort_unstable();
                es.into_iter().find(|&e| self.s.edge_multiplicity(e) == 1).map(|e| (f, e))
            });
        if let Some((f, e)) = free {
            self.s.paint_triangle(f, false);
            self.s.paint_edge(e, false);
            return true;
        }
        let isolated = self
            .s
            .black_edges()
            .filter(|&e| sk.edges[e].ring.iter().any(|slot| self.local[slot.tet]))
            .find_map(|e| isolated_end(&self.s, e).map(|v| (e, v)));
        if let Some((e, v)) = isolated {
            self.s.paint_edge(e, false);
            self.s.paint_vertex(v, false);
            return true;
        }
        false
    }

    /// Whitens a black vertex with no black edges when it is not the whole spine.
    fn drop_stray_vertex(&mut self) -> bool {
        if self.s.black_vertex_count() < 2 {
            return false;
        }
        let stray = self.s.black_vertices().find(|&v| self.s.black_edge_degree(v) == 0);
        match stray {
            Some(v) => {
                self.s.paint_vertex(v, false);
                true
            }
            None => false,
        }
    }

    /// Blackens a white disk with black boundary whose removal keeps the white
    /// region connected, cutting a handle of the cell. Tries single triangles,
    /// then pairs of triangles across a white edge.
    fn cut_handle(&mut self, root: usize) -> bool {
        let sk = self.s.base_arc().clone();
        let sk = sk.skeleton();
        let open = |s: &PaintState, f: usize| !s.is_black_triangle(f) && !self.frozen[f];
        let mut candidates: Vec<usize> = (0..sk.triangles.len())
            .filter(|&f| open(&self.s, f))
            .filter(|&f| sk.triangles[f].edges().iter().all(|&e| self.s.is_black_edge(e)))
            .collect();
        candidates.sort_by_key(|&f| (!self.is_local_triangle(f), f));
        for f in candidates {
            self.s.paint_triangle(f, true);
            if self.s.white_reachable_from(root).iter().all(|&r| r) {
                return true;
            }
            self.s.paint_triangle(f, false);
        }
        let mut pairs: Vec<(bool, usize, usize, usize)> = Vec::new();
        for e in (0..sk.edges.len()).filter(|&e| !self.s.is_black_edge(e)) {
            let [a, b] = sk.edges[e].ends;
            if a == b || !self.s.is_black_vertex(a) || !self.s.is_black_vertex(b) {
                continue;
            }
            let around: Vec<usize> = sk.edges[e]
                .triangles
                .iter()
                .copied()
                .filter(|&f| open(&self.s, f) && sk.triangles[f].edge_multiplicity(e) == 1)
                .filter(|&f| sk.triangles[f].edges().iter().all(|&d| d == e || self.s.is_black_edge(d)))
                .collect();
            for (i, &f) in around.iter().enumerate() {
                for &g in &around[i + 1..] {
                    let local = self.is_local_triangle(f) || self.is_local_triangle(g);
                    pairs.push((!local, e, f, g));
                }
            }
        }
        pairs.sort_unstable();
        for (_, e, f, g) in pairs {
            self.s.paint_triangle(f, true);
            self.s.paint_triangle(g, true);
            self.s.paint_edge(e, true);
            if self.s.white_reachable_from(root).iter().all(|&r| r) {
                return true;
            }
            self.s.paint_triangle(f, false);
            self.s.paint_triangle(g, false);
            self.s.paint_edge(e, false);
        }
        false
    }

    /// Certifies the result and appends one trace record carrying the repaint.
    pub(crate) fn finish(self, args: Vec<String>) -> Result<PaintState> {
        let report = check_invariants(&self.s, true);
        if !report.passes() {
            return Err(self.anomaly(format!("invariants broken: {}", report.summary())));
        }
        Ok(self.finish_unchecked(args))
    }

    pub(crate) fn finish_unchecked(mut self, mut args: Vec<String>) -> PaintState {
        let delta = self.s.delta_from(&self.before);
        if delta.is_empty() {
            return self.before;
        }
        args.extend(delta.iter().map(ToString::to_string));
        self.s.record(self.op, args);
        self.s
    }
}
