use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::path::PathBuf;
use std::sync::Arc;

use super::blue::BluePolygon;
use super::engine::{
    extend_polygon, handle_disk_situation, reduce_figure_eight, retract_polygon, seed_polygon, ExtendOutcome,
};
use crate::error::{Error, Result};
use crate::homology::{ChainComplex, HomologyProfile};
use crate::simplex::SimplexId;
use crate::spine::collapse::collapse_all_mut;
use crate::spine::{build_initial_spine_arc, CollapseOutcome, MoveTrace, PaintState, Strategy, SUBDIVIDE_OP};
use crate::triangulation::Triangulation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Sphere,
    NotSimplyConnected(HomologyProfile),
    Anomaly(String),
    IterationLimit(usize),
}

impl Verdict {
    pub fn keyword(&self) -> &'static str {
        match self {
            Verdict::Sphere => "SPHERE",
            Verdict::NotSimplyConnected(_) => "NOT_SIMPLY_CONNECTED",
            Verdict::Anomaly(_) => "ANOMALY",
            Verdict::IterationLimit(_) => "ITERATION_LIMIT",
        }
    }

    /// Process exit status for the command line.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Sphere => 0,
            Verdict::NotSimplyConnected(_) => 2,
            Verdict::Anomaly(_) => 3,
            Verdict::IterationLimit(_) => 4,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Clone, Debug)]
pub struct RecognizeConfig {
    pub seed_tet: usize,
    pub strategy: Strategy,
    /// Cap on trace records after the initial spine.
    pub max_steps: usize,
    pub trace_path: Option<PathBuf>,
}

impl Default for RecognizeConfig {
    fn default() -> Self {
        RecognizeConfig {
            seed_tet: 0,
            strategy: Strategy::Bfs,
            max_steps: 1_000_000,
            trace_path: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RecognizeOutcome {
    pub verdict: Verdict,
    /// Moves recorded after the initial spine.
    pub steps: usize,
    /// Tetrahedra of the input.
    pub tets: usize,
    pub detail: String,
    pub trace: MoveTrace,
    /// The triangulation the trace refers to; a subdivision of the input when
    /// the trace starts with a subdivision record.
    pub working: Arc<Triangulation>,
    /// Final paint state, when a spine was built.
    pub state: Option<PaintState>,
}

impl RecognizeOutcome {
    /// `verdict=<V> steps=<n> tets=<T> detail=<text>`.
    pub fn line(&self) -> String {
        format!(
            "verdict={} steps={} tets={} detail={}",
            self.verdict, self.steps, self.tets, self.detail
        )
    }
}

/// `H1=Z/2,H3=0`-style list of the dimensions where `h` differs from S³.
fn homology_detail(h: &HomologyProfile) -> String {
    let sphere = HomologyProfile::sphere3();
    let parts: Vec<String> = (1..4)
        .filter(|&d| h.group(d) != sphere.group(d))
        .map(|d| format!("H{d}={}", h.group(d)))
        .collect();
    parts.join(",")
}

fn state_key(s: &PaintState, p: Option<&BluePolygon>) -> (Vec<usize>, Vec<usize>) {
    let black: Vec<usize> = s.black_triangles().collect();
    let mut blue: Vec<usize> = p.map(|p| p.blue_triangles().to_vec()).unwrap_or_default();
    blue.sort_unstable();
    (black, blue)
}

/// Remembers visited (black, blue) states by hash, confirming hits by equality.
#[derive(Default)]
struct Visited {
    seen: HashMap<u64, Vec<(Vec<usize>, Vec<usize>)>>,
}

impl Visited {
    /// False if the state was already present.
    fn insert(&mut self, key: (Vec<usize>, Vec<usize>)) -> bool {
        let mut h = DefaultHasher::new();
        key.hash(&mut h);
        let bucket = self.seen.entry(h.finish()).or_default();
        if bucket.contains(&key) {
            return false;
        }
        bucket.push(key);
        true
    }
}

enum Stop {
    Verdict(Verdict, String),
}

struct Run {
    s: PaintState,
    max_steps: usize,
    visited: Visited,
}

impl Run {
    fn steps(&self) -> usize {
        self.s.trace().len().saturating_sub(1)
    }

    fn guard(&mut self, p: Option<&BluePolygon>) -> std::result::Result<(), Stop> {
        let steps = self.steps();
        if steps > self.max_steps {
            return Err(Stop::Verdict(
                Verdict::IterationLimit(steps),
                format!("step budget {} exhausted", self.max_steps),
            ));
        }
        if !self.visited.insert(state_key(&self.s, p)) {
            return Err(Stop::Verdict(
                Verdict::IterationLimit(steps),
                "repeated spine state".into(),
            ));
        }
        Ok(())
    }
}

fn anomaly(e: Error) -> Stop {
    let detail = e.to_string();
    Stop::Verdict(Verdict::Anomaly(detail.clone()), detail)
}

/// Seeds, grows and retracts blue polygons until the spine is a point.
fn polygon_loop(run: &mut Run) -> std::result::Result<(), Stop> {
    loop {
        let point = collapse_all_mut(&mut run.s) == CollapseOutcome::Point;
        run.guard(None)?;
        if point {
            return Ok(());
        }
        let seed = run.s.black_triangles().next().expect("stuck spine has triangles");
        let (s, mut p) = seed_polygon(&run.s, SimplexId::triangle(seed)).map_err(anomaly)?;
        run.s = s;
        loop {
            let (s, q, outcome) = match extend_polygon(&run.s, &p) {
                Ok(x) => x,
                Err(_) if retreat(run, &p) => break,
                Err(e) => return Err(anomaly(e)),
            };
            run.s = s;
            p = q;
            match outcome {
                ExtendOutcome::Extended | ExtendOutcome::InnerEdgeAbsorbed => {}
                ExtendOutcome::FigureEight => match reduce_figure_eight(&run.s, &p) {
                    Ok((s, q)) => {
                        run.s = s;
                        p = q;
                    }
                    Err(_) if retreat(run, &p) => break,
                    Err(e) => return Err(anomaly(e)),
                },
                ExtendOutcome::DiskSituation => {
                    run.s = handle_disk_situation(&run.s, &p).map_err(anomaly)?;
                    break;
                }
                ExtendOutcome::SphereSituation => {
                    let detail = format!("sphere situation with {} blue triangles", p.len());
                    return Err(Stop::Verdict(Verdict::Anomaly(detail.clone()), detail));
                }
            }
            if retreat(run, &p) {
                break;
            }
            run.guard(Some(&p))?;
        }
    }
}

/// Swaps in the retracted spine when the polygon can be given up with progress.
fn retreat(run: &mut Run, p: &BluePolygon) -> bool {
    match retract_polygon(&run.s, p) {
        Ok(s) => {
            run.s = s;
            true
        }
        Err(_) => false,
    }
}

/// Decides whether a closed triangulated 3-manifold is a sphere by collapsing
/// and repainting its spine.
///
/// Inputs failing the homology gate are refused with `NotSimplyConnected`.
/// When the spine of a triangulation with degenerate simplices gets stuck, the
/// run restarts on the barycentric subdivision; the trace then starts with a
/// subdivision record and refers to [`RecognizeOutcome::working`].
pub fn recognize(t: &Triangulation, config: &RecognizeConfig) -> Result<RecognizeOutcome> {
    t.require_closed_manifold()?;
    let tets = t.tet_count();
    let seed_tet = config.seed_tet % tets;
    let outcome = |verdict: Verdict, steps, detail: String, s: Option<PaintState>, working: Arc<Triangulation>| {
        let trace = s.as_ref().map(|s| s.trace().clone()).unwrap_or_default();
        RecognizeOutcome {
            verdict,
            steps,
            tets,
            detail,
            trace,
            working,
            state: s,
        }
    };
    let input = Arc::new(t.clone());
    let h = ChainComplex::of_triangulation(t).homology()?;
    if h != HomologyProfile::sphere3() {
        let detail = homology_detail(&h);
        return finish(outcome(Verdict::NotSimplyConnected(h), 0, detail, None, input), config);
    }
    if config.max_steps == 0 {
        return finish(outcome(Verdict::IterationLimit(0), 0, "step budget 0".into(), None, input), config);
    }
    let mut s = build_initial_spine_arc(input.clone(), SimplexId::tet(seed_tet), config.strategy)?;
    let mut working = input;
    if collapse_all_mut(&mut s) != CollapseOutcome::Point && t.has_degenerate_simplices() {
        let sub = Arc::new(t.barycentric_subdivision());
        let mut first = PaintState::all_black(sub.clone());
        first.record(SUBDIVIDE_OP, vec![]);
        let mut trace = first.into_trace();
        s = build_initial_spine_arc(sub.clone(), SimplexId::tet(24 * seed_tet), config.strategy)?;
        let rest = s.take_trace();
        for mut r in rest.records {
            r.step = trace.len();
            trace.records.push(r);
        }
        s.set_trace(trace);
        collapse_all_mut(&mut s);
        working = sub;
    }
    let mut run = Run {
        s,
        max_steps: config.max_steps,
        visited: Visited::default(),
    };
    let (verdict, detail) = match polygon_loop(&mut run) {
        Ok(()) => (Verdict::Sphere, format!("point spine at vertex {}", run.s.black_vertices().next().unwrap_or(0))),
        Err(Stop::Verdict(v, d)) => (v, d),
    };
    let steps = run.steps();
    finish(outcome(verdict, steps, detail, Some(run.s), working), config)
}

fn finish(out: RecognizeOutcome, config: &RecognizeConfig) -> Result<RecognizeOutcome> {
    if let Some(path) = &config.trace_path {
        std::fs::write(path, out.trace.to_text()).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
    }
    Ok(out)
}
