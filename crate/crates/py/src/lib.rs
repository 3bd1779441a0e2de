//! Python bindings: triangulations, spines, the homology oracle and the recognizer.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use spinecell::homology::{smith_normal_form as snf, IntMatrix};
use spinecell::spine::{build_initial_spine_arc, check_invariants, collapse_all, replay_trace, CollapseOutcome, MoveTrace};
use spinecell::triangulation::{generate, scramble};
use spinecell::{ChainComplex, HomologyProfile, PaintState, RecognizeConfig, SimplexId};

fn value_error(e: spinecell::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// `[(betti, [torsion...]), ...]` for H0..H3.
fn groups(h: &HomologyProfile) -> Vec<(usize, Vec<u64>)> {
    (0..4).map(|d| (h.group(d).betti, h.group(d).torsion.clone())).collect()
}

#[pyclass(name = "Triangulation", module = "spinecell", frozen)]
#[derive(Clone)]
struct PyTriangulation {
    inner: Arc<spinecell::Triangulation>,
}

#[pymethods]
impl PyTriangulation {
    /// Parse the gluing file format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let t = spinecell::Triangulation::parse(text).map_err(value_error)?;
        Ok(PyTriangulation { inner: Arc::new(t) })
    }

    /// `boundary4simplex`, `minimal-s3` or `lens:P,Q`.
    #[staticmethod]
    fn census(kind: &str) -> PyResult<Self> {
        let t = generate(kind.parse().map_err(value_error)?).map_err(value_error)?;
        Ok(PyTriangulation { inner: Arc::new(t) })
    }

    fn serialize(&self) -> String {
        self.inner.serialize()
    }

    #[getter]
    fn tet_count(&self) -> usize {
        self.inner.tet_count()
    }

    /// `(vertices, edges, triangles, tetrahedra)`.
    fn counts(&self) -> (usize, usize, usize, usize) {
        self.inner.counts()
    }

    fn is_closed_manifold(&self) -> bool {
        self.inner.validate().passes()
    }

    /// Failure messages of the manifold check; empty when it passes.
    fn validation_failures(&self) -> Vec<String> {
        self.inner.validate().failures.iter().map(|f| f.to_string()).collect()
    }

    fn homology(&self) -> PyResult<Vec<(usize, Vec<u64>)>> {
        let h = ChainComplex::of_triangulation(&self.inner).homology().map_err(value_error)?;
        Ok(groups(&h))
    }

    fn homology_lines(&self) -> PyResult<String> {
        let h = ChainComplex::of_triangulation(&self.inner).homology().map_err(value_error)?;
        Ok(h.to_lines())
    }

    fn scramble(&self, moves: usize, seed: u64) -> Self {
        PyTriangulation { inner: Arc::new(scramble(&self.inner, moves, seed)) }
    }

    fn barycentric_subdivision(&self) -> Self {
        PyTriangulation { inner: Arc::new(self.inner.barycentric_subdivision()) }
    }

    fn __repr__(&self) -> String {
        let (v, e, f, t) = self.inner.counts();
        format!("Triangulation(tets={t}, triangles={f}, edges={e}, vertices={v})")
    }
}

#[pyclass(name = "Spine", module = "spinecell", frozen)]
struct PySpine {
    inner: PaintState,
}

#[pymethods]
impl PySpine {
    /// Initial spine grown from `seed_tet` with strategy `bfs`, `dfs` or `star`.
    #[staticmethod]
    #[pyo3(signature = (t, seed_tet = 0, strategy = "bfs"))]
    fn build(t: &PyTriangulation, seed_tet: usize, strategy: &str) -> PyResult<Self> {
        let strategy = strategy.parse().map_err(value_error)?;
        let s = build_initial_spine_arc(t.inner.clone(), SimplexId::tet(seed_tet), strategy).map_err(value_error)?;
        Ok(PySpine { inner: s })
    }

    /// Replay a trace over `t`, checking invariants after every record.
    #[staticmethod]
    #[pyo3(signature = (t, trace, simply_connected = true))]
    fn replay(t: &PyTriangulation, trace: &str, simply_connected: bool) -> PyResult<Self> {
        let trace = MoveTrace::parse(trace).map_err(value_error)?;
        let s = replay_trace(&t.inner, &trace, simply_connected).map_err(value_error)?;
        Ok(PySpine { inner: s })
    }

    /// Collapse free triangles and isolated edges; returns the result and
    /// whether it reached a point.
    fn collapse(&self) -> (PySpine, bool) {
        let (s, outcome) = collapse_all(&self.inner);
        (PySpine { inner: s }, outcome == CollapseOutcome::Point)
    }

    /// `(triangles, edges, vertices)` painted black.
    fn counts(&self) -> (usize, usize, usize) {
        (self.inner.black_triangle_count(), self.inner.black_edge_count(), self.inner.black_vertex_count())
    }

    fn black_triangles(&self) -> Vec<usize> {
        self.inner.black_triangles().collect()
    }

    #[getter]
    fn chi(&self) -> i64 {
        self.inner.chi()
    }

    fn is_point(&self) -> bool {
        self.inner.is_point()
    }

    #[pyo3(signature = (simply_connected = true))]
    fn check_invariants(&self, simply_connected: bool) -> bool {
        check_invariants(&self.inner, simply_connected).passes()
    }

    fn homology(&self) -> PyResult<Vec<(usize, Vec<u64>)>> {
        Ok(groups(&self.inner.black_complex().homology().map_err(value_error)?))
    }

    fn trace(&self) -> String {
        self.inner.trace().to_text()
    }

    fn __repr__(&self) -> String {
        let (f, e, v) = self.counts();
        format!("Spine(triangles={f}, edges={e}, vertices={v}, chi={})", self.inner.chi())
    }
}

#[pyclass(name = "Outcome", module = "spinecell", frozen, get_all)]
struct PyOutcome {
    verdict: String,
    steps: usize,
    tets: usize,
    detail: String,
    line: String,
    exit_code: i32,
    trace: String,
}

#[pymethods]
impl PyOutcome {
    fn __repr__(&self) -> String {
        self.line.clone()
    }
}

/// Run the sphere recognizer.
#[pyfunction]
#[pyo3(signature = (t, seed_tet = 0, strategy = "bfs", max_steps = 1_000_000))]
fn recognize(py: Python<'_>, t: &PyTriangulation, seed_tet: usize, strategy: &str, max_steps: usize) -> PyResult<PyOutcome> {
    let config = RecognizeConfig {
        seed_tet,
        strategy: strategy.parse().map_err(value_error)?,
        max_steps,
        trace_path: None,
    };
    let out = py.allow_threads(|| spinecell::recognize(&t.inner, &config)).map_err(value_error)?;
    Ok(PyOutcome {
        verdict: out.verdict.keyword().to_string(),
        steps: out.steps,
        tets: out.tets,
        detail: out.detail.clone(),
        line: out.line(),
        exit_code: out.verdict.exit_code(),
        trace: out.trace.to_text(),
    })
}

/// Invariant factors and rank of an integer matrix.
#[pyfunction]
fn smith_normal_form(rows: Vec<Vec<i64>>) -> PyResult<(Vec<u64>, usize)> {
    let form = snf(&IntMatrix::from_rows(&rows)).map_err(value_error)?;
    Ok((form.factors, form.rank))
}

/// Homology of a simplicial complex given by all of its simplices.
#[pyfunction]
fn simplicial_homology(simplices: Vec<Vec<usize>>) -> PyResult<Vec<(usize, Vec<u64>)>> {
    let h = ChainComplex::from_simplices(&simplices).and_then(|c| c.homology()).map_err(value_error)?;
    Ok(groups(&h))
}

#[pymodule]
#[pyo3(name = "spinecell")]
fn spinecell_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTriangulation>()?;
    m.add_class::<PySpine>()?;
    m.add_class::<PyOutcome>()?;
    m.add_function(wrap_pyfunction!(recognize, m)?)?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(simplicial_homology, m)?)?;
    Ok(())
}
