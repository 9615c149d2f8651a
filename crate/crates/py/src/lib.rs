//! Python bindings. Reports cross the boundary as JSON strings; the Python
//! side can `json.loads` them.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use twovc_core::bounds::verify_lemma107;
use twovc_core::heuristic::HeuristicConfig;
use twovc_core::instances::InstanceSpec;
use twovc_core::io::{parse_edge_list, write_edge_list};
use twovc_core::oracle::opt_exact_with_limit;
use twovc_core::phi::{phi_exact_with_limit, DEFAULT_EXHAUSTIVE_LIMIT};
use twovc_core::restructure::PipelineOptions;
use twovc_core::verify::{verify_decomposition, verify_subgraph};
use twovc_core::{Backend, EarDecomposition, Edge, Error};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn edges_in(edges: Vec<(usize, usize)>) -> Vec<Edge> {
    edges.into_iter().map(|(u, v)| Edge::new(u, v)).collect()
}

fn edges_out(edges: impl IntoIterator<Item = Edge>) -> Vec<(usize, usize)> {
    edges.into_iter().map(|e| (e.0, e.1)).collect()
}

/// Simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "twovc")]
struct PyGraph {
    inner: twovc_core::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = twovc_core::Graph::from_edges(n, edges).map_err(err)?;
        Ok(PyGraph { inner })
    }

    /// Parses the `p 2vc N M` / `e U V` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: parse_edge_list(text).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        edges_out(self.inner.edges())
    }

    fn is_two_connected(&self) -> bool {
        self.inner.is_two_connected()
    }

    fn is_two_edge_connected(&self) -> bool {
        self.inner.is_two_edge_connected()
    }

    fn to_text(&self) -> String {
        write_edge_list(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

fn options(backend: &str, initial: Option<&str>, seed: u64, limit: usize) -> PyResult<PipelineOptions> {
    let backend: Backend = backend.parse().map_err(PyValueError::new_err)?;
    Ok(PipelineOptions {
        backend,
        exhaustive_limit: limit,
        heuristic: HeuristicConfig {
            seed,
            ..HeuristicConfig::default()
        },
        initial: initial.map(EarDecomposition::parse).transpose().map_err(err)?,
        ..PipelineOptions::default()
    })
}

/// Runs the full solver and returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (graph, backend = "exact", initial = None, seed = 0, limit = DEFAULT_EXHAUSTIVE_LIMIT))]
fn solve(graph: &PyGraph, backend: &str, initial: Option<&str>, seed: u64, limit: usize) -> PyResult<String> {
    let opts = options(backend, initial, seed, limit)?;
    let report = twovc_core::solve::solve(&graph.inner, &opts).map_err(err)?;
    Ok(report.to_json())
}

/// Checks a subgraph: `(two_connected, two_edge_connected, problem)`.
#[pyfunction]
fn verify(graph: &PyGraph, edges: Vec<(usize, usize)>) -> PyResult<(bool, bool, Option<String>)> {
    let r = verify_subgraph(&graph.inner, &edges_in(edges)).map_err(err)?;
    Ok((r.two_connected, r.two_edge_connected, r.problem))
}

/// Problems found in a decomposition given in text form; empty means valid.
#[pyfunction]
#[pyo3(signature = (graph, decomposition, limit = DEFAULT_EXHAUSTIVE_LIMIT))]
fn check_decomposition(graph: &PyGraph, decomposition: &str, limit: usize) -> PyResult<Vec<String>> {
    let ed = EarDecomposition::parse(decomposition).map_err(err)?;
    let r = verify_decomposition(&graph.inner, &ed, limit).map_err(err)?;
    Ok(r.problems)
}

/// Lower bounds of the solver's final decomposition, as JSON.
#[pyfunction]
#[pyo3(signature = (graph, backend = "exact", initial = None, seed = 0, limit = DEFAULT_EXHAUSTIVE_LIMIT))]
fn bounds(graph: &PyGraph, backend: &str, initial: Option<&str>, seed: u64, limit: usize) -> PyResult<String> {
    let opts = options(backend, initial, seed, limit)?;
    let r = twovc_core::solve::solve(&graph.inner, &opts).map_err(err)?;
    Ok(serde_json::to_string(&r.bounds).expect("bounds serialize"))
}

/// Builds a named instance; returns the graph and its reference
/// decomposition, if it has one.
#[pyfunction]
fn generate(spec: &str) -> PyResult<(PyGraph, Option<String>)> {
    let spec: InstanceSpec = spec.parse().map_err(err)?;
    let inst = spec.generate().map_err(err)?;
    Ok((PyGraph { inner: inst.graph }, inst.reference.map(|ed| ed.to_text())))
}

/// Minimum number of even ears of an open ear-decomposition.
#[pyfunction]
#[pyo3(signature = (graph, limit = DEFAULT_EXHAUSTIVE_LIMIT))]
fn phi(graph: &PyGraph, limit: usize) -> PyResult<usize> {
    phi_exact_with_limit(&graph.inner, limit).map_err(err)
}

/// Exact optimum and one optimal edge set.
#[pyfunction]
#[pyo3(signature = (graph, limit = 9))]
fn opt(graph: &PyGraph, limit: usize) -> PyResult<(usize, Vec<(usize, usize)>)> {
    let r = opt_exact_with_limit(&graph.inner, limit).map_err(err)?;
    Ok((r.value, edges_out(r.witness.members.iter().copied())))
}

/// Dual certificate plus sampling of the ratio bound; `(ok, max_seen)`.
#[pyfunction]
#[pyo3(signature = (samples = 10_000, seed = 0))]
fn lemma107(samples: usize, seed: u64) -> PyResult<(bool, String)> {
    let r = verify_lemma107(samples, seed).map_err(err)?;
    Ok((r.ok(), r.max_seen.to_string()))
}

#[pymodule]
fn twovc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(check_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(opt, m)?)?;
    m.add_function(wrap_pyfunction!(lemma107, m)?)?;
    Ok(())
}
