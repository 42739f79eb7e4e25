//! Python bindings: graph construction, generators, rewiring, and the
//! spectral/Cheeger/smoothing reports.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use spectral_rewire::error::Error;
use spectral_rewire::generators;
use spectral_rewire::graph::{Graph, RelationTag};
use spectral_rewire::io;
use spectral_rewire::rewire::{self, RewireConfig, RewireResult, Selection};
use spectral_rewire::smoothing;
use spectral_rewire::spectral;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Graph", skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize) -> Self {
        PyGraph {
            inner: Graph::empty(n),
        }
    }

    /// Add an undirected edge; relation 1 = original, 2 = added.
    #[pyo3(signature = (u, v, relation = 1))]
    fn add_edge(&mut self, u: usize, v: usize, relation: u8) -> PyResult<()> {
        let tag = RelationTag::from_u8(relation).ok_or_else(|| err(Error::UnknownRelation(relation)))?;
        self.inner.add_edge(u, v, tag).map_err(err)
    }

    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize, u8)> {
        self.inner
            .edges()
            .iter()
            .map(|&(u, v, t)| (u, v, t.as_u8()))
            .collect()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.node_count() {
            return Err(err(Error::NodeOutOfRange(v, self.inner.node_count())));
        }
        Ok(self.inner.degree(v))
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.node_count() {
            return Err(err(Error::NodeOutOfRange(v, self.inner.node_count())));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.inner.node_count() && v < self.inner.node_count() && self.inner.has_edge(u, v)
    }

    fn non_edges(&self) -> Vec<(usize, usize)> {
        self.inner.non_edges()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn to_edge_list(&self) -> String {
        io::edge_list_to_string(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, m={})",
            self.inner.node_count(),
            self.inner.edge_count()
        )
    }
}

#[pyfunction]
fn parse_edge_list(text: &str) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: io::parse_edge_list(text).map_err(err)?,
    })
}

#[pyfunction]
fn dumbbell(clique_size: usize, path_len: usize) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: generators::dumbbell(clique_size, path_len).map_err(err)?,
    })
}

#[pyfunction]
fn path_of_cliques(num_cliques: usize, clique_size: usize) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: generators::path_of_cliques(num_cliques, clique_size).map_err(err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (n, p, seed = 0))]
fn erdos_renyi(n: usize, p: f64, seed: u64) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: generators::erdos_renyi(n, p, seed).map_err(err)?,
    })
}

#[pyfunction]
fn complete(n: usize) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: generators::complete(n).map_err(err)?,
    })
}

#[pyfunction]
fn path(n: usize) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: generators::path(n).map_err(err)?,
    })
}

#[pyfunction]
fn ring(n: usize) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: generators::ring(n).map_err(err)?,
    })
}

#[pyfunction]
fn spectral_gap(g: &PyGraph) -> PyResult<f64> {
    spectral::spectral_gap_exact(&g.inner).map_err(err)
}

#[pyfunction]
fn laplacian_spectrum(g: &PyGraph) -> PyResult<Vec<f64>> {
    spectral::laplacian_spectrum(&g.inner).map_err(err)
}

/// (h, cut, lambda2, bounds_ok) from exhaustive enumeration; n <= 20.
#[pyfunction]
fn cheeger(g: &PyGraph) -> PyResult<(f64, Vec<usize>, f64, bool)> {
    let rep = spectral::cheeger_bruteforce(&g.inner).map_err(err)?;
    Ok((rep.h, rep.cut, rep.lambda2, rep.bounds_ok))
}

type PyRewireResult = (PyGraph, Vec<(usize, usize, usize, f64, f64, Option<f64>)>, bool);

fn convert(result: RewireResult) -> PyRewireResult {
    let trajectory = result
        .trajectory
        .iter()
        .map(|r| (r.iter, r.u, r.v, r.score, r.rayleigh, r.exact_gap))
        .collect();
    (
        PyGraph {
            inner: result.graph,
        },
        trajectory,
        result.truncated,
    )
}

/// Returns (graph, trajectory, truncated); trajectory rows are
/// (iter, u, v, score, rayleigh, gap-or-None).
#[pyfunction]
#[pyo3(signature = (g, iterations, power_iters = 8, steps_per_edge = 1, selection = "exhaustive", seed = 0, track_gap = false))]
fn fosr_rewire(
    g: &PyGraph,
    iterations: usize,
    power_iters: usize,
    steps_per_edge: usize,
    selection: &str,
    seed: u64,
    track_gap: bool,
) -> PyResult<PyRewireResult> {
    let selection = match selection {
        "exhaustive" => Selection::Exhaustive,
        "relaxed" => Selection::Relaxed,
        other => {
            return Err(err(Error::InvalidParameter(format!(
                "selection must be 'exhaustive' or 'relaxed', got '{other}'"
            ))))
        }
    };
    let cfg = RewireConfig {
        iterations,
        initial_power_iters: power_iters,
        steps_per_edge,
        selection,
        seed,
        track_exact_gap: track_gap,
    };
    Ok(convert(rewire::fosr_rewire(&g.inner, &cfg).map_err(err)?))
}

#[pyfunction]
fn greedy_rewire(g: &PyGraph, iterations: usize) -> PyResult<PyRewireResult> {
    Ok(convert(
        rewire::greedy_exact_rewire(&g.inner, iterations).map_err(err)?,
    ))
}

#[pyfunction]
#[pyo3(signature = (g, iterations, seed = 0))]
fn random_rewire(g: &PyGraph, iterations: usize, seed: u64) -> PyResult<PyRewireResult> {
    Ok(convert(
        rewire::random_rewire(&g.inner, iterations, seed).map_err(err)?,
    ))
}

/// Rate-of-smoothing check for the alpha-construction on (g1, g1+added).
/// Returns (energy_ratio_sup, norm_ratio_sup, rate, lambda2, pass).
#[pyfunction]
fn verify_theorem1(
    g1: &PyGraph,
    added_edges: Vec<(usize, usize)>,
    alpha: f64,
) -> PyResult<(f64, f64, f64, f64, bool)> {
    let (rep, pass) = smoothing::verify_theorem1(&g1.inner, &added_edges, alpha).map_err(err)?;
    Ok((
        rep.energy_ratio_sup,
        rep.norm_ratio_sup,
        rep.rate,
        rep.lambda2,
        pass,
    ))
}

#[pymodule]
fn spectral_rewire_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(parse_edge_list, m)?)?;
    m.add_function(wrap_pyfunction!(dumbbell, m)?)?;
    m.add_function(wrap_pyfunction!(path_of_cliques, m)?)?;
    m.add_function(wrap_pyfunction!(erdos_renyi, m)?)?;
    m.add_function(wrap_pyfunction!(complete, m)?)?;
    m.add_function(wrap_pyfunction!(path, m)?)?;
    m.add_function(wrap_pyfunction!(ring, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_gap, m)?)?;
    m.add_function(wrap_pyfunction!(laplacian_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(cheeger, m)?)?;
    m.add_function(wrap_pyfunction!(fosr_rewire, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_rewire, m)?)?;
    m.add_function(wrap_pyfunction!(random_rewire, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem1, m)?)?;
    Ok(())
}
