//! Python bindings for the graph spectral-analysis toolkit. Matrices
//! cross the boundary as plain row-major lists of lists so the module
//! has no numpy build dependency; converting to an array on the Python
//! side is a one-liner.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use mcgraph::centrality::Measure;
use mcgraph::features::{self, FeatureSpec, ReferenceSelection};
use mcgraph::graph::Metric;
use mcgraph::spectral::SdsReducer;
use mcgraph::{dictionary, generators, spectral};

fn err(e: mcgraph::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rows(m: &nalgebra::DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

fn parse_metric(s: &str) -> PyResult<Metric> {
    Metric::parse(s).ok_or_else(|| PyValueError::new_err(format!("unknown metric '{s}'")))
}

fn parse_measures(spec: &str) -> PyResult<Vec<Measure>> {
    if spec == "all" {
        return Ok(Measure::ALL.to_vec());
    }
    if spec.is_empty() || spec == "none" {
        return Ok(Vec::new());
    }
    spec.split(',')
        .map(|tok| {
            Measure::parse(tok.trim())
                .ok_or_else(|| PyValueError::new_err(format!("unknown centrality '{tok}'")))
        })
        .collect()
}

/// A weighted graph, directed or undirected.
#[pyclass(module = "mcgraph_py")]
struct Graph {
    inner: mcgraph::Graph,
}

#[pymethods]
impl Graph {
    /// Build from (source, target, weight) index triples; weight may be
    /// omitted by passing None.
    #[staticmethod]
    #[pyo3(signature = (edges, directed=false, node_count=None))]
    fn from_edges(
        edges: Vec<(usize, usize, Option<f64>)>,
        directed: bool,
        node_count: Option<usize>,
    ) -> PyResult<Graph> {
        mcgraph::Graph::build(&edges, directed, node_count)
            .map(|inner| Graph { inner })
            .map_err(err)
    }

    /// Parse an edge-list text: one `source target [weight]` per line,
    /// `#` comments, arbitrary string labels interned in order of first
    /// appearance.
    #[staticmethod]
    #[pyo3(signature = (text, directed=false))]
    fn parse(text: &str, directed: bool) -> PyResult<Graph> {
        mcgraph::Graph::parse_edge_list(text, directed)
            .map(|inner| Graph { inner })
            .map_err(err)
    }

    #[getter]
    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn directed(&self) -> bool {
        self.inner.is_directed()
    }

    #[getter]
    fn weighted(&self) -> bool {
        self.inner.is_weighted()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn edges(&self) -> Vec<(usize, usize, f64)> {
        self.inner
            .edges()
            .iter()
            .map(|e| (e.source, e.target, e.weight))
            .collect()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    /// One centrality vector; name as in the CLI --centralities flag.
    fn centrality(&self, measure: &str) -> PyResult<Vec<f64>> {
        let m = Measure::parse(measure)
            .ok_or_else(|| PyValueError::new_err(format!("unknown centrality '{measure}'")))?;
        mcgraph::centrality::compute(&self.inner, m)
            .map(|v| v.values)
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(nodes={}, edges={}, directed={})",
            self.inner.node_count(),
            self.inner.edge_count(),
            self.inner.is_directed()
        )
    }
}

/// Normalized, centered per-node feature matrix.
#[pyclass(module = "mcgraph_py")]
struct FeatureMatrix {
    inner: features::FeatureMatrix,
}

#[pymethods]
impl FeatureMatrix {
    #[getter]
    fn columns(&self) -> Vec<String> {
        self.inner.column_names.clone()
    }

    #[getter]
    fn matrix(&self) -> Vec<Vec<f64>> {
        rows(&self.inner.matrix)
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        (self.inner.node_count(), self.inner.feature_count())
    }
}

/// Per-node structural coordinates Y = X V_q.
#[pyclass(module = "mcgraph_py")]
struct Pca {
    inner: spectral::PcaResult,
}

#[pymethods]
impl Pca {
    #[getter]
    fn coordinates(&self) -> Vec<Vec<f64>> {
        rows(&self.inner.coordinates)
    }

    #[getter]
    fn basis(&self) -> Vec<Vec<f64>> {
        rows(&self.inner.basis)
    }

    #[getter]
    fn singular_values(&self) -> Vec<f64> {
        self.inner.singular_values.clone()
    }

    #[getter]
    fn explained_variance_ratio(&self) -> Vec<f64> {
        self.inner.explained_variance_ratio.clone()
    }
}

/// Learned dictionary with sparse coefficients per graph.
#[pyclass(module = "mcgraph_py")]
struct Dictionary {
    inner: dictionary::DictionaryModel,
}

#[pymethods]
impl Dictionary {
    #[getter]
    fn atoms(&self) -> Vec<Vec<f64>> {
        rows(&self.inner.atoms)
    }

    #[getter]
    fn coefficients(&self) -> Vec<Vec<f64>> {
        rows(&self.inner.coefficients)
    }

    #[getter]
    fn training_log(&self) -> Vec<f64> {
        self.inner.training_log.clone()
    }

    #[getter]
    fn likely_degenerate(&self) -> bool {
        self.inner.likely_degenerate
    }

    /// Cluster the coefficient columns and return one label per graph.
    #[pyo3(signature = (clusters=2, seed=17))]
    fn classify(&self, clusters: usize, seed: u64) -> PyResult<Vec<usize>> {
        dictionary::classify_coefficients(&self.inner.coefficients, clusters, seed).map_err(err)
    }
}

/// Assemble the feature matrix: walk counts and weights per hop,
/// centralities, reference-node distances.
#[pyfunction]
#[pyo3(signature = (graph, max_hops=20, centralities="all", refs=10, metric="hop", reference_nodes=None))]
fn feature_matrix(
    graph: &Graph,
    max_hops: usize,
    centralities: &str,
    refs: usize,
    metric: &str,
    reference_nodes: Option<Vec<usize>>,
) -> PyResult<FeatureMatrix> {
    let mut spec = FeatureSpec::new(max_hops, parse_measures(centralities)?, refs);
    spec.distance_metric = parse_metric(metric)?;
    if let Some(nodes) = reference_nodes {
        spec.reference_selection = ReferenceSelection::Explicit(nodes);
    }
    features::assemble(&graph.inner, &spec)
        .map(|inner| FeatureMatrix { inner })
        .map_err(err)
}

/// Project a feature matrix onto its top-q principal directions.
#[pyfunction]
#[pyo3(signature = (features, q=2))]
fn mc_gpca(features: &FeatureMatrix, q: usize) -> PyResult<Pca> {
    spectral::mc_gpca(&features.inner, q)
        .map(|inner| Pca { inner })
        .map_err(err)
}

/// Structural difference score of each node against its neighbors.
#[pyfunction]
fn sds(graph: &Graph, pca: &Pca) -> Vec<f64> {
    spectral::sds(&graph.inner, &pca.inner).scores
}

/// Reduce an SDS vector to a per-graph statistic: "mean" or "max".
#[pyfunction]
#[pyo3(signature = (scores, reducer="mean"))]
fn sds_summary(scores: Vec<f64>, reducer: &str) -> PyResult<f64> {
    let r = match reducer {
        "mean" => SdsReducer::Mean,
        "max" => SdsReducer::Max,
        other => return Err(PyValueError::new_err(format!("unknown reducer '{other}'"))),
    };
    spectral::graph_sds_statistic(&spectral::SdsVector { scores }, r).map_err(err)
}

/// Learn a sparse dictionary over per-graph SDS vectors. Each inner
/// list is one graph's node scores; the top z per graph are kept.
#[pyfunction]
#[pyo3(signature = (sds_per_graph, z=300, atoms=2, sparsity=2, iters=20, seed=17))]
fn train_dictionary(
    sds_per_graph: Vec<Vec<f64>>,
    z: usize,
    atoms: usize,
    sparsity: usize,
    iters: usize,
    seed: u64,
) -> PyResult<Dictionary> {
    let vectors: Vec<spectral::SdsVector> = sds_per_graph
        .into_iter()
        .map(|scores| spectral::SdsVector { scores })
        .collect();
    let ensemble = dictionary::build_ensemble_matrix(&vectors, z).map_err(err)?;
    dictionary::ksvd_train(&ensemble, atoms, sparsity, iters, seed)
        .map(|inner| Dictionary { inner })
        .map_err(err)
}

/// Hub-and-cliques benchmark graph: node 0 is the hub, each clique's
/// first node is its gateway.
#[pyfunction]
fn star_of_cliques(cliques: usize, clique_size: usize) -> Graph {
    Graph {
        inner: generators::star_of_cliques(cliques, clique_size),
    }
}

/// Seeded Erdos-Renyi graph.
#[pyfunction]
fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    Graph {
        inner: generators::erdos_renyi(n, p, seed),
    }
}

/// Copy of `g` with extra edges attached to `hub`.
#[pyfunction]
fn inject_star_burst(g: &Graph, hub: usize, extra_edges: usize, seed: u64) -> Graph {
    Graph {
        inner: generators::inject_star_burst(&g.inner, hub, extra_edges, seed),
    }
}

#[pymodule]
fn mcgraph_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<FeatureMatrix>()?;
    m.add_class::<Pca>()?;
    m.add_class::<Dictionary>()?;
    m.add_function(wrap_pyfunction!(feature_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(mc_gpca, m)?)?;
    m.add_function(wrap_pyfunction!(sds, m)?)?;
    m.add_function(wrap_pyfunction!(sds_summary, m)?)?;
    m.add_function(wrap_pyfunction!(train_dictionary, m)?)?;
    m.add_function(wrap_pyfunction!(star_of_cliques, m)?)?;
    m.add_function(wrap_pyfunction!(erdos_renyi, m)?)?;
    m.add_function(wrap_pyfunction!(inject_star_burst, m)?)?;
    Ok(())
}
