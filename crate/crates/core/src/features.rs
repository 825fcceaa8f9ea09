//! Assembly of the n x p multi-centrality feature matrix: walk
//! statistics, centrality columns and reference-node distances, with
//! column normalization and mean-row centering.

use nalgebra::DMatrix;

use crate::centrality::{self, Measure};
use crate::error::{Error, Result};
use crate::graph::{degree_vectors, shortest_paths, Graph, Metric};
use crate::walks::WalkStatistics;

/// How reference nodes are chosen.
#[derive(Debug, Clone)]
pub enum ReferenceSelection {
    /// The r nodes of highest total degree, ties broken by index.
    MaxDegree,
    Explicit(Vec<usize>),
}

/// Which columns go into the feature matrix.
#[derive(Debug, Clone)]
pub struct FeatureSpec {
    pub max_hops: usize,
    pub centralities: Vec<Measure>,
    pub reference_count: usize,
    pub reference_selection: ReferenceSelection,
    pub distance_metric: Metric,
    /// Drop columns whose measure is infeasible for the graph type
    /// instead of emitting them with the documented conventions.
    pub strict_feasibility: bool,
    /// Measure distances reference -> node instead of node -> reference.
    pub distances_from_reference: bool,
}

impl FeatureSpec {
    pub fn new(max_hops: usize, centralities: Vec<Measure>, reference_count: usize) -> FeatureSpec {
        FeatureSpec {
            max_hops,
            centralities,
            reference_count,
            reference_selection: ReferenceSelection::MaxDegree,
            distance_metric: Metric::Hop,
            strict_feasibility: false,
            distances_from_reference: false,
        }
    }

    /// The configuration used for the cyber-graph experiments: 20 hops,
    /// all six centralities, 10 max-degree references (p = 56).
    pub fn cyber_default() -> FeatureSpec {
        FeatureSpec::new(20, Measure::ALL.to_vec(), 10)
    }

    pub fn column_count(&self) -> usize {
        2 * self.max_hops + self.centralities.len() + self.reference_count
    }
}

/// Normalized, centered structural feature matrix for one graph.
#[derive(Debug, Clone)]
pub struct FeatureMatrix {
    pub matrix: DMatrix<f64>,
    pub column_names: Vec<String>,
    /// Raw L2 norm of each column before normalization.
    pub column_norms: Vec<f64>,
    pub centered: bool,
}

impl FeatureMatrix {
    pub fn node_count(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn feature_count(&self) -> usize {
        self.matrix.ncols()
    }

    /// CSV with a header row and a leading node-label column.
    pub fn to_csv(&self, labels: &[String]) -> String {
        let mut out = String::from("node");
        for name in &self.column_names {
            out.push(',');
            out.push_str(name);
        }
        out.push('\n');
        for i in 0..self.matrix.nrows() {
            out.push_str(&labels[i]);
            for j in 0..self.matrix.ncols() {
                out.push_str(&format!(",{}", self.matrix[(i, j)]));
            }
            out.push('\n');
        }
        out
    }
}

/// The r nodes of highest total degree, ties broken by ascending index.
pub fn select_reference_nodes(g: &Graph, r: usize) -> Result<Vec<usize>> {
    if r > g.node_count() {
        return Err(Error::TooManyReferences {
            requested: r,
            node_count: g.node_count(),
        });
    }
    let (_, _, total) = degree_vectors(g);
    let mut order: Vec<usize> = (0..g.node_count()).collect();
    order.sort_by(|&a, &b| total[b].cmp(&total[a]).then(a.cmp(&b)));
    order.truncate(r);
    Ok(order)
}

/// Distance of every node to each reference node, as an n x r matrix in
/// row-major rows. Unreachable entries are replaced by twice the largest
/// finite distance in their column.
pub fn reference_distance_features(
    g: &Graph,
    refs: &[usize],
    metric: Metric,
    from_reference: bool,
) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(refs.len());
    for &r in refs {
        let dist = if from_reference || !g.is_directed() {
            shortest_paths(g, r, metric).dist
        } else {
            // node -> reference along edge directions = reference -> node
            // in the reversed graph.
            let rev = reverse(g);
            shortest_paths(&rev, r, metric).dist
        };
        let max_finite = dist
            .iter()
            .filter(|d| d.is_finite())
            .fold(0.0f64, |a, &b| a.max(b));
        let cap = 2.0 * max_finite;
        columns.push(dist.iter().map(|&d| if d.is_finite() { d } else { cap }).collect());
    }
    let mut rows = vec![vec![0.0; refs.len()]; n];
    for (j, col) in columns.iter().enumerate() {
        for i in 0..n {
            rows[i][j] = col[i];
        }
    }
    rows
}

fn reverse(g: &Graph) -> Graph {
    let edges: Vec<(usize, usize, Option<f64>)> = g
        .edges()
        .iter()
        .map(|e| (e.target, e.source, Some(e.weight)))
        .collect();
    Graph::build(&edges, g.is_directed(), Some(g.node_count())).expect("reversal preserves validity")
}

/// Build the full feature matrix: walk counts, walk weight totals,
/// centralities in fixed order, reference distances; then unit-normalize
/// each nonzero column and subtract the mean row.
pub fn assemble(g: &Graph, spec: &FeatureSpec) -> Result<FeatureMatrix> {
    let n = g.node_count();
    let mut columns: Vec<(String, Vec<f64>)> = Vec::new();

    if spec.max_hops > 0 {
        let walks = WalkStatistics::compute(g, spec.max_hops)?;
        for h in 1..=spec.max_hops {
            columns.push((format!("walk_count_h{h}"), walks.counts[h - 1].clone()));
        }
        for h in 1..=spec.max_hops {
            columns.push((format!("walk_weight_h{h}"), walks.weight_totals[h - 1].clone()));
        }
    }

    let connected = g.is_connected();
    let mut measures: Vec<Measure> = spec.centralities.clone();
    measures.sort();
    measures.dedup();
    for measure in measures {
        if spec.strict_feasibility && !measure.feasible_for(g.is_directed(), connected) {
            continue;
        }
        let cv = centrality::compute(g, measure)?;
        columns.push((measure.name().to_string(), cv.values));
    }

    if spec.reference_count > 0 {
        let refs = match &spec.reference_selection {
            ReferenceSelection::MaxDegree => select_reference_nodes(g, spec.reference_count)?,
            ReferenceSelection::Explicit(list) => {
                if list.len() != spec.reference_count {
                    return Err(Error::Dimension(format!(
                        "explicit reference list has {} nodes, expected {}",
                        list.len(),
                        spec.reference_count
                    )));
                }
                list.clone()
            }
        };
        let rows = reference_distance_features(g, &refs, spec.distance_metric, spec.distances_from_reference);
        for (j, &r) in refs.iter().enumerate() {
            let col: Vec<f64> = (0..n).map(|i| rows[i][j]).collect();
            columns.push((format!("dist_ref_{}", g.labels()[r]), col));
        }
    }

    let p = columns.len();
    let mut matrix = DMatrix::<f64>::zeros(n, p);
    let mut names = Vec::with_capacity(p);
    for (j, (name, col)) in columns.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFiniteFeature {
                    column: name.clone(),
                    row: i,
                });
            }
            matrix[(i, j)] = x;
        }
        names.push(name.clone());
    }

    // Unit-normalize nonzero columns, then subtract the mean row.
    let mut norms = Vec::with_capacity(p);
    for j in 0..p {
        let norm = matrix.column(j).norm();
        norms.push(norm);
        if norm > 0.0 {
            for i in 0..n {
                matrix[(i, j)] /= norm;
            }
        }
    }
    for j in 0..p {
        let mean = matrix.column(j).sum() / n as f64;
        for i in 0..n {
            matrix[(i, j)] -= mean;
        }
    }

    Ok(FeatureMatrix {
        matrix,
        column_names: names,
        column_norms: norms,
        centered: true,
    })
}
