//! The six per-node centrality measures (degree, betweenness, closeness,
//! eigenvector, ego, LFVC) together with the feasibility policy that maps
//! graph type to measure applicability.

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{degree_vectors, shortest_paths, Graph, Metric};

pub const EIGENVECTOR_TOL: f64 = 1e-10;
pub const EIGENVECTOR_MAX_ITER: usize = 1000;
pub const LFVC_TOL: f64 = 1e-8;

/// Centrality measures in their fixed column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    Degree,
    Betweenness,
    Closeness,
    Eigenvector,
    Ego,
    Lfvc,
}

impl Measure {
    pub const ALL: [Measure; 6] = [
        Measure::Degree,
        Measure::Betweenness,
        Measure::Closeness,
        Measure::Eigenvector,
        Measure::Ego,
        Measure::Lfvc,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Measure::Degree => "degree",
            Measure::Betweenness => "betweenness",
            Measure::Closeness => "closeness",
            Measure::Eigenvector => "eigenvector",
            Measure::Ego => "ego",
            Measure::Lfvc => "lfvc",
        }
    }

    pub fn parse(s: &str) -> Option<Measure> {
        Measure::ALL.iter().copied().find(|m| m.name() == s)
    }

    /// Applicability of a measure given the graph type. Measures based on
    /// shortest-path distance are infeasible on disconnected graphs, and
    /// LFVC is defined only after dropping edge directions.
    pub fn feasible_for(&self, directed: bool, connected: bool) -> bool {
        match self {
            Measure::Betweenness | Measure::Closeness => connected,
            Measure::Lfvc => !directed,
            _ => true,
        }
    }
}

/// One centrality measure evaluated on every node.
#[derive(Debug, Clone)]
pub struct CentralityVector {
    pub measure: Measure,
    pub values: Vec<f64>,
    pub feasible: bool,
}

/// Dispatch a measure with the default solver parameters.
pub fn compute(g: &Graph, measure: Measure) -> Result<CentralityVector> {
    match measure {
        Measure::Degree => Ok(degree_centrality(g)),
        Measure::Betweenness => Ok(betweenness(g)),
        Measure::Closeness => Ok(closeness(g)),
        Measure::Eigenvector => eigenvector_centrality(g, EIGENVECTOR_TOL, EIGENVECTOR_MAX_ITER),
        Measure::Ego => Ok(ego_centrality(g)),
        Measure::Lfvc => lfvc(g, LFVC_TOL),
    }
}

pub fn degree_centrality(g: &Graph) -> CentralityVector {
    let (_, _, total) = degree_vectors(g);
    CentralityVector {
        measure: Measure::Degree,
        values: total.into_iter().map(|d| d as f64).collect(),
        feasible: true,
    }
}

fn path_metric(g: &Graph) -> Metric {
    if g.is_weighted() {
        Metric::Weighted
    } else {
        Metric::Hop
    }
}

/// Brandes accumulation. Directed graphs sum the pair dependency over all
/// ordered pairs; undirected graphs count each unordered pair once.
pub fn betweenness(g: &Graph) -> CentralityVector {
    let n = g.node_count();
    let metric = path_metric(g);
    let partials: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|s| {
            let sp = shortest_paths(g, s, metric);
            let mut delta = vec![0.0; n];
            let mut acc = vec![0.0; n];
            for &w in sp.order.iter().rev() {
                let coeff = (1.0 + delta[w]) / sp.path_counts[w];
                for &v in &sp.predecessors[w] {
                    delta[v] += sp.path_counts[v] * coeff;
                }
                if w != s {
                    acc[w] += delta[w];
                }
            }
            acc
        })
        .collect();
    let mut values = vec![0.0; n];
    for part in partials {
        for (v, x) in values.iter_mut().zip(part) {
            *v += x;
        }
    }
    if !g.is_directed() {
        for v in &mut values {
            *v /= 2.0;
        }
    }
    CentralityVector {
        measure: Measure::Betweenness,
        values,
        feasible: Measure::Betweenness.feasible_for(g.is_directed(), g.is_connected()),
    }
}

/// Reciprocal of the summed shortest-path distance to all reachable
/// nodes. Nodes that reach nothing score 0.
pub fn closeness(g: &Graph) -> CentralityVector {
    let n = g.node_count();
    let metric = path_metric(g);
    let values: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let sp = shortest_paths(g, i, metric);
            let sum: f64 = sp
                .dist
                .iter()
                .enumerate()
                .filter(|&(j, d)| j != i && d.is_finite())
                .map(|(_, d)| d)
                .sum();
            if sum > 0.0 {
                1.0 / sum
            } else {
                0.0
            }
        })
        .collect();
    CentralityVector {
        measure: Measure::Closeness,
        values,
        feasible: Measure::Closeness.feasible_for(g.is_directed(), g.is_connected()),
    }
}

/// Power iteration for the dominant right eigenvector of W^T. The result
/// is unit L2 norm with the largest-magnitude entry positive.
pub fn eigenvector_centrality(g: &Graph, tol: f64, max_iter: usize) -> Result<CentralityVector> {
    let n = g.node_count();
    if g.edges().is_empty() {
        return Err(Error::ZeroMatrix);
    }
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    // Shifted iteration: W^T + cI has the same eigenvectors but a strict
    // modulus gap at the Perron root, so bipartite (+/- lambda) and
    // periodic spectra still converge.
    let shift = 0.5
        * (0..n)
            .map(|i| g.out_neighbors(i).iter().map(|&(_, w)| w).sum::<f64>())
            .fold(0.0f64, f64::max)
            .max(1.0);
    let mut converged = false;
    for _ in 0..max_iter {
        let mut next = vec![0.0; n];
        for i in 0..n {
            for &(j, w) in g.out_neighbors(i) {
                next[j] += w * v[i];
            }
        }
        for (x, &vi) in next.iter_mut().zip(v.iter()) {
            *x += shift * vi;
        }
        let norm = next.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut next {
            *x /= norm;
        }
        let diff = v
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        v = next;
        if diff < tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { max_iter });
    }
    fix_sign(&mut v);
    Ok(CentralityVector {
        measure: Measure::Eigenvector,
        values: v,
        feasible: true,
    })
}

fn fix_sign(v: &mut [f64]) {
    let mut best = 0usize;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v[best] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// Local betweenness over the closed neighborhood: pairs of ego-net
/// members not directly connected contribute the reciprocal of their
/// two-path weight count. Zero denominators are skipped.
pub fn ego_centrality(g: &Graph) -> CentralityVector {
    let n = g.node_count();
    let values: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let neighbors = g.neighbors_union(i);
            if neighbors.len() <= 1 {
                return 0.0;
            }
            let mut members = vec![i];
            members.extend(neighbors);
            let m = members.len();
            let mut local_w = DMatrix::<f64>::zeros(m, m);
            for (a, &u) in members.iter().enumerate() {
                for (b, &v) in members.iter().enumerate() {
                    local_w[(a, b)] = g.weight(u, v);
                }
            }
            let squared = &local_w * &local_w;
            let mut score = 0.0;
            for a in 0..m {
                for b in (a + 1)..m {
                    if g.has_edge(members[a], members[b]) {
                        continue;
                    }
                    let two_path = squared[(a, b)];
                    if two_path > 0.0 {
                        score += 1.0 / two_path;
                    }
                }
            }
            score
        })
        .collect();
    CentralityVector {
        measure: Measure::Ego,
        values,
        feasible: true,
    }
}

/// Local Fiedler vector centrality. Edge directions are dropped by
/// symmetrizing W, and each node scores the weighted sum of squared
/// Fiedler-vector differences to its neighbors, so the total equals
/// twice the Fiedler value.
pub fn lfvc(g: &Graph, tol: f64) -> Result<CentralityVector> {
    let n = g.node_count();
    if g.edges().is_empty() {
        return Err(Error::AllEigenvaluesZero);
    }
    let mut w_sym = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for &(j, w) in g.out_neighbors(i) {
            w_sym[(i, j)] += w / 2.0;
            w_sym[(j, i)] += w / 2.0;
        }
    }
    let mut laplacian = -w_sym.clone();
    for i in 0..n {
        let row_sum: f64 = w_sym.row(i).sum();
        laplacian[(i, i)] += row_sum;
    }
    let eig = SymmetricEigen::new(laplacian);
    let lambda_max = eig.eigenvalues.iter().cloned().fold(0.0f64, f64::max);
    let threshold = tol * lambda_max.max(1.0);
    let mut best: Option<(f64, usize)> = None;
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda > threshold && best.map_or(true, |(b, _)| lambda < b) {
            best = Some((lambda, k));
        }
    }
    let (lambda, _) = best.ok_or(Error::AllEigenvaluesZero)?;
    // The target eigenvalue may be degenerate (symmetric graphs); any
    // single eigenvector would then be basis-dependent. Averaging the
    // score over an orthonormal basis of the eigenspace is invariant and
    // reduces to the usual formula when the eigenvalue is simple.
    let members: Vec<usize> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|&(_, &l)| (l - lambda).abs() <= threshold)
        .map(|(k, _)| k)
        .collect();
    let m = members.len() as f64;
    let values: Vec<f64> = (0..n)
        .map(|i| {
            let mut acc = 0.0;
            for &k in &members {
                let y = eig.eigenvectors.column(k);
                for j in 0..n {
                    let w = w_sym[(i, j)];
                    if w > 0.0 {
                        let d = y[i] - y[j];
                        acc += w * d * d;
                    }
                }
            }
            acc / m
        })
        .collect();
    Ok(CentralityVector {
        measure: Measure::Lfvc,
        values,
        feasible: Measure::Lfvc.feasible_for(g.is_directed(), g.is_connected()),
    })
}
