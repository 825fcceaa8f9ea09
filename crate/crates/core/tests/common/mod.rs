//! Brute-force oracles shared by the integration tests. Everything here
//! is deliberately naive and independent of the library's algorithms:
//! walk enumeration by DFS, shortest paths by exhaustive simple-path
//! enumeration, eigenvalues by Jacobi rotations on small dense matrices.

#![allow(dead_code)]

use mcgraph::graph::{Graph, Metric};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random graph as an edge list: each ordered (directed) or unordered
/// (undirected) pair appears with probability `p`; weights uniform in
/// [0.1, 2.0] when `weighted`, else unit.
pub fn random_graph(
    rng: &mut ChaCha8Rng,
    n: usize,
    p: f64,
    directed: bool,
    weighted: bool,
) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || (!directed && j < i) {
                continue;
            }
            if rng.random_range(0.0..1.0) < p {
                let w = if weighted {
                    Some(rng.random_range(0.1..2.0))
                } else {
                    None
                };
                edges.push((i, j, w));
            }
        }
    }
    Graph::build(&edges, directed, Some(n)).expect("random edges are valid")
}

pub fn dense_weights(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let mut w = vec![vec![0.0; n]; n];
    for i in 0..n {
        for &(j, wij) in g.out_neighbors(i) {
            w[i][j] = wij;
        }
    }
    w
}

pub fn dense_adjacency(g: &Graph) -> Vec<Vec<f64>> {
    dense_weights(g)
        .into_iter()
        .map(|row| row.into_iter().map(|x| if x > 0.0 { 1.0 } else { 0.0 }).collect())
        .collect()
}

/// Number of h-hop walks from each node by dense matrix powers A^h 1.
pub fn walk_count_oracle(g: &Graph, max_hops: usize) -> Vec<Vec<f64>> {
    let a = dense_adjacency(g);
    let n = g.node_count();
    let mut v = vec![1.0; n];
    let mut out = Vec::new();
    for _ in 0..max_hops {
        let mut next = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                next[i] += a[i][j] * v[j];
            }
        }
        out.push(next.clone());
        v = next;
    }
    out
}

/// Total h-hop walk weight from each node by explicit enumeration of
/// every walk of exactly h edges (vertices may repeat).
pub fn walk_weight_oracle(g: &Graph, max_hops: usize) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let mut out = vec![vec![0.0; n]; max_hops];
    fn recurse(
        g: &Graph,
        node: usize,
        depth_left: usize,
        weight_so_far: f64,
        start: usize,
        hop: usize,
        out: &mut [Vec<f64>],
    ) {
        if depth_left == 0 {
            out[hop - 1][start] += weight_so_far;
            return;
        }
        for &(next, w) in g.out_neighbors(node) {
            recurse(g, next, depth_left - 1, weight_so_far + w, start, hop, out);
        }
    }
    for start in 0..n {
        for hop in 1..=max_hops {
            recurse(g, start, hop, 0.0, start, hop, &mut out);
        }
    }
    out
}

/// All simple paths between two nodes, each as (node sequence, cost).
fn all_simple_paths(g: &Graph, from: usize, to: usize, metric: Metric) -> Vec<(Vec<usize>, f64)> {
    let mut results = Vec::new();
    let mut path = vec![from];
    let mut visited = vec![false; g.node_count()];
    visited[from] = true;
    fn dfs(
        g: &Graph,
        at: usize,
        to: usize,
        metric: Metric,
        cost: f64,
        path: &mut Vec<usize>,
        visited: &mut Vec<bool>,
        results: &mut Vec<(Vec<usize>, f64)>,
    ) {
        if at == to {
            results.push((path.clone(), cost));
            return;
        }
        for &(next, w) in g.out_neighbors(at) {
            if visited[next] {
                continue;
            }
            visited[next] = true;
            path.push(next);
            let step = match metric {
                Metric::Hop => 1.0,
                Metric::Weighted => w,
            };
            dfs(g, next, to, metric, cost + step, path, visited, results);
            path.pop();
            visited[next] = false;
        }
    }
    dfs(g, from, to, metric, 0.0, &mut path, &mut visited, &mut results);
    results
}

const TIE_EPS: f64 = 1e-9;

/// Shortest-path distance and the set of minimal paths per pair.
pub struct PairPaths {
    pub dist: f64,
    pub shortest: Vec<Vec<usize>>,
}

pub fn enumerate_pair(g: &Graph, from: usize, to: usize, metric: Metric) -> PairPaths {
    if from == to {
        return PairPaths {
            dist: 0.0,
            shortest: vec![vec![from]],
        };
    }
    let paths = all_simple_paths(g, from, to, metric);
    if paths.is_empty() {
        return PairPaths {
            dist: f64::INFINITY,
            shortest: vec![],
        };
    }
    let best = paths.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let shortest = paths
        .into_iter()
        .filter(|p| p.1 <= best + TIE_EPS)
        .map(|p| p.0)
        .collect();
    PairPaths {
        dist: best,
        shortest,
    }
}

/// Betweenness by direct evaluation of the pair-dependency sum over
/// enumerated shortest paths.
pub fn betweenness_oracle(g: &Graph, metric: Metric) -> Vec<f64> {
    let n = g.node_count();
    let mut values = vec![0.0; n];
    for k in 0..n {
        for j in 0..n {
            if k == j {
                continue;
            }
            if !g.is_directed() && j < k {
                continue;
            }
            let pair = enumerate_pair(g, k, j, metric);
            let sigma = pair.shortest.len();
            if sigma == 0 {
                continue;
            }
            for i in 0..n {
                if i == k || i == j {
                    continue;
                }
                let through = pair
                    .shortest
                    .iter()
                    .filter(|path| path[1..path.len() - 1].contains(&i))
                    .count();
                values[i] += through as f64 / sigma as f64;
            }
        }
    }
    values
}

/// Closeness by enumerated distances; unreachable targets are skipped
/// and a node reaching nothing scores 0.
pub fn closeness_oracle(g: &Graph, metric: Metric) -> Vec<f64> {
    let n = g.node_count();
    (0..n)
        .map(|i| {
            let sum: f64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| enumerate_pair(g, i, j, metric).dist)
                .filter(|d| d.is_finite())
                .sum();
            if sum > 0.0 {
                1.0 / sum
            } else {
                0.0
            }
        })
        .collect()
}

/// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations.
/// Returns them sorted descending.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..200 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-24 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-15 {
                    continue;
                }
                let theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    eig
}

/// Singular values of a dense matrix via Jacobi on the Gram matrix.
pub fn singular_values_oracle(rows: &[Vec<f64>]) -> Vec<f64> {
    let n = rows.len();
    let p = rows[0].len();
    let mut gram = vec![vec![0.0; p]; p];
    for a in 0..p {
        for b in 0..p {
            let mut acc = 0.0;
            for i in 0..n {
                acc += rows[i][a] * rows[i][b];
            }
            gram[a][b] = acc;
        }
    }
    jacobi_eigenvalues(gram)
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect()
}
