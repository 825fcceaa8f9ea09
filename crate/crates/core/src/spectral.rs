//! Multi-centrality graph PCA over the feature matrix and the per-node
//! structural difference score derived from its coordinates.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::graph::Graph;

/// Top-q right singular basis of the feature matrix with per-node
/// coordinates Y = X V_q.
#[derive(Debug, Clone)]
pub struct PcaResult {
    /// p x q orthonormal basis; each column's largest-magnitude entry is
    /// positive.
    pub basis: DMatrix<f64>,
    /// Nonincreasing, zero-padded past the rank.
    pub singular_values: Vec<f64>,
    /// n x q structural coordinates.
    pub coordinates: DMatrix<f64>,
    pub explained_variance_ratio: Vec<f64>,
}

/// Dense SVD with singular values sorted descending and the matching
/// right singular vectors as columns of a p x k matrix.
fn sorted_right_svd(x: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let p = x.ncols();
    // Decompose the tall orientation; the bidiagonalization loses
    // accuracy on wide inputs. For X^T = V S U^T the right singular
    // vectors of X are the left ones of X^T.
    let wide = x.ncols() > x.nrows();
    let (singular_values, vectors) = if wide {
        let svd = x.transpose().svd(true, false);
        (svd.singular_values, svd.u.expect("u requested"))
    } else {
        let svd = x.clone().svd(false, true);
        (
            svd.singular_values,
            svd.v_t.expect("v_t requested").transpose(),
        )
    };
    // Recompute each singular value as ||X v_k||: on nearly
    // rank-deficient inputs the values reported by the decomposition can
    // drift from the returned vectors by more than the identities in the
    // public API tolerate, and this keeps sigma consistent with the
    // projection actually produced.
    let k = singular_values.len();
    let norms: Vec<f64> = (0..k).map(|j| (x * vectors.column(j)).norm()).collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));
    let mut v = DMatrix::<f64>::zeros(p, k);
    let mut sigma = Vec::with_capacity(k);
    for (dst, &src) in order.iter().enumerate() {
        sigma.push(norms[src]);
        for j in 0..p {
            v[(j, dst)] = vectors[(j, src)];
        }
    }
    (sigma, v)
}

/// Extend the columns of `v` (p x k, orthonormal) to q columns by
/// Gram-Schmidt against the standard basis. Deterministic.
fn complete_basis(v: &DMatrix<f64>, q: usize) -> DMatrix<f64> {
    let p = v.nrows();
    let mut cols: Vec<DVector<f64>> = (0..v.ncols().min(q)).map(|j| v.column(j).into()).collect();
    let mut e = 0usize;
    while cols.len() < q {
        assert!(e < p, "cannot complete basis past dimension p");
        let mut cand = DVector::<f64>::zeros(p);
        cand[e] = 1.0;
        e += 1;
        for c in &cols {
            let proj = c.dot(&cand);
            cand -= c * proj;
        }
        let norm = cand.norm();
        if norm > 1e-8 {
            cols.push(cand / norm);
        }
    }
    DMatrix::from_columns(&cols)
}

fn fix_column_signs(m: &mut DMatrix<f64>) {
    for mut col in m.column_iter_mut() {
        let mut best = 0usize;
        for (i, x) in col.iter().enumerate() {
            if x.abs() > col[best].abs() {
                best = i;
            }
        }
        if col[best] < 0.0 {
            col.neg_mut();
        }
    }
}

/// PCA of a centered feature matrix: top-q right singular vectors,
/// coordinates and explained variance.
pub fn mc_gpca(x: &FeatureMatrix, q: usize) -> Result<PcaResult> {
    let p = x.feature_count();
    if q == 0 || q > p {
        return Err(Error::Dimension(format!(
            "q = {q} outside [1, p] with p = {p}"
        )));
    }
    assert!(x.centered, "feature matrix must be centered");
    let (sigma, v) = sorted_right_svd(&x.matrix);
    let mut basis = complete_basis(&v, q);
    fix_column_signs(&mut basis);
    let mut singular_values: Vec<f64> = sigma.iter().copied().take(q).collect();
    singular_values.resize(q, 0.0);
    let total: f64 = sigma.iter().map(|s| s * s).sum();
    let explained_variance_ratio = singular_values
        .iter()
        .map(|s| if total > 0.0 { s * s / total } else { 0.0 })
        .collect();
    let coordinates = &x.matrix * &basis;
    Ok(PcaResult {
        basis,
        singular_values,
        coordinates,
        explained_variance_ratio,
    })
}

/// Per-node structural difference scores.
#[derive(Debug, Clone)]
pub struct SdsVector {
    pub scores: Vec<f64>,
}

/// Mean squared coordinate distance to neighbors, normalized by
/// degree + 1. Neighbors are nodes connected to or from i; singleton
/// nodes score exactly 0.
pub fn sds(g: &Graph, pca: &PcaResult) -> SdsVector {
    let n = g.node_count();
    assert_eq!(
        pca.coordinates.nrows(),
        n,
        "coordinate rows must match node count"
    );
    let scores = (0..n)
        .map(|i| {
            let neighbors = g.neighbors_union(i);
            let d = neighbors.len();
            let mut acc = 0.0;
            for j in neighbors {
                let diff = pca.coordinates.row(i) - pca.coordinates.row(j);
                acc += diff.norm_squared();
            }
            acc / (d as f64 + 1.0)
        })
        .collect();
    SdsVector { scores }
}

/// Per-graph summary reduction of an SDS vector.
#[derive(Debug, Clone, Copy)]
pub enum SdsReducer {
    Mean,
    Max,
    TopKMean(usize),
}

pub fn graph_sds_statistic(scores: &SdsVector, reducer: SdsReducer) -> Result<f64> {
    let s = &scores.scores;
    if s.is_empty() {
        return Err(Error::EmptyInput("SDS vector"));
    }
    Ok(match reducer {
        SdsReducer::Mean => s.iter().sum::<f64>() / s.len() as f64,
        SdsReducer::Max => s.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        SdsReducer::TopKMean(k) => {
            let k = k.min(s.len()).max(1);
            let mut sorted = s.clone();
            sorted.sort_by(|a, b| b.total_cmp(a));
            sorted[..k].iter().sum::<f64>() / k as f64
        }
    })
}
