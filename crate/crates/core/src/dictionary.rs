//! Dictionary learning over graph ensembles: each graph is summarized by
//! its z largest structural difference scores, and K-SVD with OMP sparse
//! coding factors the resulting z x g matrix into unit-norm atoms and
//! S-sparse coefficients. Graphs are then classified by K-means on the
//! coefficient columns.

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::SdsVector;

const OMP_RESIDUAL_TOL: f64 = 1e-12;
const KSVD_IMPROVEMENT_TOL: f64 = 1e-10;

/// The z x g ensemble matrix of per-graph top-z SDS profiles.
#[derive(Debug, Clone)]
pub struct EnsembleFeatures {
    pub z: usize,
    pub graph_count: usize,
    pub matrix: DMatrix<f64>,
    pub centered: bool,
}

/// Column ell = the z largest SDS values of graph ell sorted descending
/// (ties broken by node index), zero-padded for graphs with fewer than z
/// nodes, then centered by each column's own mean.
pub fn build_ensemble_matrix(sds_per_graph: &[SdsVector], z: usize) -> Result<EnsembleFeatures> {
    assert!(z >= 1, "z must be positive");
    if sds_per_graph.is_empty() {
        return Err(Error::EmptyInput("graph ensemble"));
    }
    let g = sds_per_graph.len();
    let mut matrix = DMatrix::<f64>::zeros(z, g);
    for (col, sds) in sds_per_graph.iter().enumerate() {
        let mut indexed: Vec<(f64, usize)> = sds
            .scores
            .iter()
            .enumerate()
            .map(|(i, &s)| (s, i))
            .collect();
        indexed.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        for (row, &(score, _)) in indexed.iter().take(z).enumerate() {
            matrix[(row, col)] = score;
        }
        let mean = matrix.column(col).sum() / z as f64;
        for row in 0..z {
            matrix[(row, col)] -= mean;
        }
    }
    Ok(EnsembleFeatures {
        z,
        graph_count: g,
        matrix,
        centered: true,
    })
}

/// Greedy orthogonal matching pursuit: pick the atom with maximal
/// absolute correlation to the residual, refit by least squares on the
/// selected set, stop after `s` atoms or when the residual vanishes.
pub fn omp_encode(atoms: &DMatrix<f64>, signal: &DVector<f64>, s: usize) -> DVector<f64> {
    let k = atoms.ncols();
    assert!(s >= 1 && s <= k, "sparsity must lie in [1, K]");
    let mut selected: Vec<usize> = Vec::new();
    let mut coeffs = DVector::<f64>::zeros(k);
    let mut residual = signal.clone();
    while selected.len() < s && residual.norm() >= OMP_RESIDUAL_TOL {
        let mut best: Option<(f64, usize)> = None;
        for j in 0..k {
            if selected.contains(&j) {
                continue;
            }
            let corr = atoms.column(j).dot(&residual).abs();
            if best.map_or(true, |(b, _)| corr > b) {
                best = Some((corr, j));
            }
        }
        let (corr, j) = best.expect("at least one unselected atom");
        if corr == 0.0 {
            break;
        }
        selected.push(j);
        let sub = atoms.select_columns(selected.iter());
        let solution = sub
            .clone()
            .svd(true, true)
            .solve(signal, 1e-13)
            .expect("SVD least squares");
        residual = signal - &sub * &solution;
        coeffs.fill(0.0);
        for (pos, &idx) in selected.iter().enumerate() {
            coeffs[idx] = solution[pos];
        }
    }
    coeffs
}

/// Learned dictionary with sparse coefficients and the per-sweep
/// representation error.
#[derive(Debug, Clone)]
pub struct DictionaryModel {
    /// z x K, unit-norm columns.
    pub atoms: DMatrix<f64>,
    /// K x g, at most `sparsity` nonzeros per column.
    pub coefficients: DMatrix<f64>,
    /// Frobenius error after each sweep; nonincreasing.
    pub training_log: Vec<f64>,
    pub sparsity: usize,
    pub seed: u64,
    /// Set when K exceeds the number of training columns, which makes a
    /// non-redundant dictionary unlikely.
    pub likely_degenerate: bool,
}

fn frobenius_error(z: &DMatrix<f64>, d: &DMatrix<f64>, c: &DMatrix<f64>) -> f64 {
    (z - d * c).norm()
}

/// Encode every column, but keep a column's previous coefficients when
/// the greedy pursuit would represent it worse. This keeps the sweep
/// error monotone.
fn encode_all(
    z: &DMatrix<f64>,
    atoms: &DMatrix<f64>,
    previous: Option<&DMatrix<f64>>,
    s: usize,
) -> DMatrix<f64> {
    let g = z.ncols();
    let k = atoms.ncols();
    let mut c = DMatrix::<f64>::zeros(k, g);
    for col in 0..g {
        let signal: DVector<f64> = z.column(col).into();
        let code = omp_encode(atoms, &signal, s);
        let new_err = (&signal - atoms * &code).norm();
        let use_new = match previous {
            Some(prev) => {
                let old: DVector<f64> = prev.column(col).into();
                let old_err = (&signal - atoms * &old).norm();
                new_err <= old_err
            }
            None => true,
        };
        if use_new {
            c.set_column(col, &code);
        } else {
            c.set_column(col, &previous.unwrap().column(col));
        }
    }
    c
}

/// K-SVD: alternate OMP sparse coding with per-atom rank-1 SVD updates.
/// Deterministic for a given seed.
pub fn ksvd_train(
    zmat: &EnsembleFeatures,
    k: usize,
    s: usize,
    iters: usize,
    seed: u64,
) -> Result<DictionaryModel> {
    if k == 0 || s == 0 || s > k {
        return Err(Error::Dimension(format!(
            "need 1 <= sparsity ({s}) <= atoms ({k})"
        )));
    }
    let z = &zmat.matrix;
    let dim = z.nrows();
    let g = z.ncols();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Initialize atoms from distinct columns of Z, renormalized; fall
    // back to random unit vectors for zero-norm picks.
    let mut indices: Vec<usize> = (0..g).collect();
    indices.shuffle(&mut rng);
    let mut atoms = DMatrix::<f64>::zeros(dim, k);
    for a in 0..k {
        let col = indices.get(a).map(|&i| z.column(i).into_owned());
        let col = match col {
            Some(c) if c.norm() > 0.0 => c,
            _ => DVector::from_fn(dim, |_, _| rng.random_range(-1.0..1.0)),
        };
        let norm = col.norm();
        atoms.set_column(a, &(col / norm));
    }

    let mut coeffs = encode_all(z, &atoms, None, s);
    let mut training_log: Vec<f64> = Vec::new();

    for _ in 0..iters {
        // Atom update stage: sequential per atom, reading the latest D/C.
        for a in 0..k {
            let users: Vec<usize> = (0..g).filter(|&col| coeffs[(a, col)] != 0.0).collect();
            if users.is_empty() {
                // Replace unused atoms by the worst-represented column.
                let mut worst = (0usize, -1.0f64);
                for col in 0..g {
                    let err = (z.column(col) - &atoms * coeffs.column(col)).norm();
                    if err > worst.1 {
                        worst = (col, err);
                    }
                }
                let col = z.column(worst.0).into_owned();
                let norm = col.norm();
                if norm > 0.0 {
                    atoms.set_column(a, &(col / norm));
                }
                continue;
            }
            // Residual excluding this atom's contribution, restricted to
            // the columns that use it.
            let mut residual = DMatrix::<f64>::zeros(dim, users.len());
            for (pos, &col) in users.iter().enumerate() {
                let mut r: DVector<f64> = z.column(col).into();
                for b in 0..k {
                    if b != a {
                        r -= atoms.column(b) * coeffs[(b, col)];
                    }
                }
                residual.set_column(pos, &r);
            }
            let svd = residual.clone().svd(true, true);
            let u = svd.u.as_ref().expect("u requested");
            let v_t = svd.v_t.as_ref().expect("v_t requested");
            let mut top = 0usize;
            for (i, &sv) in svd.singular_values.iter().enumerate() {
                if sv > svd.singular_values[top] {
                    top = i;
                }
            }
            let sigma = svd.singular_values[top];
            if sigma == 0.0 {
                continue;
            }
            let new_atom: DVector<f64> = u.column(top).into();
            atoms.set_column(a, &new_atom);
            for (pos, &col) in users.iter().enumerate() {
                coeffs[(a, col)] = sigma * v_t[(top, pos)];
            }
        }
        let err = frobenius_error(z, &atoms, &coeffs);
        let improved = training_log
            .last()
            .map_or(true, |&prev| prev - err >= KSVD_IMPROVEMENT_TOL);
        training_log.push(err);
        if !improved {
            break;
        }
        coeffs = encode_all(z, &atoms, Some(&coeffs), s);
    }

    // Reporting pass: re-encode every column against the final atoms.
    coeffs = encode_all(z, &atoms, Some(&coeffs), s);

    Ok(DictionaryModel {
        atoms,
        coefficients: coeffs,
        training_log,
        sparsity: s,
        seed,
        likely_degenerate: k > g,
    })
}

/// Serializable form of a trained model (column-major atom and
/// coefficient arrays).
#[derive(Debug, Serialize, Deserialize)]
pub struct DictionaryModelJson {
    pub z: usize,
    pub atom_count: usize,
    pub sparsity: usize,
    pub seed: u64,
    pub atoms: Vec<Vec<f64>>,
    pub coefficients: Vec<Vec<f64>>,
    pub training_log: Vec<f64>,
    pub likely_degenerate: bool,
}

impl DictionaryModel {
    pub fn to_json(&self) -> DictionaryModelJson {
        DictionaryModelJson {
            z: self.atoms.nrows(),
            atom_count: self.atoms.ncols(),
            sparsity: self.sparsity,
            seed: self.seed,
            atoms: self
                .atoms
                .column_iter()
                .map(|c| c.iter().cloned().collect())
                .collect(),
            coefficients: self
                .coefficients
                .column_iter()
                .map(|c| c.iter().cloned().collect())
                .collect(),
            training_log: self.training_log.clone(),
            likely_degenerate: self.likely_degenerate,
        }
    }
}

/// Lloyd's K-means over the coefficient columns with k-means++ style
/// seeding and restarts; the best within-cluster sum of squares wins.
/// Labels are canonicalized so cluster ids appear in first-occurrence
/// order (column 0 is always cluster 0).
pub fn classify_coefficients(
    coefficients: &DMatrix<f64>,
    clusters: usize,
    seed: u64,
) -> Result<Vec<usize>> {
    let g = coefficients.ncols();
    if clusters == 0 || clusters > g {
        return Err(Error::Dimension(format!(
            "clusters = {clusters} outside [1, {g}]"
        )));
    }
    let restarts = 100;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(f64, Vec<usize>)> = None;
    for _ in 0..restarts {
        let (wcss, labels) = lloyd_once(coefficients, clusters, &mut rng);
        if best.as_ref().map_or(true, |(b, _)| wcss < *b) {
            best = Some((wcss, labels));
        }
    }
    let (_, labels) = best.expect("at least one restart");
    Ok(canonicalize_labels(&labels, clusters))
}

fn lloyd_once(data: &DMatrix<f64>, k: usize, rng: &mut ChaCha8Rng) -> (f64, Vec<usize>) {
    let g = data.ncols();
    let dim = data.nrows();

    // k-means++ seeding.
    let mut centers: Vec<DVector<f64>> = Vec::with_capacity(k);
    centers.push(data.column(rng.random_range(0..g)).into());
    while centers.len() < k {
        let d2: Vec<f64> = (0..g)
            .map(|col| {
                centers
                    .iter()
                    .map(|c| (data.column(col) - c).norm_squared())
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        let total: f64 = d2.iter().sum();
        let next = if total > 0.0 {
            let mut target = rng.random_range(0.0..total);
            let mut chosen = g - 1;
            for (col, &w) in d2.iter().enumerate() {
                if target < w {
                    chosen = col;
                    break;
                }
                target -= w;
            }
            chosen
        } else {
            rng.random_range(0..g)
        };
        centers.push(data.column(next).into());
    }

    let mut labels = vec![0usize; g];
    for _ in 0..100 {
        let mut changed = false;
        for col in 0..g {
            let mut best = (0usize, f64::INFINITY);
            for (c, center) in centers.iter().enumerate() {
                let d = (data.column(col) - center).norm_squared();
                if d < best.1 {
                    best = (c, d);
                }
            }
            if labels[col] != best.0 {
                labels[col] = best.0;
                changed = true;
            }
        }
        for (c, center) in centers.iter_mut().enumerate() {
            let members: Vec<usize> = (0..g).filter(|&col| labels[col] == c).collect();
            if members.is_empty() {
                continue;
            }
            let mut mean = DVector::<f64>::zeros(dim);
            for &col in &members {
                mean += data.column(col);
            }
            *center = mean / members.len() as f64;
        }
        if !changed {
            break;
        }
    }
    let wcss: f64 = (0..g)
        .map(|col| (data.column(col) - &centers[labels[col]]).norm_squared())
        .sum();
    (wcss, labels)
}

fn canonicalize_labels(labels: &[usize], clusters: usize) -> Vec<usize> {
    let mut remap = vec![usize::MAX; clusters];
    let mut next = 0usize;
    labels
        .iter()
        .map(|&l| {
            if remap[l] == usize::MAX {
                remap[l] = next;
                next += 1;
            }
            remap[l]
        })
        .collect()
}
