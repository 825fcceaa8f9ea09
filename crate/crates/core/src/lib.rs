//! Multi-centrality graph spectral analysis.
//!
//! The crate extracts structural feature matrices from weighted,
//! directed or disconnected graphs (walk statistics, six centrality
//! measures, reference-node distances), projects them to per-node
//! coordinates via PCA, scores nodes by their structural difference to
//! neighbors, and learns sparse dictionaries over graph ensembles for
//! anomaly classification.

pub mod centrality;
pub mod dictionary;
pub mod error;
pub mod features;
pub mod generators;
pub mod graph;
pub mod spectral;
pub mod walks;

pub use centrality::{CentralityVector, Measure};
pub use dictionary::{
    build_ensemble_matrix, classify_coefficients, ksvd_train, omp_encode, DictionaryModel,
    EnsembleFeatures,
};
pub use error::{Error, Result};
pub use features::{assemble, select_reference_nodes, FeatureMatrix, FeatureSpec};
pub use graph::{degree_vectors, shortest_paths, Graph, Metric, PathDistances};
pub use spectral::{graph_sds_statistic, mc_gpca, sds, PcaResult, SdsReducer, SdsVector};
pub use walks::{walk_counts, walk_weight_totals, WalkStatistics};
