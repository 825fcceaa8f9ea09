use thiserror::Error;

/// Errors produced by graph construction, feature extraction and the
/// numerical routines built on top of them.
#[derive(Debug, Error)]
pub enum Error {
    #[error("negative weight {weight} on edge ({from}, {to})")]
    InvalidWeight { from: usize, to: usize, weight: f64 },
    #[error("self-loop on node {0} rejected")]
    SelfLoopRejected(usize),
    #[error("node index {index} out of range for graph of {node_count} nodes")]
    NodeOutOfRange { index: usize, node_count: usize },
    #[error("walk statistics exceed the exact integer range at hop {hop}")]
    CountOverflow { hop: usize },
    #[error("power iteration did not converge within {max_iter} iterations")]
    NoConvergence { max_iter: usize },
    #[error("graph has no edges")]
    ZeroMatrix,
    #[error("graph Laplacian has no nonzero eigenvalue")]
    AllEigenvaluesZero,
    #[error("requested {requested} reference nodes but the graph has {node_count}")]
    TooManyReferences {
        requested: usize,
        node_count: usize,
    },
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("non-finite value in feature column '{column}' at row {row}")]
    NonFiniteFeature { column: String, row: usize },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
