//! Classification metrics, ROC curves, cross-validation folds, vector
//! similarities, Jaccard/MinHash, ensemble combiners and dropout algebra.

mod classify;
mod ensemble;
mod folds;
mod minhash;
mod similarity;

pub use classify::{
    confusion_metrics, roc_auc, ConfusionCounts, ConfusionMetrics, RocCurve, RocPoint, ScoredLabels,
};
pub use ensemble::{
    dropout_compose, ensemble_average, inverted_dropout, inverted_dropout_scale, majority_vote,
};
pub use folds::{cv_score, kfold, loocv, stratified_kfold, FoldPlan};
pub use minhash::{minhash_estimate, minhash_signature, MinHashSig, MERSENNE_61};
pub use similarity::{
    cosine_similarity, jaccard, jaccard_counts, l1_distance, l2_distance, normalize_l2,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetricsError {
    #[error("{0} is undefined: zero denominator")]
    ZeroDenominator(&'static str),
    #[error("ROC needs at least one positive and one negative label")]
    SingleClass,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
    #[error("need 2 <= k <= n, got k = {k}, n = {n}")]
    FoldCount { k: usize, n: usize },
    #[error("fold plan does not partition 0..{n}")]
    NotPartition { n: usize },
    #[error("empty input")]
    Empty,
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("jaccard of two empty sets is undefined")]
    BothEmpty,
    #[error("signatures differ in seed or length")]
    SignatureMismatch,
    #[error("need at least one hash function")]
    NoHashes,
    #[error("matrix {index} has shape {found:?}, expected {expected:?}")]
    ShapeMismatch {
        index: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("row {row} of matrix {index} sums to {sum}, not 1")]
    NotStochastic { index: usize, row: usize, sum: f64 },
    #[error("weights must be nonnegative, one per matrix, and sum to 1")]
    BadWeights,
    #[error("probability must lie in [0, 1), got {0}")]
    InvalidProbability(f64),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Tolerance for "sums to 1" checks on user-supplied rows and weights.
pub const STOCHASTIC_TOLERANCE: f64 = 1e-9;
