//! Entropy, divergences, mutual information and information-gain split
//! selection over finite distributions.
//!
//! Every measure takes its [`LogBase`] explicitly. Terms with zero
//! probability contribute nothing (`0·log 0 = 0`).

mod dataset;
mod dist;
mod measures;

pub use dataset::{best_split, conditional_entropy, information_gain, LabeledDataset, Split};
pub use dist::{DiscreteDist, JointDist, LogBase, NORMALIZATION_TOLERANCE};
pub use measures::{
    binary_entropy, cross_entropy, empirical_entropy, entropy, jensen_shannon, joint_entropy,
    kl_distances, kl_divergence, kl_divergence_smoothed, mutual_information, split_impurity,
    surprisal, ImpurityMeasure, KlDistances, DEFAULT_SMOOTHING,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InfoError {
    #[error("probability {0} is outside the admissible range")]
    InvalidProbability(f64),
    #[error("probability at index {index} is {value}; entries must be finite and non-negative")]
    NegativeProbability { index: usize, value: f64 },
    #[error("probabilities sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },
    #[error("a distribution needs at least one outcome")]
    Empty,
    #[error("{labels} labels for {outcomes} outcomes")]
    LabelCount { labels: usize, outcomes: usize },
    #[error("distributions have different support sizes ({left} vs {right})")]
    SupportMismatch { left: usize, right: usize },
    #[error("q is zero where p is positive at index {index}")]
    AbsoluteContinuity { index: usize },
    #[error("smoothing epsilon must be positive and finite, got {0}")]
    InvalidSmoothing(f64),
    #[error("joint distribution rows must be nonempty and of equal length")]
    RaggedJoint,
    #[error("feature index {index} out of range for {count} features")]
    FeatureOutOfRange { index: usize, count: usize },
    #[error("dataset has no rows")]
    NoRows,
    #[error("dataset has no features")]
    NoFeatures,
    #[error("row {row} has {found} feature values, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row}: label '{token}' is not one of +, -, 1, 0")]
    BadLabel { row: usize, token: String },
    #[error("csv: {0}")]
    Csv(String),
}
