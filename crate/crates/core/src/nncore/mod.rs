//! Activations with exact derivatives, dense layers and MLP forward passes,
//! softmax and cross-entropy, threshold perceptrons and gradient checks.

mod activation;
mod network;
mod perceptron;

pub use activation::{activate, activate_grad, grad_check, ActivationKind, GradCheck, LeakySlope};
pub use network::{
    cross_entropy_loss, dense_forward, mlp_forward, softmax, DenseLayer, Mlp, MlpTrace,
};
pub use perceptron::{perceptron_predict, truth_table, TruthRow};

use crate::infotheory::InfoError;
use crate::tensorops::TensorError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NnError {
    #[error("leaky slope must lie in (0, 1), got {0}")]
    InvalidSlope(f64),
    #[error("unknown activation '{0}'")]
    UnknownActivation(String),
    #[error("input has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("bias has length {found}, weight matrix has {expected} rows")]
    BiasLength { expected: usize, found: usize },
    #[error("layer {layer} expects {expected} inputs but the previous layer emits {found}")]
    LayerChain {
        layer: usize,
        expected: usize,
        found: usize,
    },
    #[error("a network needs at least one layer")]
    EmptyNetwork,
    #[error("softmax needs a nonempty vector of finite values")]
    NonFinite,
    #[error("target is not a one-hot vector")]
    NotOneHot,
    #[error("probability at target index {index} is zero")]
    ZeroProbability { index: usize },
    #[error("x = {x} is within h = {h} of a kink at 0")]
    NearKink { x: f64, h: f64 },
    #[error("step and tolerance must be positive and finite")]
    InvalidStep,
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Dist(#[from] InfoError),
    #[error("network description: {0}")]
    Json(String),
}
