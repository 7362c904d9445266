//! Single-channel convolution, correlation and pooling, with the shape and
//! cost arithmetic around them.

mod conv;
mod filters;
mod matrix;
mod pool;

pub use conv::{conv1d, conv2d, correlate1d, correlate2d, Mode1d, Padding};
pub use filters::{gaussian_kernel, gram_matrix, GaussianDims};
pub use matrix::{flip180, Kernel, Matrix};
pub use pool::{conv_cost, conv_output_shape, maxpool1d, maxpool2d, model_size_mb, ConvSpec};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TensorError {
    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyMatrix { rows: usize, cols: usize },
    #[error("{rows}x{cols} matrix needs {expected} entries, got {found}")]
    DataLength {
        rows: usize,
        cols: usize,
        expected: usize,
        found: usize,
    },
    #[error("shape {left:?} does not match {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("{kr}x{kc} kernel does not fit a {rows}x{cols} input")]
    KernelTooLarge {
        kr: usize,
        kc: usize,
        rows: usize,
        cols: usize,
    },
    #[error("vectors must be nonempty")]
    EmptyVector,
    #[error("pool window {size} exceeds input extent {extent}")]
    PoolTooLarge { size: usize, extent: usize },
    #[error("stride and window size must be positive")]
    ZeroStride,
    #[error("n - f + 2p is negative for n={n}, f={f}, p={p}")]
    NegativeExtent { n: usize, f: usize, p: usize },
    #[error("sigma must be positive and finite, got {0}")]
    InvalidSigma(f64),
    #[error("radius must be positive")]
    ZeroRadius,
    #[error("matrix text: {0}")]
    Parse(String),
}
