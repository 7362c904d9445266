use serde::{Deserialize, Serialize};

use super::{Matrix, TensorError};

/// Input extent `n`, kernel extent `f`, stride `s` and symmetric padding `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConvSpec {
    pub n: usize,
    pub f: usize,
    pub s: usize,
    pub p: usize,
}

impl ConvSpec {
    pub fn new(n: usize, f: usize, s: usize, p: usize) -> Self {
        ConvSpec { n, f, s, p }
    }
}

/// `⌊(n − f + 2p)/s⌋ + 1`.
pub fn conv_output_shape(spec: ConvSpec) -> Result<usize, TensorError> {
    let ConvSpec { n, f, s, p } = spec;
    if s == 0 || f == 0 {
        return Err(TensorError::ZeroStride);
    }
    let span = (n + 2 * p)
        .checked_sub(f)
        .ok_or(TensorError::NegativeExtent { n, f, p })?;
    Ok(span / s + 1)
}

/// Max over `size × size` windows placed every `stride`; windows that would
/// cross the far edge are dropped.
pub fn maxpool2d(x: &Matrix, size: usize, stride: usize) -> Result<Matrix, TensorError> {
    if size == 0 || stride == 0 {
        return Err(TensorError::ZeroStride);
    }
    let extent = x.rows().min(x.cols());
    if size > extent {
        return Err(TensorError::PoolTooLarge { size, extent });
    }
    let out_r = (x.rows() - size) / stride + 1;
    let out_c = (x.cols() - size) / stride + 1;
    Matrix::from_fn(out_r, out_c, |i, j| {
        let mut best = f64::NEG_INFINITY;
        for u in 0..size {
            for w in 0..size {
                best = best.max(x[(i * stride + u, j * stride + w)]);
            }
        }
        best
    })
}

pub fn maxpool1d(v: &[f64], size: usize, stride: usize) -> Result<Vec<f64>, TensorError> {
    if size == 0 || stride == 0 {
        return Err(TensorError::ZeroStride);
    }
    if size > v.len() {
        return Err(TensorError::PoolTooLarge {
            size,
            extent: v.len(),
        });
    }
    Ok((0..=(v.len() - size) / stride)
        .map(|i| {
            v[i * stride..i * stride + size]
                .iter()
                .copied()
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect())
}

/// Multiply-accumulates of a `k × k` kernel over a `w × h` output: `k²wh`.
pub fn conv_cost(w: u64, h: u64, k: u64) -> u64 {
    k * k * w * h
}

/// Storage in megabytes at 1 bit = 1.25e-7 MB.
pub fn model_size_mb(param_count: u64, bits_per_param: u32) -> f64 {
    param_count as f64 * bits_per_param as f64 * 1.25e-7
}
