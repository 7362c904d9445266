use serde::{Deserialize, Serialize};

use super::{Kernel, Matrix, TensorError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GaussianDims {
    /// `1 × (2r+1)` row kernel.
    One,
    /// `(2r+1) × (2r+1)`.
    Two,
}

/// Gaussian sampled at integer offsets `−r..=r` and normalized to sum 1.
///
/// The 2D kernel is sampled directly from `exp(−(x² + y²)/2σ²)`; that it
/// equals the outer product of the 1D kernel is a property, not the method.
pub fn gaussian_kernel(
    sigma: f64,
    radius: usize,
    dims: GaussianDims,
) -> Result<Kernel, TensorError> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(TensorError::InvalidSigma(sigma));
    }
    if radius == 0 {
        return Err(TensorError::ZeroRadius);
    }
    let w = 2 * radius + 1;
    let r = radius as f64;
    let g = |d2: f64| (-d2 / (2.0 * sigma * sigma)).exp();
    let m = match dims {
        GaussianDims::One => Matrix::from_fn(1, w, |_, j| g((j as f64 - r).powi(2)))?,
        GaussianDims::Two => Matrix::from_fn(w, w, |i, j| {
            g((i as f64 - r).powi(2) + (j as f64 - r).powi(2))
        })?,
    };
    let total: f64 = m.data().iter().sum();
    Ok(Kernel(m.map(|v| v / total)))
}

/// `G[i][j] = uᵢ · uⱼ`.
pub fn gram_matrix(vectors: &[Vec<f64>]) -> Result<Matrix, TensorError> {
    let n = vectors.len();
    let len = vectors
        .first()
        .map(Vec::len)
        .ok_or(TensorError::EmptyVector)?;
    for (row, v) in vectors.iter().enumerate() {
        if v.len() != len {
            return Err(TensorError::Ragged {
                row,
                expected: len,
                found: v.len(),
            });
        }
    }
    Matrix::from_fn(n, n, |i, j| {
        vectors[i].iter().zip(&vectors[j]).map(|(a, b)| a * b).sum()
    })
}
