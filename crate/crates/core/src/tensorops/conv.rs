use serde::{Deserialize, Serialize};

use super::{Kernel, Matrix, TensorError};

/// Output extent of a stride-1 2D operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Padding {
    /// No padding; each side shrinks by `f − 1`.
    #[default]
    Valid,
    /// Zero padding to the input size; an even kernel puts the extra row and
    /// column of padding at the bottom and right.
    Same,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode1d {
    /// Every overlap, length `|a| + |b| − 1`.
    #[default]
    Full,
    /// Complete overlaps only, length `max − min + 1`.
    Valid,
}

fn check_fit(x: &Matrix, k: &Kernel, mode: Padding) -> Result<(), TensorError> {
    let (kr, kc) = k.shape();
    if mode == Padding::Valid && (kr > x.rows() || kc > x.cols()) {
        return Err(TensorError::KernelTooLarge {
            kr,
            kc,
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    Ok(())
}

/// Padding above/left of the input in same mode.
fn lead_pad(f: usize) -> usize {
    (f - 1) / 2
}

/// `y = x ∗ k`, the 180°-flipped kernel slid over the input.
///
/// Accumulates the full convolution by scattering each input sample through
/// the kernel, `F[m+u][n+v] += x[m][n]·k[u][v]`, then crops to the mode.
pub fn conv2d(x: &Matrix, k: &Kernel, mode: Padding) -> Result<Matrix, TensorError> {
    check_fit(x, k, mode)?;
    let (r, c) = x.shape();
    let (kr, kc) = k.shape();
    let (fr, fc) = (r + kr - 1, c + kc - 1);
    let mut full = vec![0.0; fr * fc];
    for m in 0..r {
        for n in 0..c {
            let v = x[(m, n)];
            for u in 0..kr {
                for w in 0..kc {
                    full[(m + u) * fc + n + w] += v * k.0[(u, w)];
                }
            }
        }
    }
    // Output (i, j) of each mode is full[(i + dr, j + dc)].
    let (out_r, out_c, dr, dc) = match mode {
        Padding::Valid => (r - kr + 1, c - kc + 1, kr - 1, kc - 1),
        Padding::Same => (r, c, kr - 1 - lead_pad(kr), kc - 1 - lead_pad(kc)),
    };
    Matrix::from_fn(out_r, out_c, |i, j| full[(i + dr) * fc + j + dc])
}

/// Sliding dot product of the unflipped kernel with the (zero-padded) input.
pub fn correlate2d(x: &Matrix, k: &Kernel, mode: Padding) -> Result<Matrix, TensorError> {
    check_fit(x, k, mode)?;
    let (r, c) = x.shape();
    let (kr, kc) = k.shape();
    let (out_r, out_c, top, left) = match mode {
        Padding::Valid => (r - kr + 1, c - kc + 1, 0, 0),
        Padding::Same => (r, c, lead_pad(kr), lead_pad(kc)),
    };
    let sample = |i: usize, j: usize| -> f64 {
        // padded coordinates shifted back into the input
        match (i.checked_sub(top), j.checked_sub(left)) {
            (Some(a), Some(b)) if a < r && b < c => x[(a, b)],
            _ => 0.0,
        }
    };
    Matrix::from_fn(out_r, out_c, |i, j| {
        let mut acc = 0.0;
        for u in 0..kr {
            for w in 0..kc {
                acc += sample(i + u, j + w) * k.0[(u, w)];
            }
        }
        acc
    })
}

fn full_conv1d(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut c = vec![0.0; a.len() + b.len() - 1];
    for (m, &am) in a.iter().enumerate() {
        for (n, &bn) in b.iter().enumerate() {
            c[m + n] += am * bn;
        }
    }
    c
}

pub fn conv1d(a: &[f64], b: &[f64], mode: Mode1d) -> Result<Vec<f64>, TensorError> {
    if a.is_empty() || b.is_empty() {
        return Err(TensorError::EmptyVector);
    }
    let full = full_conv1d(a, b);
    Ok(match mode {
        Mode1d::Full => full,
        Mode1d::Valid => {
            let (short, long) = (a.len().min(b.len()), a.len().max(b.len()));
            full[short - 1..long].to_vec()
        }
    })
}

/// `Σₙ a[n + lag]·b[n]`, computed as `a ∗ reverse(b)`; the real-valued
/// conjugate is the identity. Full output index `i` is lag `i − (|b| − 1)`.
pub fn correlate1d(a: &[f64], b: &[f64], mode: Mode1d) -> Result<Vec<f64>, TensorError> {
    let reversed: Vec<f64> = b.iter().rev().copied().collect();
    conv1d(a, &reversed, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensorops::flip180;

    fn m(rows: Vec<Vec<f64>>) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn worked_edge_detector() {
        let x = m(vec![vec![3.0, 3.0, 3.0, 1.0, 1.0, 1.0]; 6]);
        let k = Kernel::from_rows(vec![vec![2.0, 0.0, -2.0]; 3]).unwrap();
        let y = conv2d(&x, &k, Padding::Valid).unwrap();
        assert_eq!(y, m(vec![vec![0.0, -12.0, -12.0, 0.0]; 4]));
        // correlating instead flips the sign of the response
        let z = correlate2d(&x, &k, Padding::Valid).unwrap();
        assert_eq!(z, m(vec![vec![0.0, 12.0, 12.0, 0.0]; 4]));
    }

    #[test]
    fn identity_kernel() {
        let x = m(vec![vec![1.0, -2.0, 3.5], vec![0.25, 7.0, -1.0]]);
        let one = Kernel::from_rows(vec![vec![1.0]]).unwrap();
        assert_eq!(conv2d(&x, &one, Padding::Valid).unwrap(), x);
        assert_eq!(conv2d(&x, &one, Padding::Same).unwrap(), x);
    }

    #[test]
    fn impulse_responses() {
        let mut delta = Matrix::zeros(5, 5).unwrap();
        delta[(2, 2)] = 1.0;
        let k = Kernel::from_rows(vec![
            vec![1.0, 2.0, 3.0],
            vec![4.0, 5.0, 6.0],
            vec![7.0, 8.0, 9.0],
        ])
        .unwrap();
        let window = |y: &Matrix| Matrix::from_fn(3, 3, |i, j| y[(i + 1, j + 1)]).unwrap();
        // convolution reproduces the kernel, correlation its 180° rotation
        let conv = conv2d(&delta, &k, Padding::Same).unwrap();
        assert_eq!(window(&conv), k.0);
        let corr = correlate2d(&delta, &k, Padding::Same).unwrap();
        assert_eq!(window(&corr), flip180(&k).0);
    }

    #[test]
    fn column_kernel_pipeline() {
        let x = Matrix::column_vector(vec![7.0, 3.0, -6.0, 2.0, 5.0]).unwrap();
        let k = Kernel(Matrix::column_vector(vec![3.0, 1.0]).unwrap());
        let y = correlate2d(&x, &k, Padding::Valid).unwrap();
        assert_eq!(y.data(), &[24.0, 3.0, -16.0, 11.0]);
    }

    #[test]
    fn same_mode_even_kernel_pads_bottom_right() {
        // 2x2 all-ones kernel sums the window starting at (i, j)
        let x = m(vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        let k = Kernel::from_rows(vec![vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let y = correlate2d(&x, &k, Padding::Same).unwrap();
        assert_eq!(y, m(vec![vec![10.0, 6.0], vec![7.0, 4.0]]));
        assert_eq!(conv2d(&x, &k, Padding::Same).unwrap(), y);
    }

    #[test]
    fn valid_mode_rejects_oversized_kernel() {
        let x = Matrix::zeros(2, 5).unwrap();
        let k = Kernel(Matrix::zeros(3, 1).unwrap());
        assert!(matches!(
            conv2d(&x, &k, Padding::Valid),
            Err(TensorError::KernelTooLarge { .. })
        ));
        assert!(correlate2d(&x, &k, Padding::Valid).is_err());
        assert_eq!(conv2d(&x, &k, Padding::Same).unwrap().shape(), (2, 5));
    }

    #[test]
    fn one_dimensional() {
        assert_eq!(
            conv1d(&[1.0, 2.0, 3.0], &[0.0, 1.0, 0.0], Mode1d::Full).unwrap(),
            vec![0.0, 1.0, 2.0, 3.0, 0.0]
        );
        assert_eq!(
            conv1d(&[1.0, 1.0], &[1.0, 1.0], Mode1d::Full).unwrap(),
            vec![1.0, 2.0, 1.0]
        );
        assert_eq!(
            conv1d(&[1.0, 2.0, 3.0, 4.0], &[1.0, -1.0], Mode1d::Valid).unwrap(),
            vec![1.0, 1.0, 1.0]
        );
        assert_eq!(
            correlate1d(&[1.0, 2.0, 3.0], &[1.0, 0.0], Mode1d::Valid).unwrap(),
            vec![1.0, 2.0]
        );
        assert!(conv1d(&[], &[1.0], Mode1d::Full).is_err());
    }
}
