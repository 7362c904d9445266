use rand::Rng;

use super::{MetricsError, STOCHASTIC_TOLERANCE};
use crate::tensorops::Matrix;

/// Weighted elementwise mean of row-stochastic matrices; uniform weights
/// when none are given.
pub fn ensemble_average(
    matrices: &[Matrix],
    weights: Option<&[f64]>,
) -> Result<Matrix, MetricsError> {
    let first = matrices.first().ok_or(MetricsError::Empty)?;
    for (index, m) in matrices.iter().enumerate() {
        if m.shape() != first.shape() {
            return Err(MetricsError::ShapeMismatch {
                index,
                expected: first.shape(),
                found: m.shape(),
            });
        }
        for row in 0..m.rows() {
            let sum: f64 = m.row(row).iter().sum();
            if m.row(row).iter().any(|&p| !(0.0..=1.0).contains(&p))
                || (sum - 1.0).abs() > STOCHASTIC_TOLERANCE
            {
                return Err(MetricsError::NotStochastic { index, row, sum });
            }
        }
    }
    let uniform = vec![1.0 / matrices.len() as f64; matrices.len()];
    let w = weights.unwrap_or(&uniform);
    if w.len() != matrices.len()
        || w.iter().any(|&x| !(x >= 0.0))
        || (w.iter().sum::<f64>() - 1.0).abs() > STOCHASTIC_TOLERANCE
    {
        return Err(MetricsError::BadWeights);
    }
    let mut acc = vec![0.0; first.data().len()];
    for (m, &wi) in matrices.iter().zip(w) {
        for (a, &p) in acc.iter_mut().zip(m.data()) {
            *a += wi * p;
        }
    }
    Ok(Matrix::new(first.rows(), first.cols(), acc).expect("shape copied from input"))
}

/// Per-row mode of `votes[sample][model]`; ties go to the smallest label.
pub fn majority_vote(votes: &[Vec<usize>]) -> Result<Vec<usize>, MetricsError> {
    let models = votes.first().map(Vec::len).ok_or(MetricsError::Empty)?;
    if models == 0 {
        return Err(MetricsError::Empty);
    }
    votes
        .iter()
        .map(|row| {
            if row.len() != models {
                return Err(MetricsError::LengthMismatch {
                    left: models,
                    right: row.len(),
                });
            }
            let mut counts = vec![0usize; row.iter().max().expect("row is nonempty") + 1];
            for &l in row {
                counts[l] += 1;
            }
            let best = *counts.iter().max().expect("counts is nonempty");
            Ok(counts
                .iter()
                .position(|&c| c == best)
                .expect("max is present"))
        })
        .collect()
}

fn check_rate(p: f64) -> Result<(), MetricsError> {
    if !(0.0..1.0).contains(&p) {
        return Err(MetricsError::InvalidProbability(p));
    }
    Ok(())
}

/// Drop probability of two independent dropout stages, `1 − (1−p)(1−q)`,
/// evaluated as `p + q − pq` so that a zero rate returns the other exactly.
pub fn dropout_compose(p: f64, q: f64) -> Result<f64, MetricsError> {
    check_rate(p)?;
    check_rate(q)?;
    Ok(p + q - p * q)
}

/// `1/(1−p)`, which keeps the expected activation unchanged.
pub fn inverted_dropout_scale(p: f64) -> Result<f64, MetricsError> {
    check_rate(p)?;
    Ok(1.0 / (1.0 - p))
}

/// Zeroes each entry with probability `p` and scales survivors by `1/(1−p)`.
pub fn inverted_dropout<R: Rng + ?Sized>(
    x: &[f64],
    p: f64,
    rng: &mut R,
) -> Result<Vec<f64>, MetricsError> {
    let scale = inverted_dropout_scale(p)?;
    Ok(x.iter()
        .map(|&v| {
            if rng.random::<f64>() < p {
                0.0
            } else {
                v * scale
            }
        })
        .collect())
}
