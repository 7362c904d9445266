use std::collections::BTreeSet;

use super::MetricsError;

fn same_len(u: &[f64], v: &[f64]) -> Result<(), MetricsError> {
    if u.len() != v.len() {
        return Err(MetricsError::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    if u.is_empty() {
        return Err(MetricsError::Empty);
    }
    Ok(())
}

/// `Σ|uᵢ − vᵢ|`.
pub fn l1_distance(u: &[f64], v: &[f64]) -> Result<f64, MetricsError> {
    same_len(u, v)?;
    Ok(u.iter().zip(v).map(|(a, b)| (a - b).abs()).sum())
}

/// `√Σ(uᵢ − vᵢ)²`.
pub fn l2_distance(u: &[f64], v: &[f64]) -> Result<f64, MetricsError> {
    same_len(u, v)?;
    Ok(u.iter()
        .zip(v)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt())
}

pub fn normalize_l2(v: &[f64]) -> Result<Vec<f64>, MetricsError> {
    if v.is_empty() {
        return Err(MetricsError::Empty);
    }
    // scale by the largest magnitude first so the sum of squares cannot overflow
    let m = v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if m == 0.0 {
        return Err(MetricsError::ZeroVector);
    }
    let scaled: Vec<f64> = v.iter().map(|x| x / m).collect();
    let norm = scaled.iter().map(|x| x * x).sum::<f64>().sqrt();
    Ok(scaled.into_iter().map(|x| x / norm).collect())
}

/// Dot product of the L2-normalized vectors, kept inside `[−1, 1]`. With
/// `clamp`, negative similarities are reported as 0.
pub fn cosine_similarity(u: &[f64], v: &[f64], clamp: bool) -> Result<f64, MetricsError> {
    same_len(u, v)?;
    let (a, b) = (normalize_l2(u)?, normalize_l2(v)?);
    let raw = a
        .iter()
        .zip(&b)
        .map(|(x, y)| x * y)
        .sum::<f64>()
        .clamp(-1.0, 1.0);
    Ok(if clamp { raw.max(0.0) } else { raw })
}

/// `(|A ∩ B|, |A ∪ B|)` after removing duplicates.
pub fn jaccard_counts(a: &[u64], b: &[u64]) -> Result<(usize, usize), MetricsError> {
    let a: BTreeSet<u64> = a.iter().copied().collect();
    let b: BTreeSet<u64> = b.iter().copied().collect();
    let union = a.union(&b).count();
    if union == 0 {
        return Err(MetricsError::BothEmpty);
    }
    Ok((a.intersection(&b).count(), union))
}

pub fn jaccard(a: &[u64], b: &[u64]) -> Result<f64, MetricsError> {
    let (i, u) = jaccard_counts(a, b)?;
    Ok(i as f64 / u as f64)
}
