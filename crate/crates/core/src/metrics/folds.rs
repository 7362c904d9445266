use std::collections::HashMap;
use std::hash::Hash;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::MetricsError;

/// Folds that partition `0..n`; serializes as `[[indices...], ...]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct FoldPlan {
    n: usize,
    folds: Vec<Vec<usize>>,
}

impl FoldPlan {
    /// Every index in `0..n` must appear in exactly one fold; `n` is implied.
    pub fn from_folds(folds: Vec<Vec<usize>>) -> Result<Self, MetricsError> {
        let n = folds.iter().map(Vec::len).sum();
        let mut seen = vec![false; n];
        for &i in folds.iter().flatten() {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(MetricsError::NotPartition { n });
            }
        }
        if folds.iter().any(Vec::is_empty) {
            return Err(MetricsError::NotPartition { n });
        }
        Ok(FoldPlan { n, folds })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.folds.len()
    }

    pub fn folds(&self) -> &[Vec<usize>] {
        &self.folds
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.folds.iter().map(Vec::len).collect()
    }

    /// Training indices for held-out fold `i`, ascending.
    pub fn train_indices(&self, i: usize) -> Vec<usize> {
        let mut held = vec![false; self.n];
        for &j in &self.folds[i] {
            held[j] = true;
        }
        (0..self.n).filter(|&j| !held[j]).collect()
    }
}

impl TryFrom<Vec<Vec<usize>>> for FoldPlan {
    type Error = MetricsError;
    fn try_from(folds: Vec<Vec<usize>>) -> Result<Self, MetricsError> {
        FoldPlan::from_folds(folds)
    }
}

impl From<FoldPlan> for Vec<Vec<usize>> {
    fn from(p: FoldPlan) -> Self {
        p.folds
    }
}

fn check_k(n: usize, k: usize) -> Result<(), MetricsError> {
    if k < 2 || k > n {
        return Err(MetricsError::FoldCount { k, n });
    }
    Ok(())
}

fn sorted(mut folds: Vec<Vec<usize>>) -> FoldPlan {
    for f in &mut folds {
        f.sort_unstable();
    }
    FoldPlan {
        n: folds.iter().map(Vec::len).sum(),
        folds,
    }
}

/// Shuffled indices cut into `k` contiguous runs; the first `n mod k` folds
/// hold one extra index.
pub fn kfold(n: usize, k: usize, seed: u64) -> Result<FoldPlan, MetricsError> {
    check_k(n, k)?;
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let (base, extra) = (n / k, n % k);
    let mut folds = Vec::with_capacity(k);
    let mut start = 0;
    for f in 0..k {
        let len = base + usize::from(f < extra);
        folds.push(idx[start..start + len].to_vec());
        start += len;
    }
    Ok(sorted(folds))
}

/// Each class is shuffled and dealt round-robin, the dealer position
/// carrying over between classes. Per-class counts per fold are then
/// `⌊c/k⌋` or `⌈c/k⌉` and fold sizes differ by at most one.
pub fn stratified_kfold<L: Hash + Eq>(
    labels: &[L],
    k: usize,
    seed: u64,
) -> Result<FoldPlan, MetricsError> {
    check_k(labels.len(), k)?;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<&L, usize> = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        let c = *slot.entry(l).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = vec![Vec::new(); k];
    let mut dealer = 0;
    for members in &mut classes {
        members.shuffle(&mut rng);
        for &i in members.iter() {
            folds[dealer].push(i);
            dealer = (dealer + 1) % k;
        }
    }
    Ok(sorted(folds))
}

/// `n` singleton folds in index order.
pub fn loocv(n: usize) -> Result<FoldPlan, MetricsError> {
    check_k(n, n)?;
    Ok(FoldPlan {
        n,
        folds: (0..n).map(|i| vec![i]).collect(),
    })
}

/// Arithmetic mean of per-fold errors.
pub fn cv_score(per_fold_errors: &[f64]) -> Result<f64, MetricsError> {
    if per_fold_errors.is_empty() {
        return Err(MetricsError::Empty);
    }
    Ok(per_fold_errors.iter().sum::<f64>() / per_fold_errors.len() as f64)
}
