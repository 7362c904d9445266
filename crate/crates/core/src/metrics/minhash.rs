use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::MetricsError;

/// `2⁶¹ − 1`, the hash-family modulus.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// Per-hash minima of `hᵢ(v) = (aᵢ·v + bᵢ) mod p` over a set. Signatures
/// are comparable only when seed and length agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinHashSig {
    pub minima: Vec<u64>,
    pub seed: u64,
}

impl MinHashSig {
    pub fn len(&self) -> usize {
        self.minima.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minima.is_empty()
    }
}

/// `(aᵢ, bᵢ)` with `aᵢ ∈ [1, p)` and `bᵢ ∈ [0, p)`, drawn in order from
/// ChaCha8 seeded with `seed`.
fn hash_params(hashes: usize, seed: u64) -> Vec<(u64, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..hashes)
        .map(|_| {
            (
                rng.random_range(1..MERSENNE_61),
                rng.random_range(0..MERSENNE_61),
            )
        })
        .collect()
}

fn apply(a: u64, b: u64, v: u64) -> u64 {
    let p = MERSENNE_61 as u128;
    ((a as u128 * (v as u128 % p) + b as u128) % p) as u64
}

pub fn minhash_signature(
    set: &[u64],
    hashes: usize,
    seed: u64,
) -> Result<MinHashSig, MetricsError> {
    if set.is_empty() {
        return Err(MetricsError::Empty);
    }
    if hashes == 0 {
        return Err(MetricsError::NoHashes);
    }
    let minima = hash_params(hashes, seed)
        .into_iter()
        .map(|(a, b)| {
            set.iter()
                .map(|&v| apply(a, b, v))
                .min()
                .expect("set is nonempty")
        })
        .collect();
    Ok(MinHashSig { minima, seed })
}

/// Fraction of positions whose minima agree; an unbiased estimate of the
/// Jaccard index.
pub fn minhash_estimate(x: &MinHashSig, y: &MinHashSig) -> Result<f64, MetricsError> {
    if x.seed != y.seed || x.len() != y.len() || x.is_empty() {
        return Err(MetricsError::SignatureMismatch);
    }
    let agree = x
        .minima
        .iter()
        .zip(&y.minima)
        .filter(|(a, b)| a == b)
        .count();
    Ok(agree as f64 / x.len() as f64)
}
