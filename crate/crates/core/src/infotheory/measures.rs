use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::{DiscreteDist, InfoError, JointDist, LogBase};

/// Additive smoothing for [`kl_divergence_smoothed`].
pub const DEFAULT_SMOOTHING: f64 = 1e-12;

fn entropy_of(p: &[f64], base: LogBase) -> f64 {
    -p.iter()
        .filter(|&&pi| pi > 0.0)
        .map(|&pi| pi * base.log(pi))
        .sum::<f64>()
}

pub fn entropy(d: &DiscreteDist, base: LogBase) -> f64 {
    entropy_of(d.probabilities(), base)
}

/// Information content `log(1/p)` of one outcome; `p ∈ (0, 1]`.
pub fn surprisal(p: f64, base: LogBase) -> Result<f64, InfoError> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(InfoError::InvalidProbability(p));
    }
    Ok(-base.log(p))
}

/// Entropy of a Bernoulli(p) variable.
pub fn binary_entropy(p: f64, base: LogBase) -> Result<f64, InfoError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(InfoError::InvalidProbability(p));
    }
    Ok(entropy_of(&[p, 1.0 - p], base))
}

fn same_support(p: &DiscreteDist, q: &DiscreteDist) -> Result<(), InfoError> {
    if p.len() != q.len() {
        return Err(InfoError::SupportMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(())
}

fn check_continuity(p: &DiscreteDist, q: &DiscreteDist) -> Result<(), InfoError> {
    same_support(p, q)?;
    match p
        .probabilities()
        .iter()
        .zip(q.probabilities())
        .position(|(&pi, &qi)| pi > 0.0 && qi == 0.0)
    {
        Some(index) => Err(InfoError::AbsoluteContinuity { index }),
        None => Ok(()),
    }
}

/// `−Σ pᵢ log qᵢ`; requires `qᵢ > 0` wherever `pᵢ > 0`.
pub fn cross_entropy(p: &DiscreteDist, q: &DiscreteDist, base: LogBase) -> Result<f64, InfoError> {
    check_continuity(p, q)?;
    Ok(-p
        .probabilities()
        .iter()
        .zip(q.probabilities())
        .filter(|(&pi, _)| pi > 0.0)
        .map(|(&pi, &qi)| pi * base.log(qi))
        .sum::<f64>())
}

fn kl_unchecked(p: &[f64], q: &[f64], base: LogBase) -> f64 {
    p.iter()
        .zip(q)
        .filter(|(&pi, _)| pi > 0.0)
        .map(|(&pi, &qi)| pi * base.log(pi / qi))
        .sum()
}

/// `D(P‖Q) = Σ pᵢ log(pᵢ/qᵢ)`, equal to `cross_entropy(p, q) − entropy(p)`.
pub fn kl_divergence(p: &DiscreteDist, q: &DiscreteDist, base: LogBase) -> Result<f64, InfoError> {
    check_continuity(p, q)?;
    Ok(kl_unchecked(p.probabilities(), q.probabilities(), base))
}

/// Divergence against `q` mixed toward uniform mass: `qᵢ' = (qᵢ + ε)/(1 + nε)`.
/// Always finite; equals [`kl_divergence`] as `ε → 0` when that is defined.
pub fn kl_divergence_smoothed(
    p: &DiscreteDist,
    q: &DiscreteDist,
    base: LogBase,
    epsilon: f64,
) -> Result<f64, InfoError> {
    same_support(p, q)?;
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(InfoError::InvalidSmoothing(epsilon));
    }
    let scale = 1.0 + q.len() as f64 * epsilon;
    let smoothed: Vec<f64> = q
        .probabilities()
        .iter()
        .map(|qi| (qi + epsilon) / scale)
        .collect();
    Ok(kl_unchecked(p.probabilities(), &smoothed, base))
}

/// Divergence of each argument from their midpoint, averaged. Bounded by one
/// bit (log 2 in any base) and defined for any pair on a common support.
pub fn jensen_shannon(p: &DiscreteDist, q: &DiscreteDist, base: LogBase) -> Result<f64, InfoError> {
    same_support(p, q)?;
    let m: Vec<f64> = p
        .probabilities()
        .iter()
        .zip(q.probabilities())
        .map(|(a, b)| 0.5 * (a + b))
        .collect();
    Ok(0.5
        * (kl_unchecked(p.probabilities(), &m, base) + kl_unchecked(q.probabilities(), &m, base)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KlDistances {
    pub symmetrized: f64,
    pub lin_form: f64,
    pub jensen_shannon: f64,
    pub max_directed: f64,
}

/// The four divergence-derived distances. Needs absolute continuity in both
/// directions; use [`jensen_shannon`] alone for disjoint supports.
pub fn kl_distances(
    p: &DiscreteDist,
    q: &DiscreteDist,
    base: LogBase,
) -> Result<KlDistances, InfoError> {
    let pq = kl_divergence(p, q, base)?;
    let qp = kl_divergence(q, p, base)?;
    // Computed from its own sum so the identity with `symmetrized` is checkable.
    let lin_form = p
        .probabilities()
        .iter()
        .zip(q.probabilities())
        .filter(|(&pi, &qi)| pi > 0.0 && qi > 0.0)
        .map(|(&pi, &qi)| (pi - qi) * base.log(pi / qi))
        .sum();
    Ok(KlDistances {
        symmetrized: pq + qp,
        lin_form,
        jensen_shannon: jensen_shannon(p, q, base)?,
        max_directed: pq.max(qp),
    })
}

pub fn joint_entropy(j: &JointDist, base: LogBase) -> f64 {
    entropy_of(j.cells(), base)
}

/// `I(X;Y) = H(X) + H(Y) − H(X,Y)`.
pub fn mutual_information(j: &JointDist, base: LogBase) -> f64 {
    entropy(&j.marginal_x(), base) + entropy(&j.marginal_y(), base) - joint_entropy(j, base)
}

/// Plug-in entropy of the empirical distribution of `samples`.
pub fn empirical_entropy<T: Hash + Eq>(samples: &[T], base: LogBase) -> Result<f64, InfoError> {
    if samples.is_empty() {
        return Err(InfoError::Empty);
    }
    let mut counts: HashMap<&T, usize> = HashMap::new();
    for s in samples {
        *counts.entry(s).or_default() += 1;
    }
    let n = samples.len() as f64;
    let p: Vec<f64> = counts.values().map(|&c| c as f64 / n).collect();
    Ok(entropy_of(&p, base))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ImpurityMeasure {
    /// Entropy in bits.
    Entropy,
    Gini,
    ClassificationError,
}

pub fn split_impurity(class_probs: &DiscreteDist, measure: ImpurityMeasure) -> f64 {
    let p = class_probs.probabilities();
    match measure {
        ImpurityMeasure::Entropy => entropy_of(p, LogBase::Bits),
        ImpurityMeasure::Gini => 1.0 - p.iter().map(|x| x * x).sum::<f64>(),
        ImpurityMeasure::ClassificationError => 1.0 - p.iter().copied().fold(0.0, f64::max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(p: &[f64]) -> DiscreteDist {
        DiscreteDist::new(p.to_vec()).unwrap()
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(&d(&[1.0]), LogBase::Bits), 0.0);
        assert_eq!(entropy(&d(&[1.0, 0.0]), LogBase::Bits), 0.0);
        assert_eq!(
            entropy(&DiscreteDist::uniform(8).unwrap(), LogBase::Bits),
            3.0
        );
        assert_eq!(
            entropy(&DiscreteDist::uniform(256).unwrap(), LogBase::Bits),
            8.0
        );
        assert!((entropy(&d(&[0.98, 0.02]), LogBase::Bits) - 0.1414).abs() < 5e-4);
        let nats = entropy(&d(&[0.5, 0.5]), LogBase::Nats);
        assert!((nats - std::f64::consts::LN_2).abs() < 1e-15);
        let hartleys = entropy(&DiscreteDist::uniform(10).unwrap(), LogBase::Hartleys);
        assert!((hartleys - 1.0).abs() < 1e-15);
    }

    #[test]
    fn surprisal_examples() {
        assert!((surprisal(0.02, LogBase::Bits).unwrap() - 5.643856189774724).abs() < 1e-12);
        assert!((surprisal(0.98, LogBase::Bits).unwrap() - 0.02914634565951651).abs() < 1e-12);
        assert_eq!(surprisal(1.0, LogBase::Bits).unwrap(), 0.0);
        assert!(surprisal(0.0, LogBase::Bits).is_err());
        assert!(surprisal(1.5, LogBase::Bits).is_err());
    }

    #[test]
    fn kl_examples() {
        let p = d(&[0.5, 0.5]);
        assert_eq!(kl_divergence(&p, &p, LogBase::Bits).unwrap(), 0.0);
        // 0.5·log2(2/3) + 0.5·log2(2) = 1 - 0.5·log2(3)
        let q = d(&[0.75, 0.25]);
        let want = 1.0 - 0.5 * 3f64.log2();
        assert!((kl_divergence(&p, &q, LogBase::Bits).unwrap() - want).abs() < 1e-15);
        assert_eq!(
            kl_divergence(&d(&[1.0, 0.0]), &p, LogBase::Bits).unwrap(),
            1.0
        );
    }

    #[test]
    fn kl_reports_continuity_violation() {
        let p = d(&[0.2, 0.3, 0.5]);
        let q = d(&[0.5, 0.5, 0.0]);
        assert_eq!(
            kl_divergence(&p, &q, LogBase::Bits),
            Err(InfoError::AbsoluteContinuity { index: 2 })
        );
        assert_eq!(
            kl_divergence(&p, &d(&[0.5, 0.5]), LogBase::Bits),
            Err(InfoError::SupportMismatch { left: 3, right: 2 })
        );
        // smoothing makes it finite but large
        let s = kl_divergence_smoothed(&p, &q, LogBase::Bits, DEFAULT_SMOOTHING).unwrap();
        assert!(s.is_finite() && s > 10.0);
        assert!(kl_divergence_smoothed(&p, &q, LogBase::Bits, 0.0).is_err());
    }

    #[test]
    fn smoothing_is_negligible_when_kl_is_defined() {
        let p = d(&[0.2, 0.8]);
        let q = d(&[0.6, 0.4]);
        let exact = kl_divergence(&p, &q, LogBase::Nats).unwrap();
        let smooth = kl_divergence_smoothed(&p, &q, LogBase::Nats, DEFAULT_SMOOTHING).unwrap();
        assert!((exact - smooth).abs() < 1e-11);
    }

    #[test]
    fn kl_is_cross_entropy_minus_entropy() {
        let p = d(&[0.1, 0.6, 0.3]);
        let q = d(&[0.3, 0.3, 0.4]);
        let kl = kl_divergence(&p, &q, LogBase::Nats).unwrap();
        let ce = cross_entropy(&p, &q, LogBase::Nats).unwrap();
        assert!((kl - (ce - entropy(&p, LogBase::Nats))).abs() < 1e-15);
    }

    #[test]
    fn distances() {
        let p = d(&[0.3, 0.7]);
        let k = kl_distances(&p, &p, LogBase::Bits).unwrap();
        assert_eq!(
            k,
            KlDistances {
                symmetrized: 0.0,
                lin_form: 0.0,
                jensen_shannon: 0.0,
                max_directed: 0.0
            }
        );
        let q = d(&[0.6, 0.4]);
        let k = kl_distances(&p, &q, LogBase::Bits).unwrap();
        assert!((k.symmetrized - k.lin_form).abs() < 1e-15);
        assert!(k.max_directed <= k.symmetrized && 2.0 * k.max_directed >= k.symmetrized);
        assert!(k.jensen_shannon > 0.0 && k.jensen_shannon < 1.0);
        let disjoint = jensen_shannon(&d(&[1.0, 0.0]), &d(&[0.0, 1.0]), LogBase::Bits).unwrap();
        assert_eq!(disjoint, 1.0);
        assert!(kl_distances(&d(&[1.0, 0.0]), &d(&[0.0, 1.0]), LogBase::Bits).is_err());
    }

    #[test]
    fn mutual_information_examples() {
        let px = d(&[0.2, 0.8]);
        let py = d(&[0.5, 0.25, 0.25]);
        let ind = JointDist::independent(&px, &py);
        assert!(mutual_information(&ind, LogBase::Bits).abs() < 1e-12);
        let diag = JointDist::from_rows(vec![vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        assert_eq!(mutual_information(&diag, LogBase::Bits), 1.0);
    }

    #[test]
    fn impurity_examples() {
        assert_eq!(split_impurity(&d(&[0.5, 0.5]), ImpurityMeasure::Gini), 0.5);
        for m in [
            ImpurityMeasure::Entropy,
            ImpurityMeasure::Gini,
            ImpurityMeasure::ClassificationError,
        ] {
            assert_eq!(split_impurity(&d(&[1.0, 0.0]), m), 0.0);
        }
        let ce = split_impurity(&d(&[0.6, 0.4]), ImpurityMeasure::ClassificationError);
        assert!((ce - 0.4).abs() < 1e-15);
        assert_eq!(
            split_impurity(&d(&[0.5, 0.5]), ImpurityMeasure::Entropy),
            1.0
        );
    }

    #[test]
    fn empirical() {
        assert_eq!(
            empirical_entropy(&[1, 2, 3, 4], LogBase::Bits).unwrap(),
            2.0
        );
        assert_eq!(empirical_entropy(&["a", "a"], LogBase::Bits).unwrap(), 0.0);
        assert!(empirical_entropy::<u8>(&[], LogBase::Bits).is_err());
    }

    #[test]
    fn binary_entropy_range() {
        assert_eq!(binary_entropy(0.5, LogBase::Bits).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0, LogBase::Bits).unwrap(), 0.0);
        assert!(binary_entropy(-0.1, LogBase::Bits).is_err());
    }
}
