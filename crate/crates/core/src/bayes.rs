//! Binomial and beta machinery, Bayes-rule calculators, binomial MLE with
//! Fisher information, discrete-prior posteriors and the Maxwell–Boltzmann mode.
//!
//! Binomial and beta densities are assembled in log space; binomial
//! coefficients are exact products for moderate `n` and log-gamma beyond.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::infotheory::DiscreteDist;

/// Boltzmann constant in J/K, to four significant figures.
pub const BOLTZMANN_CONSTANT: f64 = 1.381e-23;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BayesError {
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("count {k} is outside 0..={n}")]
    CountOutOfRange { k: u64, n: u64 },
    #[error("beta parameters must be positive and finite, got ({a}, {b})")]
    InvalidBeta { a: f64, b: f64 },
    #[error("beta density is unbounded at theta = {0} for these parameters")]
    UnboundedDensity(f64),
    #[error("standard deviation must be positive, got {0}")]
    InvalidSigma(f64),
    #[error("the evidence has probability zero")]
    ZeroEvidence,
    #[error("at least one trial is required")]
    NoTrials,
    #[error("parameter {0} must lie strictly inside its domain")]
    BoundaryParameter(f64),
    #[error("prior has {thetas} support points but {weights} weights")]
    PriorShape { thetas: usize, weights: usize },
    #[error("{0} must be positive and finite")]
    NonPositive(&'static str),
    #[error(transparent)]
    Dist(#[from] crate::infotheory::InfoError),
}

fn check_prob(p: f64) -> Result<(), BayesError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(BayesError::InvalidProbability(p));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinomialParams {
    n: u64,
    p: f64,
}

impl BinomialParams {
    pub fn new(n: u64, p: f64) -> Result<Self, BayesError> {
        check_prob(p)?;
        Ok(BinomialParams { n, p })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// `ln C(n, k)`. Exact products up to `n = 1000`, where `C(n, k) < 1e300`;
/// log-gamma beyond.
fn ln_choose(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    if n <= 1000 {
        // every partial product is itself a binomial coefficient
        let mut c = 1.0f64;
        for i in 1..=k {
            c = c * (n - k + i) as f64 / i as f64;
        }
        return c.ln();
    }
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

/// `ln P(X = k)`; `−∞` for impossible outcomes.
fn ln_pmf(n: u64, p: f64, k: u64) -> f64 {
    let fail = n - k;
    if p == 0.0 {
        return if k == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    if p == 1.0 {
        return if fail == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    ln_choose(n, k) + k as f64 * p.ln() + fail as f64 * (-p).ln_1p()
}

fn check_count(k: u64, n: u64) -> Result<(), BayesError> {
    if k > n {
        return Err(BayesError::CountOutOfRange { k, n });
    }
    Ok(())
}

pub fn binomial_pmf(params: BinomialParams, k: u64) -> Result<f64, BayesError> {
    check_count(k, params.n)?;
    Ok(ln_pmf(params.n, params.p, k).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
}

pub fn binomial_moments(params: BinomialParams) -> Moments {
    let n = params.n as f64;
    Moments {
        mean: n * params.p,
        variance: n * params.p * (1.0 - params.p),
    }
}

fn log_sum_exp(terms: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = terms.clone().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.map(|t| (t - max).exp()).sum::<f64>().ln()
}

/// `P(X ≥ k_min)`.
pub fn binomial_tail(params: BinomialParams, k_min: u64) -> Result<f64, BayesError> {
    check_count(k_min, params.n)?;
    let (n, p) = (params.n, params.p);
    let ln_tail = log_sum_exp((k_min..=n).map(|k| ln_pmf(n, p, k)));
    Ok(ln_tail.exp().min(1.0))
}

pub fn z_score(x: f64, mu: f64, sigma: f64) -> Result<f64, BayesError> {
    if !(sigma > 0.0) {
        return Err(BayesError::InvalidSigma(sigma));
    }
    Ok((x - mu) / sigma)
}

/// Prior `P(A)` and the likelihood of the evidence `B` under `A` and under `Aᶜ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoHypothesis {
    pub prior: f64,
    pub lik_a: f64,
    pub lik_not_a: f64,
}

impl TwoHypothesis {
    pub fn new(prior: f64, lik_a: f64, lik_not_a: f64) -> Result<Self, BayesError> {
        for v in [prior, lik_a, lik_not_a] {
            check_prob(v)?;
        }
        Ok(TwoHypothesis {
            prior,
            lik_a,
            lik_not_a,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoHypothesisPosterior {
    /// `P(A | B)`.
    pub posterior: f64,
    /// `P(B)` by total probability.
    pub evidence: f64,
}

pub fn posterior_two_hypothesis(h: TwoHypothesis) -> Result<TwoHypothesisPosterior, BayesError> {
    let joint_a = h.lik_a * h.prior;
    let evidence = joint_a + h.lik_not_a * (1.0 - h.prior);
    if evidence == 0.0 {
        return Err(BayesError::ZeroEvidence);
    }
    Ok(TwoHypothesisPosterior {
        posterior: joint_a / evidence,
        evidence,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MleEstimate {
    pub gamma_hat: f64,
    pub variance: f64,
    pub se: f64,
}

/// `γ̂ = y/n` with variance `γ̂(1−γ̂)/n`, the inverse Fisher information at `γ̂`.
pub fn mle_binomial(successes: u64, trials: u64) -> Result<MleEstimate, BayesError> {
    if trials == 0 {
        return Err(BayesError::NoTrials);
    }
    check_count(successes, trials)?;
    let g = successes as f64 / trials as f64;
    let variance = g * (1.0 - g) / trials as f64;
    Ok(MleEstimate {
        gamma_hat: g,
        variance,
        se: variance.sqrt(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FisherFamily {
    Bernoulli { gamma: f64 },
    Poisson { theta: f64 },
    Binomial { n: u64, gamma: f64 },
}

pub fn fisher_information(family: FisherFamily) -> Result<f64, BayesError> {
    let interior = |g: f64| {
        if g > 0.0 && g < 1.0 {
            Ok(g * (1.0 - g))
        } else {
            Err(BayesError::BoundaryParameter(g))
        }
    };
    match family {
        FisherFamily::Bernoulli { gamma } => Ok(1.0 / interior(gamma)?),
        FisherFamily::Poisson { theta } => {
            if theta > 0.0 && theta.is_finite() {
                Ok(1.0 / theta)
            } else {
                Err(BayesError::BoundaryParameter(theta))
            }
        }
        FisherFamily::Binomial { n, gamma } => {
            if n == 0 {
                return Err(BayesError::NoTrials);
            }
            Ok(n as f64 / interior(gamma)?)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BetaParams {
    a: f64,
    b: f64,
}

impl BetaParams {
    pub fn new(a: f64, b: f64) -> Result<Self, BayesError> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(BayesError::InvalidBeta { a, b });
        }
        Ok(BetaParams { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn mean(&self) -> f64 {
        self.a / (self.a + self.b)
    }

    fn ln_norm(&self) -> f64 {
        ln_gamma(self.a + self.b) - ln_gamma(self.a) - ln_gamma(self.b)
    }
}

/// Beta density. The endpoints 0 and 1 are admitted when the density is
/// bounded there (`a ≥ 1` at 0, `b ≥ 1` at 1).
pub fn beta_pdf(params: BetaParams, theta: f64) -> Result<f64, BayesError> {
    check_prob(theta)?;
    let (a, b) = (params.a, params.b);
    if (theta == 0.0 && a < 1.0) || (theta == 1.0 && b < 1.0) {
        return Err(BayesError::UnboundedDensity(theta));
    }
    if theta == 0.0 || theta == 1.0 {
        return Ok(params.ln_norm().exp() * theta.powf(a - 1.0) * (1.0 - theta).powf(b - 1.0));
    }
    Ok((params.ln_norm() + (a - 1.0) * theta.ln() + (b - 1.0) * (-theta).ln_1p()).exp())
}

/// Conjugate update: `Beta(a, b)` with `s` successes in `n` trials becomes
/// `Beta(a + s, b + n − s)`.
pub fn beta_binomial_update(
    prior: BetaParams,
    successes: u64,
    trials: u64,
) -> Result<BetaParams, BayesError> {
    check_count(successes, trials)?;
    BetaParams::new(
        prior.a + successes as f64,
        prior.b + (trials - successes) as f64,
    )
}

/// `beta_pdf(prior, θ) · binomial_pmf((n, θ), x)`.
pub fn unnormalized_posterior_density(
    prior: BetaParams,
    n: u64,
    x: u64,
    theta: f64,
) -> Result<f64, BayesError> {
    let lik = binomial_pmf(BinomialParams::new(n, theta)?, x)?;
    Ok(beta_pdf(prior, theta)? * lik)
}

/// Finite prior over success probabilities `θⱼ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteThetaPrior {
    thetas: Vec<f64>,
    weights: DiscreteDist,
}

impl DiscreteThetaPrior {
    pub fn new(thetas: Vec<f64>, weights: Vec<f64>) -> Result<Self, BayesError> {
        if thetas.len() != weights.len() {
            return Err(BayesError::PriorShape {
                thetas: thetas.len(),
                weights: weights.len(),
            });
        }
        for &t in &thetas {
            check_prob(t)?;
        }
        Ok(DiscreteThetaPrior {
            thetas,
            weights: DiscreteDist::new(weights)?,
        })
    }

    pub fn point_mass(theta: f64) -> Result<Self, BayesError> {
        Self::new(vec![theta], vec![1.0])
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn weights(&self) -> &DiscreteDist {
        &self.weights
    }
}

/// `p(θⱼ | y) ∝ p(y | θⱼ)·p(θⱼ)`, normalized in log space. Outcomes keep
/// the prior's order and are labelled with their `θ`.
pub fn discrete_posterior(
    prior: &DiscreteThetaPrior,
    n: u64,
    y: u64,
) -> Result<DiscreteDist, BayesError> {
    check_count(y, n)?;
    let ln_w: Vec<f64> = prior
        .thetas
        .iter()
        .zip(prior.weights.probabilities())
        .map(|(&t, &w)| {
            if w == 0.0 {
                f64::NEG_INFINITY
            } else {
                w.ln() + ln_pmf(n, t, y)
            }
        })
        .collect();
    let ln_z = log_sum_exp(ln_w.iter().copied());
    if ln_z == f64::NEG_INFINITY {
        return Err(BayesError::ZeroEvidence);
    }
    let post = ln_w.iter().map(|l| (l - ln_z).exp()).collect();
    let labels = prior.thetas.iter().map(|t| t.to_string()).collect();
    Ok(DiscreteDist::new(post)?.with_labels(labels)?)
}

/// Marginal `p(y) = Σⱼ wⱼ·Binomial(y; n, θⱼ)` for `y = 0..=n`.
pub fn prior_predictive(prior: &DiscreteThetaPrior, n: u64) -> DiscreteDist {
    let p: Vec<f64> = (0..=n)
        .map(|y| {
            prior
                .thetas
                .iter()
                .zip(prior.weights.probabilities())
                .map(|(&t, &w)| w * ln_pmf(n, t, y).exp())
                .sum()
        })
        .collect();
    let labels = (0..=n).map(|y| y.to_string()).collect();
    DiscreteDist::new(p)
        .and_then(|d| d.with_labels(labels))
        .expect("a mixture of binomial pmfs sums to 1")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpTail {
    /// `P(X < t) = 1 − e^{−t}`.
    pub below: f64,
    /// `P(X ≥ t) = e^{−t}`.
    pub at_or_above: f64,
}

/// Both tails of a unit-rate exponential at `threshold`.
pub fn exp_tail(threshold: f64) -> Result<ExpTail, BayesError> {
    if !(threshold >= 0.0) {
        return Err(BayesError::NonPositive("threshold"));
    }
    Ok(ExpTail {
        below: -(-threshold).exp_m1(),
        at_or_above: (-threshold).exp(),
    })
}

/// Mode `sqrt(2kT/m)` of the Maxwell–Boltzmann speed density.
pub fn mb_most_probable_speed(k_b: f64, temperature: f64, mass: f64) -> Result<f64, BayesError> {
    for (name, v) in [("kB", k_b), ("temperature", temperature), ("mass", mass)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(BayesError::NonPositive(name));
        }
    }
    Ok((2.0 * k_b * temperature / mass).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn bin(n: u64, p: f64) -> BinomialParams {
        BinomialParams::new(n, p).unwrap()
    }

    #[test]
    fn pmf_examples() {
        let far = binomial_pmf(bin(200, 0.1), 60).unwrap();
        assert!(far / 2.7e-15 < 1.1 && 2.7e-15 / far < 1.1, "{far}");
        assert!(close(
            binomial_pmf(bin(100, 0.5), 50).unwrap(),
            0.0795892,
            1e-6
        ));
        assert!(close(binomial_pmf(bin(1, 0.3), 1).unwrap(), 0.3, 1e-15));
        assert!(binomial_pmf(bin(3, 0.3), 4).is_err());
        assert!(BinomialParams::new(3, 1.2).is_err());
    }

    #[test]
    fn pmf_at_degenerate_p() {
        assert_eq!(binomial_pmf(bin(5, 0.0), 0).unwrap(), 1.0);
        assert_eq!(binomial_pmf(bin(5, 0.0), 1).unwrap(), 0.0);
        assert_eq!(binomial_pmf(bin(5, 1.0), 5).unwrap(), 1.0);
        assert_eq!(binomial_pmf(bin(5, 1.0), 4).unwrap(), 0.0);
    }

    #[test]
    fn moments() {
        assert_eq!(
            binomial_moments(bin(200, 0.1)),
            Moments {
                mean: 20.0,
                variance: 18.0
            }
        );
        assert_eq!(
            binomial_moments(bin(9, 0.0)),
            Moments {
                mean: 0.0,
                variance: 0.0
            }
        );
        let m = binomial_moments(bin(10_000, 0.03));
        let per_trial = m.variance / (10_000.0f64 * 10_000.0);
        assert!(close(per_trial, 2.91e-6, 1e-12));
    }

    #[test]
    fn tails() {
        assert!(close(binomial_tail(bin(30, 0.4), 0).unwrap(), 1.0, 1e-12));
        assert!(close(
            binomial_tail(bin(4, 0.5), 3).unwrap(),
            5.0 / 16.0,
            1e-14
        ));
        let p_on = -(-20f64).exp_m1();
        assert!(close(
            binomial_tail(bin(200, p_on), 150).unwrap(),
            1.0,
            1e-15
        ));
        assert!(binomial_tail(bin(4, 0.5), 5).is_err());
    }

    #[test]
    fn z_scores() {
        assert!(close(
            z_score(60.0, 20.0, 18f64.sqrt()).unwrap(),
            9.428,
            1e-3
        ));
        assert_eq!(z_score(3.0, 3.0, 1.0).unwrap(), 0.0);
        assert_eq!(z_score(25.0, 20.0, 5.0).unwrap(), 1.0);
        assert!(z_score(1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn two_hypothesis_examples() {
        let post =
            |p, a, b| posterior_two_hypothesis(TwoHypothesis::new(p, a, b).unwrap()).unwrap();
        let dercum = post(0.5, 0.05, 0.0025);
        assert!(close(dercum.posterior, 0.9524, 1e-3));
        assert!(close(dercum.evidence, 0.02625, 1e-12));
        assert!(close(post(0.01, 0.95, 0.05).evidence, 0.059, 1e-12));
        assert!(close(post(2.0 / 3.0, 0.85, 0.15).posterior, 0.9189, 1e-3));
        assert!(close(
            post(0.5, 1.0 / 20.0, 1.0 / 15.0).posterior,
            3.0 / 7.0,
            1e-12
        ));
        assert!(close(
            post(0.2, 1.0 / 6.0, 0.25).posterior,
            1.0 / 7.0,
            1e-12
        ));
        assert!(close(
            post(7.0 / 9.0, 6.0 / 7.0, 1.0 / 7.0).posterior,
            21.0 / 22.0,
            1e-12
        ));
        // P(γ=2 | γ≥1) with P(γ≥1 | γ≠2) = (1/2)/(3/4)
        let fermions = post(0.25, 1.0, 2.0 / 3.0);
        assert!(close(fermions.posterior, 1.0 / 3.0, 1e-12));
        assert!(close(fermions.evidence, 0.75, 1e-12));
        assert_eq!(
            posterior_two_hypothesis(TwoHypothesis::new(0.5, 0.0, 0.0).unwrap()),
            Err(BayesError::ZeroEvidence)
        );
    }

    #[test]
    fn mle_examples() {
        let m = mle_binomial(300, 10_000).unwrap();
        assert_eq!(m.gamma_hat, 0.03);
        assert!(close(m.variance, 2.91e-6, 1e-12));
        assert!(close(m.se, 1.706e-3, 1e-6));
        assert_eq!(mle_binomial(0, 7).unwrap().se, 0.0);
        let half = mle_binomial(50, 100).unwrap();
        assert_eq!(half.gamma_hat, 0.5);
        assert!(close(half.se, 0.05, 1e-15));
        assert_eq!(mle_binomial(0, 0), Err(BayesError::NoTrials));
        assert!(mle_binomial(3, 2).is_err());
    }

    #[test]
    fn fisher_examples() {
        assert_eq!(
            fisher_information(FisherFamily::Bernoulli { gamma: 0.5 }).unwrap(),
            4.0
        );
        assert_eq!(
            fisher_information(FisherFamily::Poisson { theta: 2.0 }).unwrap(),
            0.5
        );
        let i = fisher_information(FisherFamily::Binomial {
            n: 10_000,
            gamma: 0.03,
        })
        .unwrap();
        assert!(close(i, 1.0 / 2.91e-6, 1e-6 * i));
        assert!(fisher_information(FisherFamily::Bernoulli { gamma: 1.0 }).is_err());
        assert!(fisher_information(FisherFamily::Poisson { theta: 0.0 }).is_err());
    }

    #[test]
    fn beta_examples() {
        let b = |a, b| BetaParams::new(a, b).unwrap();
        assert!(close(beta_pdf(b(2.0, 7.0), 0.5).unwrap(), 0.4375, 1e-12));
        for t in [0.0, 0.1, 0.5, 0.99, 1.0] {
            assert!(close(beta_pdf(b(1.0, 1.0), t).unwrap(), 1.0, 1e-14));
        }
        assert!(close(beta_pdf(b(2.0, 2.0), 0.5).unwrap(), 1.5, 1e-14));
        assert_eq!(beta_pdf(b(2.0, 3.0), 0.0).unwrap(), 0.0);
        assert!(beta_pdf(b(0.5, 0.5), 0.0).is_err());
        assert!(beta_pdf(b(2.0, 2.0), 1.5).is_err());
        assert!(BetaParams::new(0.0, 1.0).is_err());
    }

    #[test]
    fn conjugate_updates() {
        let prior = BetaParams::new(2.0, 7.0).unwrap();
        assert_eq!(
            beta_binomial_update(prior, 3, 10).unwrap(),
            BetaParams::new(5.0, 14.0).unwrap()
        );
        let flat = BetaParams::new(1.0, 1.0).unwrap();
        assert_eq!(
            beta_binomial_update(flat, 4, 9).unwrap(),
            BetaParams::new(5.0, 6.0).unwrap()
        );
        assert_eq!(beta_binomial_update(prior, 0, 0).unwrap(), prior);
        assert!(beta_binomial_update(prior, 4, 3).is_err());
    }

    #[test]
    fn unnormalized_posterior() {
        let prior = BetaParams::new(2.0, 7.0).unwrap();
        let v = unnormalized_posterior_density(prior, 10, 3, 0.5).unwrap();
        assert!(close(v, 0.051269, 1e-5));
        let post = beta_binomial_update(prior, 3, 10).unwrap();
        let ratios: Vec<f64> = (1..20)
            .map(|i| {
                let t = i as f64 / 20.0;
                unnormalized_posterior_density(prior, 10, 3, t).unwrap()
                    / beta_pdf(post, t).unwrap()
            })
            .collect();
        for r in &ratios {
            assert!(close(*r, ratios[0], 1e-12 * ratios[0]));
        }
        let flat = BetaParams::new(1.0, 1.0).unwrap();
        let u = unnormalized_posterior_density(flat, 8, 2, 0.3).unwrap();
        assert!(close(u, binomial_pmf(bin(8, 0.3), 2).unwrap(), 1e-15));
    }

    fn dice_prior() -> DiscreteThetaPrior {
        DiscreteThetaPrior::new(vec![0.5, 1.0 / 6.0, 0.25], vec![0.25, 0.5, 0.25]).unwrap()
    }

    #[test]
    fn discrete_posterior_examples() {
        let post = discrete_posterior(&dice_prior(), 5, 5).unwrap();
        let raw = [
            0.25 * 0.5f64.powi(5),
            0.5 * (1.0f64 / 6.0).powi(5),
            0.25 * 0.25f64.powi(5),
        ];
        let z: f64 = raw.iter().sum();
        for (got, want) in post.probabilities().iter().zip(raw) {
            assert!(close(*got, want / z, 1e-12));
        }
        assert_eq!(post.labels().unwrap()[0], "0.5");

        let pm = DiscreteThetaPrior::point_mass(0.3).unwrap();
        assert_eq!(
            discrete_posterior(&pm, 4, 1).unwrap().probabilities(),
            &[1.0]
        );
        let none = discrete_posterior(&dice_prior(), 0, 0).unwrap();
        for (a, b) in none
            .probabilities()
            .iter()
            .zip(dice_prior().weights().probabilities())
        {
            assert!(close(*a, *b, 1e-15));
        }
        let impossible = DiscreteThetaPrior::new(vec![0.0, 1.0], vec![0.5, 0.5]).unwrap();
        assert_eq!(
            discrete_posterior(&impossible, 2, 1),
            Err(BayesError::ZeroEvidence)
        );
    }

    #[test]
    fn prior_predictive_examples() {
        let pred = prior_predictive(&dice_prior(), 5);
        assert_eq!(pred.len(), 6);
        let choose = [1.0, 5.0, 10.0, 10.0, 5.0, 1.0];
        for (y, got) in pred.probabilities().iter().enumerate() {
            let yi = y as i32;
            let want = choose[y]
                * (0.25 * 0.5f64.powi(5)
                    + 0.5 * (1.0f64 / 6.0).powi(yi) * (5.0f64 / 6.0).powi(5 - yi)
                    + 0.25 * 0.25f64.powi(yi) * 0.75f64.powi(5 - yi));
            assert!(close(*got, want, 1e-14));
        }
        let pm = prior_predictive(&DiscreteThetaPrior::point_mass(0.4).unwrap(), 3);
        for k in 0..=3 {
            assert!(close(
                pm.probabilities()[k as usize],
                binomial_pmf(bin(3, 0.4), k).unwrap(),
                1e-15
            ));
        }
        assert_eq!(prior_predictive(&dice_prior(), 0).probabilities(), &[1.0]);
    }

    #[test]
    fn exponential_tails() {
        let t = exp_tail(20.0).unwrap();
        assert_eq!(t.below, 1.0 - (-20f64).exp());
        assert_eq!(exp_tail(0.0).unwrap().below, 0.0);
        assert!(close(exp_tail(2f64.ln()).unwrap().at_or_above, 0.5, 1e-15));
        assert!(exp_tail(-1.0).is_err());
    }

    #[test]
    fn maxwell_boltzmann_mode() {
        assert_eq!(mb_most_probable_speed(1.0, 1.0, 2.0).unwrap(), 1.0);
        let v1 = mb_most_probable_speed(BOLTZMANN_CONSTANT, 300.0, 4.65e-26).unwrap();
        let v2 = mb_most_probable_speed(BOLTZMANN_CONSTANT, 600.0, 4.65e-26).unwrap();
        assert!(close(v2 / v1, 2f64.sqrt(), 1e-12));
        // grid argmax of v² exp(−m v² / 2kT) with kT = 1.5, m = 0.7
        let (kt, m) = (1.5, 0.7);
        let best = (1..200_000)
            .map(|i| i as f64 * 1e-4)
            .max_by(|a, b| {
                let f = |v: f64| v * v * (-m * v * v / (2.0 * kt)).exp();
                f(*a).total_cmp(&f(*b))
            })
            .unwrap();
        let mode = mb_most_probable_speed(kt, 1.0, m).unwrap();
        assert!(close(best, mode, 1e-3 * mode));
        assert!(mb_most_probable_speed(1.0, 0.0, 1.0).is_err());
    }
}
