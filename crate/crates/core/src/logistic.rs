//! Odds and log-odds conversions, logistic-model evaluation and inversion,
//! odds ratios and relative risk with Wald intervals.
//!
//! Logarithms in this module are natural.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LogisticError {
    #[error("probability {0} is outside the admissible range")]
    InvalidProbability(f64),
    #[error("odds {0} must be finite and non-negative")]
    InvalidOdds(f64),
    #[error("model coefficients must be finite")]
    NonFiniteCoefficient,
    #[error("model has {expected} coefficients but {found} features were given")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("exactly one feature slot must be left free, found {0}")]
    FreeSlots(usize),
    #[error("coefficient of the free feature is zero")]
    ZeroCoefficient,
    #[error("odds-ratio standard error needs every cell positive, cell {0} is zero")]
    ZeroCell(char),
    #[error("relative risk is undefined: {0}")]
    ZeroRisk(&'static str),
    #[error("standard error must be positive and finite, got {0}")]
    InvalidStandardError(f64),
    #[error("malformed 2x2 table '{0}', expected a,b,c,d")]
    BadTable(String),
    #[error("unsupported confidence level '{0}' (90, 95, 99, 99.9)")]
    BadLevel(String),
}

pub fn odds_from_prob(p: f64) -> Result<f64, LogisticError> {
    if !(0.0..1.0).contains(&p) {
        return Err(LogisticError::InvalidProbability(p));
    }
    Ok(p / (1.0 - p))
}

pub fn prob_from_odds(odds: f64) -> Result<f64, LogisticError> {
    if !(odds >= 0.0 && odds.is_finite()) {
        return Err(LogisticError::InvalidOdds(odds));
    }
    Ok(odds / (odds + 1.0))
}

pub fn logit(p: f64) -> Result<f64, LogisticError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(LogisticError::InvalidProbability(p));
    }
    Ok(p.ln() - (-p).ln_1p())
}

/// Logistic function; never overflows.
pub fn expit(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogisticModel {
    intercept: f64,
    coefficients: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub logit: f64,
    pub odds: f64,
    pub probability: f64,
}

impl LogisticModel {
    pub fn new(intercept: f64, coefficients: Vec<f64>) -> Result<Self, LogisticError> {
        if !intercept.is_finite() || coefficients.iter().any(|b| !b.is_finite()) {
            return Err(LogisticError::NonFiniteCoefficient);
        }
        Ok(LogisticModel {
            intercept,
            coefficients,
        })
    }

    /// `[β₀, β₁, …]`.
    pub fn from_betas(betas: &[f64]) -> Result<Self, LogisticError> {
        match betas.split_first() {
            Some((&b0, rest)) => Self::new(b0, rest.to_vec()),
            None => Err(LogisticError::DimensionMismatch {
                expected: 1,
                found: 0,
            }),
        }
    }

    pub fn intercept(&self) -> f64 {
        self.intercept
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    fn check_dim(&self, found: usize) -> Result<(), LogisticError> {
        if found != self.coefficients.len() {
            return Err(LogisticError::DimensionMismatch {
                expected: self.coefficients.len(),
                found,
            });
        }
        Ok(())
    }
}

pub fn predict(model: &LogisticModel, x: &[f64]) -> Result<Prediction, LogisticError> {
    model.check_dim(x.len())?;
    let z = model.intercept
        + model
            .coefficients
            .iter()
            .zip(x)
            .map(|(b, v)| b * v)
            .sum::<f64>();
    Ok(Prediction {
        logit: z,
        odds: z.exp(),
        probability: expit(z),
    })
}

/// Value of the single `None` slot in `x` at which the model predicts `target_p`.
pub fn solve_feature_for_prob(
    model: &LogisticModel,
    x: &[Option<f64>],
    target_p: f64,
) -> Result<f64, LogisticError> {
    model.check_dim(x.len())?;
    let free: Vec<usize> = x
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_none())
        .map(|(i, _)| i)
        .collect();
    let [slot] = free[..] else {
        return Err(LogisticError::FreeSlots(free.len()));
    };
    let beta = model.coefficients[slot];
    if beta == 0.0 {
        return Err(LogisticError::ZeroCoefficient);
    }
    let fixed: f64 = model
        .coefficients
        .iter()
        .zip(x)
        .filter_map(|(b, v)| v.map(|v| b * v))
        .sum();
    Ok((logit(target_p)? - model.intercept - fixed) / beta)
}

/// Closed interval with `low ≤ high`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub low: f64,
    pub high: f64,
}

impl Interval {
    /// Orders the endpoints.
    pub fn new(a: f64, b: f64) -> Self {
        Interval {
            low: a.min(b),
            high: a.max(b),
        }
    }

    pub fn around(center: f64, half_width: f64) -> Self {
        Self::new(center - half_width, center + half_width)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.low <= x && x <= self.high
    }

    pub fn map(self, f: impl Fn(f64) -> f64) -> Self {
        Self::new(f(self.low), f(self.high))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.low, self.high)
    }
}

/// Two-sided normal confidence levels with tabulated critical values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum ConfidenceLevel {
    #[serde(rename = "90")]
    P90,
    #[default]
    #[serde(rename = "95")]
    P95,
    #[serde(rename = "99")]
    P99,
    #[serde(rename = "99.9")]
    P999,
}

impl ConfidenceLevel {
    pub const ALL: [ConfidenceLevel; 4] = [Self::P90, Self::P95, Self::P99, Self::P999];

    pub fn z(self) -> f64 {
        match self {
            Self::P90 => 1.645,
            Self::P95 => 1.960,
            Self::P99 => 2.576,
            Self::P999 => 3.291,
        }
    }

    pub fn percent(self) -> f64 {
        match self {
            Self::P90 => 90.0,
            Self::P95 => 95.0,
            Self::P99 => 99.0,
            Self::P999 => 99.9,
        }
    }
}

impl FromStr for ConfidenceLevel {
    type Err = LogisticError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_end_matches('%');
        match t {
            "90" | "0.90" | "0.9" => Ok(Self::P90),
            "95" | "0.95" => Ok(Self::P95),
            "99" | "0.99" => Ok(Self::P99),
            "99.9" | "0.999" => Ok(Self::P999),
            _ => Err(LogisticError::BadLevel(s.to_string())),
        }
    }
}

impl fmt::Display for ConfidenceLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}%", self.percent())
    }
}

/// Counts laid out with rows = group, columns = outcome (yes, no):
///
/// ```text
///            yes  no
/// group 1     a    b
/// group 2     c    d
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoByTwoTable {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl TwoByTwoTable {
    pub fn new(a: u64, b: u64, c: u64, d: u64) -> Self {
        TwoByTwoTable { a, b, c, d }
    }

    fn cells(&self) -> [(char, f64); 4] {
        [
            ('a', self.a as f64),
            ('b', self.b as f64),
            ('c', self.c as f64),
            ('d', self.d as f64),
        ]
    }
}

impl FromStr for TwoByTwoTable {
    type Err = LogisticError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<u64> = s
            .split(',')
            .map(|p| p.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| LogisticError::BadTable(s.to_string()))?;
        match parts[..] {
            [a, b, c, d] => Ok(TwoByTwoTable::new(a, b, c, d)),
            _ => Err(LogisticError::BadTable(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OddsRatio {
    pub or: f64,
    pub log_or: f64,
    pub se: f64,
    pub ci_log: Interval,
    pub ci_or: Interval,
}

/// Sample odds ratio `ad/(bc)` with the Woolf log-scale interval.
pub fn odds_ratio(t: &TwoByTwoTable, level: ConfidenceLevel) -> Result<OddsRatio, LogisticError> {
    if let Some((name, _)) = t.cells().into_iter().find(|(_, v)| *v == 0.0) {
        return Err(LogisticError::ZeroCell(name));
    }
    let [(_, a), (_, b), (_, c), (_, d)] = t.cells();
    let or = (a * d) / (b * c);
    let log_or = or.ln();
    let se = (1.0 / a + 1.0 / b + 1.0 / c + 1.0 / d).sqrt();
    let ci_log = Interval::around(log_or, level.z() * se);
    Ok(OddsRatio {
        or,
        log_or,
        se,
        ci_log,
        ci_or: ci_log.map(f64::exp),
    })
}

/// `(a/(a+b)) / (c/(c+d))`.
pub fn relative_risk(t: &TwoByTwoTable) -> Result<f64, LogisticError> {
    let [(_, a), (_, b), (_, c), (_, d)] = t.cells();
    if a + b == 0.0 || c + d == 0.0 {
        return Err(LogisticError::ZeroRisk("empty group"));
    }
    if c == 0.0 {
        return Err(LogisticError::ZeroRisk("reference group risk is zero"));
    }
    Ok((a / (a + b)) / (c / (c + d)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientOr {
    pub or: f64,
    pub ci_beta: Interval,
    pub ci_or: Interval,
}

/// Odds ratio `e^β` of a fitted coefficient and its Wald interval.
pub fn coefficient_or_ci(
    estimate: f64,
    se: f64,
    level: ConfidenceLevel,
) -> Result<CoefficientOr, LogisticError> {
    if !(se > 0.0 && se.is_finite()) {
        return Err(LogisticError::InvalidStandardError(se));
    }
    let ci_beta = Interval::around(estimate, level.z() * se);
    Ok(CoefficientOr {
        or: estimate.exp(),
        ci_beta,
        ci_or: ci_beta.map(f64::exp),
    })
}

/// Negative log-likelihood of one Bernoulli observation.
pub fn binary_cross_entropy(y_hat: f64, y: bool) -> Result<f64, LogisticError> {
    if !(y_hat > 0.0 && y_hat < 1.0) {
        return Err(LogisticError::InvalidProbability(y_hat));
    }
    Ok(if y { -y_hat.ln() } else { -(-y_hat).ln_1p() })
}
