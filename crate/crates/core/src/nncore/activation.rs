use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::NnError;
use crate::exprgraph::central_difference;
use crate::logistic::expit;

/// Negative-side slope of a leaky ReLU, strictly inside (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LeakySlope(f64);

impl LeakySlope {
    pub fn new(a: f64) -> Result<Self, NnError> {
        if a > 0.0 && a < 1.0 {
            Ok(LeakySlope(a))
        } else {
            Err(NnError::InvalidSlope(a))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ActivationKind {
    Sigmoid,
    /// `1 / (1 + 2^(−1.5x))`.
    SigmoidApprox,
    Tanh,
    Relu,
    LeakyRelu(LeakySlope),
    /// `x·σ(x)`.
    Swish,
    Identity,
}

impl ActivationKind {
    pub fn leaky_relu(a: f64) -> Result<Self, NnError> {
        LeakySlope::new(a).map(ActivationKind::LeakyRelu)
    }

    /// True for kinds with a kink at 0.
    pub fn has_kink(self) -> bool {
        matches!(self, ActivationKind::Relu | ActivationKind::LeakyRelu(_))
    }
}

impl fmt::Display for ActivationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActivationKind::Sigmoid => f.write_str("sigmoid"),
            ActivationKind::SigmoidApprox => f.write_str("sigmoid_approx"),
            ActivationKind::Tanh => f.write_str("tanh"),
            ActivationKind::Relu => f.write_str("relu"),
            ActivationKind::LeakyRelu(a) => write!(f, "leaky_relu({})", a.0),
            ActivationKind::Swish => f.write_str("swish"),
            ActivationKind::Identity => f.write_str("identity"),
        }
    }
}

impl FromStr for ActivationKind {
    type Err = NnError;

    /// Accepts the display names; the leaky slope is written `leaky_relu(0.01)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        Ok(match t.as_str() {
            "sigmoid" => ActivationKind::Sigmoid,
            "sigmoid_approx" => ActivationKind::SigmoidApprox,
            "tanh" => ActivationKind::Tanh,
            "relu" => ActivationKind::Relu,
            "swish" => ActivationKind::Swish,
            "identity" | "linear" => ActivationKind::Identity,
            _ => {
                let a = t
                    .strip_prefix("leaky_relu(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|a| a.trim().parse::<f64>().ok())
                    .ok_or_else(|| NnError::UnknownActivation(s.to_string()))?;
                ActivationKind::leaky_relu(a)?
            }
        })
    }
}

impl TryFrom<String> for ActivationKind {
    type Error = NnError;
    fn try_from(s: String) -> Result<Self, NnError> {
        s.parse()
    }
}

impl From<ActivationKind> for String {
    fn from(k: ActivationKind) -> String {
        k.to_string()
    }
}

fn sigmoid_approx(x: f64) -> f64 {
    1.0 / (1.0 + (-1.5 * x).exp2())
}

pub fn activate(kind: ActivationKind, x: f64) -> f64 {
    match kind {
        ActivationKind::Sigmoid => expit(x),
        ActivationKind::SigmoidApprox => sigmoid_approx(x),
        ActivationKind::Tanh => x.tanh(),
        ActivationKind::Relu => x.max(0.0),
        ActivationKind::LeakyRelu(a) => {
            if x > 0.0 {
                x
            } else {
                a.0 * x
            }
        }
        ActivationKind::Swish => x * expit(x),
        ActivationKind::Identity => x,
    }
}

/// Exact derivative. At the kink, `relu′(0) = 0` and `leaky′(0) = a`.
pub fn activate_grad(kind: ActivationKind, x: f64) -> f64 {
    match kind {
        ActivationKind::Sigmoid => {
            let s = expit(x);
            s * (1.0 - s)
        }
        ActivationKind::SigmoidApprox => {
            let s = sigmoid_approx(x);
            1.5 * std::f64::consts::LN_2 * s * (1.0 - s)
        }
        ActivationKind::Tanh => {
            let t = x.tanh();
            1.0 - t * t
        }
        ActivationKind::Relu => {
            if x > 0.0 {
                1.0
            } else {
                0.0
            }
        }
        ActivationKind::LeakyRelu(a) => {
            if x > 0.0 {
                1.0
            } else {
                a.0
            }
        }
        ActivationKind::Swish => {
            let s = expit(x);
            s + x * s * (1.0 - s)
        }
        ActivationKind::Identity => 1.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GradCheck {
    pub analytic: f64,
    pub numeric: f64,
    pub passed: bool,
}

/// Compares `activate_grad` with a central difference of `activate`:
/// passes iff `|analytic − numeric| ≤ tol·max(1, |analytic|)`.
pub fn grad_check(kind: ActivationKind, x: f64, h: f64, tol: f64) -> Result<GradCheck, NnError> {
    if !(h > 0.0 && h.is_finite() && tol > 0.0 && tol.is_finite()) {
        return Err(NnError::InvalidStep);
    }
    if kind.has_kink() && x.abs() <= h {
        return Err(NnError::NearKink { x, h });
    }
    let analytic = activate_grad(kind, x);
    let numeric = central_difference(|t| activate(kind, t), x, h);
    Ok(GradCheck {
        analytic,
        numeric,
        passed: (analytic - numeric).abs() <= tol * analytic.abs().max(1.0),
    })
}
