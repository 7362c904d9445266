use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::activation::{activate, ActivationKind};
use super::NnError;
use crate::infotheory::DiscreteDist;
use crate::tensorops::Matrix;

/// `activation(W·x + b)` with `W` of shape out × in.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseLayer {
    weights: Matrix,
    bias: Vec<f64>,
    activation: ActivationKind,
}

impl DenseLayer {
    pub fn new(
        weights: Matrix,
        bias: Vec<f64>,
        activation: ActivationKind,
    ) -> Result<Self, NnError> {
        if bias.len() != weights.rows() {
            return Err(NnError::BiasLength {
                expected: weights.rows(),
                found: bias.len(),
            });
        }
        Ok(DenseLayer {
            weights,
            bias,
            activation,
        })
    }

    /// Same bias for every unit.
    pub fn with_shared_bias(weights: Matrix, bias: f64, activation: ActivationKind) -> Self {
        let bias = vec![bias; weights.rows()];
        DenseLayer {
            weights,
            bias,
            activation,
        }
    }

    pub fn weights(&self) -> &Matrix {
        &self.weights
    }

    pub fn bias(&self) -> &[f64] {
        &self.bias
    }

    pub fn activation(&self) -> ActivationKind {
        self.activation
    }

    pub fn inputs(&self) -> usize {
        self.weights.cols()
    }

    pub fn outputs(&self) -> usize {
        self.weights.rows()
    }

    /// `W·x + b`.
    pub fn pre_activation(&self, x: &[f64]) -> Result<Vec<f64>, NnError> {
        if x.len() != self.inputs() {
            return Err(NnError::DimensionMismatch {
                expected: self.inputs(),
                found: x.len(),
            });
        }
        let wx = self.weights.mul_vec(x)?;
        Ok(wx.iter().zip(&self.bias).map(|(z, b)| z + b).collect())
    }
}

pub fn dense_forward(layer: &DenseLayer, x: &[f64]) -> Result<Vec<f64>, NnError> {
    let z = layer.pre_activation(x)?;
    Ok(z.into_iter()
        .map(|v| activate(layer.activation, v))
        .collect())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct LayerSpec {
    rows: usize,
    cols: usize,
    weights: Vec<f64>,
    bias: Vec<f64>,
    activation: ActivationKind,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct MlpSpec {
    layers: Vec<LayerSpec>,
    #[serde(default)]
    softmax: bool,
}

/// Dense layers applied in order, optionally followed by softmax.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MlpSpec", into = "MlpSpec")]
pub struct Mlp {
    layers: Vec<DenseLayer>,
    softmax: bool,
}

impl Mlp {
    /// Layer `i + 1` must accept exactly the outputs of layer `i`.
    pub fn new(layers: Vec<DenseLayer>, softmax: bool) -> Result<Self, NnError> {
        if layers.is_empty() {
            return Err(NnError::EmptyNetwork);
        }
        for (i, pair) in layers.windows(2).enumerate() {
            if pair[1].inputs() != pair[0].outputs() {
                return Err(NnError::LayerChain {
                    layer: i + 1,
                    expected: pair[1].inputs(),
                    found: pair[0].outputs(),
                });
            }
        }
        Ok(Mlp { layers, softmax })
    }

    pub fn layers(&self) -> &[DenseLayer] {
        &self.layers
    }

    pub fn softmax(&self) -> bool {
        self.softmax
    }

    pub fn inputs(&self) -> usize {
        self.layers[0].inputs()
    }

    pub fn from_json(text: &str) -> Result<Self, NnError> {
        serde_json::from_str(text).map_err(|e| NnError::Json(e.to_string()))
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, NnError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| NnError::Json(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("network serializes")
    }
}

impl FromStr for Mlp {
    type Err = NnError;
    fn from_str(s: &str) -> Result<Self, NnError> {
        Mlp::from_json(s)
    }
}

impl TryFrom<MlpSpec> for Mlp {
    type Error = NnError;
    fn try_from(spec: MlpSpec) -> Result<Self, NnError> {
        let layers = spec
            .layers
            .into_iter()
            .map(|l| {
                DenseLayer::new(
                    Matrix::new(l.rows, l.cols, l.weights)?,
                    l.bias,
                    l.activation,
                )
            })
            .collect::<Result<_, _>>()?;
        Mlp::new(layers, spec.softmax)
    }
}

impl From<Mlp> for MlpSpec {
    fn from(net: Mlp) -> MlpSpec {
        MlpSpec {
            layers: net
                .layers
                .into_iter()
                .map(|l| LayerSpec {
                    rows: l.weights.rows(),
                    cols: l.weights.cols(),
                    weights: l.weights.into_data(),
                    bias: l.bias,
                    activation: l.activation,
                })
                .collect(),
            softmax: net.softmax,
        }
    }
}

/// Per-layer values of one forward pass. `output` is the last activation, or
/// its softmax when the network asks for one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MlpTrace {
    pub pre_activations: Vec<Vec<f64>>,
    pub activations: Vec<Vec<f64>>,
    pub output: Vec<f64>,
}

pub fn mlp_forward(net: &Mlp, x: &[f64]) -> Result<MlpTrace, NnError> {
    let mut pre_activations = Vec::with_capacity(net.layers.len());
    let mut activations: Vec<Vec<f64>> = Vec::with_capacity(net.layers.len());
    for layer in &net.layers {
        let input = activations.last().map_or(x, Vec::as_slice);
        let z = layer.pre_activation(input)?;
        activations.push(z.iter().map(|&v| activate(layer.activation, v)).collect());
        pre_activations.push(z);
    }
    let last = activations.last().expect("at least one layer");
    let output = if net.softmax {
        softmax(last)?.probabilities().to_vec()
    } else {
        last.clone()
    };
    Ok(MlpTrace {
        pre_activations,
        activations,
        output,
    })
}

/// `e^(vᵢ − max v) / Σⱼ e^(vⱼ − max v)`.
pub fn softmax(v: &[f64]) -> Result<DiscreteDist, NnError> {
    if v.is_empty() || v.iter().any(|x| !x.is_finite()) {
        return Err(NnError::NonFinite);
    }
    let m = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let e: Vec<f64> = v.iter().map(|x| (x - m).exp()).collect();
    let total: f64 = e.iter().sum();
    Ok(DiscreteDist::new(
        e.into_iter().map(|x| x / total).collect(),
    )?)
}

/// `−Σ tᵢ ln pᵢ` for a one-hot `target`, i.e. `−ln p[target]` in nats.
pub fn cross_entropy_loss(probs: &DiscreteDist, target: &[f64]) -> Result<f64, NnError> {
    if target.len() != probs.len() {
        return Err(NnError::DimensionMismatch {
            expected: probs.len(),
            found: target.len(),
        });
    }
    let ones: Vec<usize> = target
        .iter()
        .enumerate()
        .filter(|(_, &t)| t == 1.0)
        .map(|(i, _)| i)
        .collect();
    let [index] = ones[..] else {
        return Err(NnError::NotOneHot);
    };
    if target.iter().any(|&t| t != 0.0 && t != 1.0) {
        return Err(NnError::NotOneHot);
    }
    let p = probs.probabilities()[index];
    if p == 0.0 {
        return Err(NnError::ZeroProbability { index });
    }
    Ok(-p.ln())
}
