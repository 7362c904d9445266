use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::InfoError;

/// Allowed deviation of a probability total from 1.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    #[default]
    Bits,
    Nats,
    Hartleys,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Bits => x.log2(),
            LogBase::Nats => x.ln(),
            LogBase::Hartleys => x.log10(),
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            LogBase::Bits => "bits",
            LogBase::Nats => "nats",
            LogBase::Hartleys => "hartleys",
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.unit())
    }
}

impl FromStr for LogBase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bits" | "bit" | "2" | "log2" => Ok(LogBase::Bits),
            "nats" | "nat" | "e" | "ln" => Ok(LogBase::Nats),
            "hartleys" | "hartley" | "bans" | "10" | "log10" => Ok(LogBase::Hartleys),
            other => Err(format!("unknown log base '{other}' (bits, nats, hartleys)")),
        }
    }
}

/// Finite distribution: non-negative entries summing to 1 within
/// [`NORMALIZATION_TOLERANCE`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteDist {
    probabilities: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl DiscreteDist {
    pub fn new(probabilities: Vec<f64>) -> Result<Self, InfoError> {
        check_probabilities(&probabilities)?;
        Ok(DiscreteDist {
            probabilities,
            labels: None,
        })
    }

    pub fn with_labels(self, labels: Vec<String>) -> Result<Self, InfoError> {
        if labels.len() != self.probabilities.len() {
            return Err(InfoError::LabelCount {
                labels: labels.len(),
                outcomes: self.probabilities.len(),
            });
        }
        Ok(DiscreteDist {
            labels: Some(labels),
            ..self
        })
    }

    pub fn uniform(n: usize) -> Result<Self, InfoError> {
        if n == 0 {
            return Err(InfoError::Empty);
        }
        Self::new(vec![1.0 / n as f64; n])
    }

    /// Relative frequencies of non-negative counts.
    pub fn from_counts(counts: &[f64]) -> Result<Self, InfoError> {
        if counts.is_empty() {
            return Err(InfoError::Empty);
        }
        for (index, &value) in counts.iter().enumerate() {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(InfoError::NegativeProbability { index, value });
            }
        }
        let total: f64 = counts.iter().sum();
        if total <= 0.0 {
            return Err(InfoError::NotNormalized { sum: total });
        }
        Self::new(counts.iter().map(|c| c / total).collect())
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<f64> {
        self.probabilities.get(i).copied()
    }
}

impl<'de> Deserialize<'de> for DiscreteDist {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            probabilities: Vec<f64>,
            #[serde(default)]
            labels: Option<Vec<String>>,
        }
        let raw = Raw::deserialize(d)?;
        let dist = DiscreteDist::new(raw.probabilities).map_err(serde::de::Error::custom)?;
        match raw.labels {
            Some(l) => dist.with_labels(l).map_err(serde::de::Error::custom),
            None => Ok(dist),
        }
    }
}

fn check_probabilities(p: &[f64]) -> Result<(), InfoError> {
    if p.is_empty() {
        return Err(InfoError::Empty);
    }
    for (index, &value) in p.iter().enumerate() {
        if !(value >= 0.0 && value.is_finite()) {
            return Err(InfoError::NegativeProbability { index, value });
        }
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(InfoError::NotNormalized { sum });
    }
    Ok(())
}

/// Joint distribution `P(x, y)`; rows index `x`, columns index `y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct JointDist {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl JointDist {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, InfoError> {
        let cols = rows.first().map(Vec::len).unwrap_or(0);
        if cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(InfoError::RaggedJoint);
        }
        let n = rows.len();
        let data: Vec<f64> = rows.into_iter().flatten().collect();
        check_probabilities(&data)?;
        Ok(JointDist {
            rows: n,
            cols,
            data,
        })
    }

    /// Product of two marginals, the joint of independent variables.
    pub fn independent(px: &DiscreteDist, py: &DiscreteDist) -> Self {
        let data = px
            .probabilities()
            .iter()
            .flat_map(|a| py.probabilities().iter().map(move |b| a * b))
            .collect();
        JointDist {
            rows: px.len(),
            cols: py.len(),
            data,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[x * self.cols + y]
    }

    pub fn cells(&self) -> &[f64] {
        &self.data
    }

    pub fn marginal_x(&self) -> DiscreteDist {
        let p = self
            .data
            .chunks(self.cols)
            .map(|r| r.iter().sum())
            .collect();
        DiscreteDist {
            probabilities: p,
            labels: None,
        }
    }

    pub fn marginal_y(&self) -> DiscreteDist {
        let p = (0..self.cols)
            .map(|y| (0..self.rows).map(|x| self.get(x, y)).sum())
            .collect();
        DiscreteDist {
            probabilities: p,
            labels: None,
        }
    }
}

impl TryFrom<Vec<Vec<f64>>> for JointDist {
    type Error = InfoError;
    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self, InfoError> {
        JointDist::from_rows(rows)
    }
}

impl From<JointDist> for Vec<Vec<f64>> {
    fn from(j: JointDist) -> Self {
        j.data.chunks(j.cols).map(<[f64]>::to_vec).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(DiscreteDist::new(vec![0.5, 0.5]).is_ok());
        assert!(DiscreteDist::new(vec![0.5, 0.5 + 5e-10]).is_ok());
        assert!(matches!(
            DiscreteDist::new(vec![0.5, 0.6]),
            Err(InfoError::NotNormalized { .. })
        ));
        assert!(matches!(
            DiscreteDist::new(vec![1.5, -0.5]),
            Err(InfoError::NegativeProbability { index: 1, .. })
        ));
        assert!(matches!(DiscreteDist::new(vec![]), Err(InfoError::Empty)));
        assert!(DiscreteDist::new(vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn labels_must_match_support() {
        let d = DiscreteDist::uniform(2).unwrap();
        assert!(d.clone().with_labels(vec!["a".into()]).is_err());
        let d = d.with_labels(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(d.labels().unwrap()[1], "b");
    }

    #[test]
    fn counts_normalize() {
        let d = DiscreteDist::from_counts(&[3.0, 1.0]).unwrap();
        assert_eq!(d.probabilities(), &[0.75, 0.25]);
        assert!(DiscreteDist::from_counts(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn json_round_trip_revalidates() {
        let d = DiscreteDist::new(vec![0.25, 0.75]).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<DiscreteDist>(&s).unwrap(), d);
        assert!(serde_json::from_str::<DiscreteDist>(r#"{"probabilities":[0.3,0.3]}"#).is_err());
        let j: JointDist = serde_json::from_str("[[0.25,0.25],[0.5,0.0]]").unwrap();
        assert_eq!(j.shape(), (2, 2));
        assert!(serde_json::from_str::<JointDist>("[[0.5],[0.25,0.25]]").is_err());
    }

    #[test]
    fn marginals() {
        let j = JointDist::from_rows(vec![vec![0.1, 0.2], vec![0.3, 0.4]]).unwrap();
        let mx = j.marginal_x();
        let my = j.marginal_y();
        assert!((mx.probabilities()[0] - 0.3).abs() < 1e-15);
        assert!((my.probabilities()[1] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn base_parsing() {
        assert_eq!("bits".parse::<LogBase>().unwrap(), LogBase::Bits);
        assert_eq!("NATS".parse::<LogBase>().unwrap(), LogBase::Nats);
        assert_eq!("hartleys".parse::<LogBase>().unwrap(), LogBase::Hartleys);
        assert!("furlongs".parse::<LogBase>().is_err());
    }
}
