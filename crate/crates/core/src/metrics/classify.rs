use std::io::Read;

use serde::{Deserialize, Serialize};

use super::MetricsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub tp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub fp: u64,
    pub tn: u64,
}

impl ConfusionCounts {
    pub fn new(tp: u64, fn_: u64, fp: u64, tn: u64) -> Self {
        ConfusionCounts { tp, fn_, fp, tn }
    }

    pub fn total(&self) -> u64 {
        self.tp + self.fn_ + self.fp + self.tn
    }

    pub fn accuracy(&self) -> Result<f64, MetricsError> {
        ratio(self.tp + self.tn, self.total(), "accuracy")
    }

    pub fn precision(&self) -> Result<f64, MetricsError> {
        ratio(self.tp, self.tp + self.fp, "precision")
    }

    pub fn recall(&self) -> Result<f64, MetricsError> {
        ratio(self.tp, self.tp + self.fn_, "recall")
    }
}

fn ratio(num: u64, den: u64, what: &'static str) -> Result<f64, MetricsError> {
    if den == 0 {
        return Err(MetricsError::ZeroDenominator(what));
    }
    Ok(num as f64 / den as f64)
}

/// Each rate is `None` when its own denominator is zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfusionMetrics {
    pub accuracy: Option<f64>,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
}

pub fn confusion_metrics(c: &ConfusionCounts) -> ConfusionMetrics {
    ConfusionMetrics {
        accuracy: c.accuracy().ok(),
        precision: c.precision().ok(),
        recall: c.recall().ok(),
    }
}

/// Parallel scores and binary labels with both classes present.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoredLabels {
    scores: Vec<f64>,
    labels: Vec<bool>,
}

impl ScoredLabels {
    pub fn new(scores: Vec<f64>, labels: Vec<bool>) -> Result<Self, MetricsError> {
        if scores.len() != labels.len() {
            return Err(MetricsError::LengthMismatch {
                left: scores.len(),
                right: labels.len(),
            });
        }
        if let Some(i) = scores.iter().position(|s| !s.is_finite()) {
            return Err(MetricsError::NonFinite(i));
        }
        if !labels.contains(&true) || !labels.contains(&false) {
            return Err(MetricsError::SingleClass);
        }
        Ok(ScoredLabels { scores, labels })
    }

    /// `score,label` lines with label in {0, 1, +, -, true, false}; a first
    /// line whose score does not parse is taken as a header.
    pub fn from_csv_reader(reader: impl Read) -> Result<Self, MetricsError> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(reader);
        let (mut scores, mut labels) = (Vec::new(), Vec::new());
        for (i, rec) in rdr.records().enumerate() {
            let line = i + 1;
            let rec = rec.map_err(|e| MetricsError::Parse {
                line,
                message: e.to_string(),
            })?;
            let bad = |message: String| MetricsError::Parse { line, message };
            if rec.len() != 2 {
                return Err(bad(format!(
                    "expected 'score,label', found {} fields",
                    rec.len()
                )));
            }
            let score = match rec[0].parse::<f64>() {
                Ok(s) => s,
                Err(_) if line == 1 => continue,
                Err(e) => return Err(bad(format!("score '{}': {e}", &rec[0]))),
            };
            let label = match &rec[1] {
                "1" | "+" | "true" => true,
                "0" | "-" | "false" => false,
                other => return Err(bad(format!("label '{other}'"))),
            };
            scores.push(score);
            labels.push(label);
        }
        Self::new(scores, labels)
    }

    pub fn from_csv_str(text: &str) -> Result<Self, MetricsError> {
        Self::from_csv_reader(text.as_bytes())
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn labels(&self) -> &[bool] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RocPoint {
    pub fpr: f64,
    pub tpr: f64,
    /// Scores `>= threshold` are called positive; `+inf` for the origin.
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RocCurve {
    pub points: Vec<RocPoint>,
    pub auc: f64,
}

/// One threshold per distinct score, descending, so tied scores move the
/// curve diagonally. AUC is the trapezoid area.
pub fn roc_auc(s: &ScoredLabels) -> RocCurve {
    let pos = s.labels.iter().filter(|&&l| l).count() as f64;
    let neg = s.len() as f64 - pos;
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&a, &b| s.scores[b].total_cmp(&s.scores[a]));

    let mut points = vec![RocPoint {
        fpr: 0.0,
        tpr: 0.0,
        threshold: f64::INFINITY,
    }];
    let (mut tp, mut fp) = (0u64, 0u64);
    let mut auc = 0.0;
    let mut i = 0;
    while i < order.len() {
        let threshold = s.scores[order[i]];
        while i < order.len() && s.scores[order[i]] == threshold {
            if s.labels[order[i]] {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        let prev = *points.last().expect("origin present");
        let p = RocPoint {
            fpr: fp as f64 / neg,
            tpr: tp as f64 / pos,
            threshold,
        };
        auc += (p.fpr - prev.fpr) * (p.tpr + prev.tpr) / 2.0;
        points.push(p);
    }
    RocCurve { points, auc }
}
