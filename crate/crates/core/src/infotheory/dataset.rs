use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{entropy, DiscreteDist, InfoError, LogBase};

/// Rows of categorical features with a binary label.
///
/// Feature tokens are interned per column: `levels[f][code]` is the token
/// behind code `code` of feature `f`, in order of first appearance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabeledDataset {
    feature_names: Vec<String>,
    levels: Vec<Vec<String>>,
    codes: Vec<Vec<u32>>,
    labels: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Split {
    pub feature: usize,
    pub name: String,
    pub gain: f64,
}

impl LabeledDataset {
    /// Builds from token rows. Needs at least one feature and one row, and
    /// every row must have one token per feature.
    pub fn from_rows<S: AsRef<str>>(
        feature_names: &[S],
        rows: &[(Vec<S>, bool)],
    ) -> Result<Self, InfoError> {
        if feature_names.is_empty() {
            return Err(InfoError::NoFeatures);
        }
        if rows.is_empty() {
            return Err(InfoError::NoRows);
        }
        let width = feature_names.len();
        let mut interners: Vec<HashMap<String, u32>> = vec![HashMap::new(); width];
        let mut levels: Vec<Vec<String>> = vec![Vec::new(); width];
        let mut codes = Vec::with_capacity(rows.len());
        let mut labels = Vec::with_capacity(rows.len());
        for (row, (values, label)) in rows.iter().enumerate() {
            if values.len() != width {
                return Err(InfoError::RaggedRow {
                    row,
                    expected: width,
                    found: values.len(),
                });
            }
            let coded = values
                .iter()
                .enumerate()
                .map(|(f, token)| {
                    let token = token.as_ref();
                    *interners[f].entry(token.to_string()).or_insert_with(|| {
                        levels[f].push(token.to_string());
                        (levels[f].len() - 1) as u32
                    })
                })
                .collect();
            codes.push(coded);
            labels.push(*label);
        }
        Ok(LabeledDataset {
            feature_names: feature_names
                .iter()
                .map(|s| s.as_ref().to_string())
                .collect(),
            levels,
            codes,
            labels,
        })
    }

    /// CSV with a header row; the last column is the label (`+`/`-` or `1`/`0`).
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self, InfoError> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let header = rdr.headers().map_err(csv_err)?.clone();
        if header.len() < 2 {
            return Err(InfoError::NoFeatures);
        }
        let names: Vec<String> = header
            .iter()
            .take(header.len() - 1)
            .map(String::from)
            .collect();
        let mut rows = Vec::new();
        for (row, record) in rdr.records().enumerate() {
            let record = record.map_err(csv_err)?;
            let fields: Vec<String> = record.iter().map(String::from).collect();
            let Some((label, values)) = fields.split_last() else {
                continue;
            };
            rows.push((values.to_vec(), parse_label(row, label)?));
        }
        Self::from_rows(&names, &rows)
    }

    pub fn from_csv_str(text: &str) -> Result<Self, InfoError> {
        Self::from_csv_reader(text.as_bytes())
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self, InfoError> {
        let file = std::fs::File::open(path).map_err(|e| InfoError::Csv(e.to_string()))?;
        Self::from_csv_reader(file)
    }

    pub fn n_rows(&self) -> usize {
        self.labels.len()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn feature_index(&self, name: &str) -> Option<usize> {
        self.feature_names.iter().position(|n| n == name)
    }

    pub fn levels(&self, feature: usize) -> Option<&[String]> {
        self.levels.get(feature).map(Vec::as_slice)
    }

    pub fn labels(&self) -> &[bool] {
        &self.labels
    }

    pub fn code(&self, row: usize, feature: usize) -> u32 {
        self.codes[row][feature]
    }

    /// Empirical `(P(+), P(−))`.
    pub fn label_distribution(&self) -> DiscreteDist {
        let pos = self.labels.iter().filter(|&&l| l).count() as f64;
        DiscreteDist::from_counts(&[pos, self.n_rows() as f64 - pos])
            .expect("a dataset has at least one row")
    }

    fn check_feature(&self, feature: usize) -> Result<(), InfoError> {
        if feature >= self.n_features() {
            return Err(InfoError::FeatureOutOfRange {
                index: feature,
                count: self.n_features(),
            });
        }
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> InfoError {
    InfoError::Csv(e.to_string())
}

fn parse_label(row: usize, token: &str) -> Result<bool, InfoError> {
    match token {
        "+" | "1" => Ok(true),
        "-" | "0" => Ok(false),
        _ => Err(InfoError::BadLabel {
            row,
            token: token.to_string(),
        }),
    }
}

/// `H(label | feature) = Σⱼ P(θ = j)·H(label | θ = j)`.
pub fn conditional_entropy(
    ds: &LabeledDataset,
    feature: usize,
    base: LogBase,
) -> Result<f64, InfoError> {
    ds.check_feature(feature)?;
    // (rows, positives) per level
    let mut tally = vec![(0usize, 0usize); ds.levels[feature].len()];
    for (codes, &label) in ds.codes.iter().zip(&ds.labels) {
        let t = &mut tally[codes[feature] as usize];
        t.0 += 1;
        t.1 += label as usize;
    }
    let n = ds.n_rows() as f64;
    Ok(tally
        .into_iter()
        .map(|(rows, pos)| {
            let given = DiscreteDist::from_counts(&[pos as f64, (rows - pos) as f64])
                .expect("every interned level occurs at least once");
            rows as f64 / n * entropy(&given, base)
        })
        .sum())
}

pub fn information_gain(
    ds: &LabeledDataset,
    feature: usize,
    base: LogBase,
) -> Result<f64, InfoError> {
    let given = conditional_entropy(ds, feature, base)?;
    Ok(entropy(&ds.label_distribution(), base) - given)
}

/// Feature of maximal information gain; the lowest index wins ties.
pub fn best_split(ds: &LabeledDataset, base: LogBase) -> Split {
    let mut best = (0, f64::NEG_INFINITY);
    for f in 0..ds.n_features() {
        let gain = information_gain(ds, f, base).expect("index is in range");
        if gain > best.1 {
            best = (f, gain);
        }
    }
    Split {
        feature: best.0,
        name: ds.feature_names[best.0].clone(),
        gain: best.1,
    }
}
