use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::TensorError;

/// Dense row-major real matrix with positive dimensions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, TensorError> {
        if rows == 0 || cols == 0 {
            return Err(TensorError::EmptyMatrix { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(TensorError::DataLength {
                rows,
                cols,
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self, TensorError> {
        Self::new(rows, cols, vec![0.0; rows * cols])
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, TensorError> {
        let n = rows.len();
        let cols = rows.first().map(Vec::len).unwrap_or(0);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(TensorError::Ragged {
                    row,
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Self::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> f64,
    ) -> Result<Self, TensorError> {
        let data = (0..rows * cols)
            .map(|i| f(i / cols.max(1), i % cols.max(1)))
            .collect();
        Self::new(rows, cols, data)
    }

    pub fn row_vector(v: Vec<f64>) -> Result<Self, TensorError> {
        Self::new(1, v.len(), v)
    }

    pub fn column_vector(v: Vec<f64>) -> Result<Self, TensorError> {
        Self::new(v.len(), 1, v)
    }

    pub fn identity(n: usize) -> Result<Self, TensorError> {
        Self::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.cols).map(<[f64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)]).expect("dimensions are positive")
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    /// Elementwise `a·self + b·other`.
    pub fn axpby(&self, a: f64, other: &Matrix, b: f64) -> Result<Matrix, TensorError> {
        if self.shape() != other.shape() {
            return Err(TensorError::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// `self · v`.
    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>, TensorError> {
        if v.len() != self.cols {
            return Err(TensorError::ShapeMismatch {
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok(self
            .data
            .chunks(self.cols)
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Text form: `rows cols` on the first line, then one line per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for r in self.data.chunks(self.cols) {
            let line: Vec<String> = r.iter().map(f64::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

impl TryFrom<Vec<Vec<f64>>> for Matrix {
    type Error = TensorError;
    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self, TensorError> {
        Matrix::from_rows(rows)
    }
}

impl From<Matrix> for Vec<Vec<f64>> {
    fn from(m: Matrix) -> Self {
        m.to_rows()
    }
}

impl FromStr for Matrix {
    type Err = TensorError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| TensorError::Parse("missing 'rows cols' header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|e| TensorError::Parse(format!("header '{header}': {e}")))?;
        let [rows, cols] = dims[..] else {
            return Err(TensorError::Parse(format!(
                "header '{header}' must be 'rows cols'"
            )));
        };
        let mut data = Vec::with_capacity(rows * cols);
        for (row, line) in lines.enumerate() {
            let values: Vec<f64> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|e| TensorError::Parse(format!("row {row}: {e}")))?;
            if values.len() != cols {
                return Err(TensorError::Ragged {
                    row,
                    expected: cols,
                    found: values.len(),
                });
            }
            data.extend(values);
        }
        Matrix::new(rows, cols, data)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Convolution kernel; any positive dimensions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Kernel(pub Matrix);

impl Kernel {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, TensorError> {
        Matrix::from_rows(rows).map(Kernel)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }
}

impl From<Matrix> for Kernel {
    fn from(m: Matrix) -> Self {
        Kernel(m)
    }
}

/// Rotation by 180°: `out[i][j] = k[r−1−i][c−1−j]`.
pub fn flip180(k: &Kernel) -> Kernel {
    let (r, c) = k.shape();
    Kernel(
        Matrix::from_fn(r, c, |i, j| k.0[(r - 1 - i, c - 1 - j)]).expect("dimensions are positive"),
    )
}
