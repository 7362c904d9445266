use serde::Serialize;

use super::NnError;

/// 1 iff `w·x + b > 0`; a weighted sum of exactly 0 gives 0.
pub fn perceptron_predict(w: &[f64], b: f64, x: &[bool]) -> Result<u8, NnError> {
    Ok(u8::from(weighted_sum(w, b, x)? > 0.0))
}

fn weighted_sum(w: &[f64], b: f64, x: &[bool]) -> Result<f64, NnError> {
    if x.len() != w.len() {
        return Err(NnError::DimensionMismatch {
            expected: w.len(),
            found: x.len(),
        });
    }
    Ok(w.iter()
        .zip(x)
        .filter(|(_, &on)| on)
        .map(|(wi, _)| wi)
        .sum::<f64>()
        + b)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruthRow {
    pub inputs: Vec<bool>,
    pub weighted_sum: f64,
    pub output: u8,
}

/// Every input in `{0,1}ⁿ`, in binary counting order with the first input
/// as the most significant bit.
pub fn truth_table(w: &[f64], b: f64) -> Vec<TruthRow> {
    let n = w.len();
    (0..1usize << n)
        .map(|code| {
            let inputs: Vec<bool> = (0..n).map(|i| code >> (n - 1 - i) & 1 == 1).collect();
            let weighted_sum = weighted_sum(w, b, &inputs).expect("input length matches");
            TruthRow {
                output: u8::from(weighted_sum > 0.0),
                inputs,
                weighted_sum,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outputs(w: &[f64], b: f64) -> Vec<u8> {
        truth_table(w, b).iter().map(|r| r.output).collect()
    }

    #[test]
    fn gate_tables() {
        let t = truth_table(&[1.0, 1.0], -2.5);
        let sums: Vec<f64> = t.iter().map(|r| r.weighted_sum).collect();
        assert_eq!(sums, vec![-2.5, -1.5, -1.5, -0.5]);
        assert_eq!(outputs(&[1.0, 1.0], -2.5), vec![0, 0, 0, 0]);
        // (0,1) and (1,0) sum to 0.75 > 0, so b = −0.25 realises OR
        assert_eq!(outputs(&[1.0, 1.0], -0.25), vec![0, 1, 1, 1]);
        assert_eq!(outputs(&[1.0, 1.0], -1.0), vec![0, 0, 0, 1]);
    }

    #[test]
    fn strict_threshold() {
        assert_eq!(
            perceptron_predict(&[1.0, 1.0], -1.0, &[true, false]).unwrap(),
            0
        );
        assert_eq!(
            perceptron_predict(&[1.0, 1.0], -1.0, &[true, true]).unwrap(),
            1
        );
        assert!(perceptron_predict(&[1.0], 0.0, &[true, true]).is_err());
        assert_eq!(truth_table(&[], 0.5).len(), 1);
    }
}
