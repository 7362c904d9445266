use serde::Serialize;
use serde_json::{Map, Value};

use crate::manifest::{GoldenCase, TolKind, Tolerance};
use crate::ops::{run_op, OpError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub op: String,
    pub status: Status,
    pub got: Option<Value>,
    pub expected: Map<String, Value>,
    /// Largest deviation in the case's tolerance units (relative or absolute).
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub cite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub book_note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
}

impl RunReport {
    /// 0 iff no case failed; skips do not count.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.failed > 0)
    }
}

fn deviation(got: f64, want: f64, tol: Tolerance) -> f64 {
    let diff = (got - want).abs();
    match tol.kind {
        TolKind::Rel if want != 0.0 => diff / want.abs(),
        _ => diff,
    }
}

/// Checks every leaf of `expected` against `got`. Numbers compare within
/// `tol`, other scalars exactly; objects only need the expected keys.
/// Returns the largest numeric deviation.
pub fn compare(expected: &Value, got: &Value, tol: Tolerance, path: &str) -> Result<f64, String> {
    match (expected, got) {
        (Value::Number(w), Value::Number(g)) => {
            let (w, g) = (
                w.as_f64().unwrap_or(f64::NAN),
                g.as_f64().unwrap_or(f64::NAN),
            );
            let d = deviation(g, w, tol);
            if d <= tol.value {
                Ok(d)
            } else {
                Err(format!(
                    "{path}: got {g}, expected {w} (deviation {d:.3e} > {})",
                    tol.value
                ))
            }
        }
        (Value::Array(w), Value::Array(g)) => {
            if w.len() != g.len() {
                return Err(format!(
                    "{path}: got {} elements, expected {}",
                    g.len(),
                    w.len()
                ));
            }
            w.iter()
                .zip(g)
                .enumerate()
                .try_fold(0.0f64, |acc, (i, (w, g))| {
                    compare(w, g, tol, &format!("{path}[{i}]")).map(|d| acc.max(d))
                })
        }
        (Value::Object(w), Value::Object(g)) => w.iter().try_fold(0.0f64, |acc, (k, w)| {
            let sub = if path.is_empty() {
                k.clone()
            } else {
                format!("{path}.{k}")
            };
            let g = g
                .get(k)
                .ok_or_else(|| format!("{sub}: missing from result"))?;
            compare(w, g, tol, &sub).map(|d| acc.max(d))
        }),
        (w, g) if w == g => Ok(0.0),
        (w, g) => Err(format!("{path}: got {g}, expected {w}")),
    }
}

fn run_case(case: &GoldenCase) -> CaseResult {
    let mut result = CaseResult {
        id: case.id.clone(),
        op: case.op.clone(),
        status: Status::Fail,
        got: None,
        expected: case.expected.clone(),
        delta: None,
        message: None,
        cite: case.cite.clone(),
        book_note: case.book_note.clone(),
    };
    match run_op(&case.op, &case.inputs) {
        Ok(got) => {
            match compare(&Value::Object(case.expected.clone()), &got, case.tol, "") {
                Ok(d) => {
                    result.status = Status::Pass;
                    result.delta = Some(d);
                }
                Err(m) => result.message = Some(m),
            }
            result.got = Some(got);
        }
        Err(OpError::Skip(m)) => {
            result.status = Status::Skip;
            result.message = Some(m);
        }
        Err(e) => result.message = Some(e.to_string()),
    }
    result
}

/// Runs every case whose id starts with `filter`, in manifest order.
pub fn run_exam(cases: &[GoldenCase], filter: Option<&str>) -> RunReport {
    let results: Vec<CaseResult> = cases
        .iter()
        .filter(|c| filter.is_none_or(|f| c.id.starts_with(f)))
        .map(run_case)
        .collect();
    let count = |s| results.iter().filter(|r| r.status == s).count();
    let summary = Summary {
        total: results.len(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skip),
    };
    RunReport {
        cases: results,
        summary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    const ABS: Tolerance = Tolerance {
        kind: TolKind::Abs,
        value: 1e-3,
    };
    const REL: Tolerance = Tolerance {
        kind: TolKind::Rel,
        value: 1e-3,
    };

    #[test]
    fn numeric_leaves() {
        assert!(compare(&json!(1.0), &json!(1.0005), ABS, "x").is_ok());
        assert!(compare(&json!(1.0), &json!(1.002), ABS, "x").is_err());
        assert!(compare(&json!(1000.0), &json!(1000.9), REL, "x").is_ok());
        assert!(compare(&json!(0.0), &json!(0.0005), REL, "x").is_ok());
    }

    #[test]
    fn structure() {
        let got = json!({"a": [1, 2], "b": "relu", "extra": true});
        assert!(compare(&json!({"a": [1, 2], "b": "relu"}), &got, ABS, "").is_ok());
        let e = compare(&json!({"a": [1, 3]}), &got, ABS, "").unwrap_err();
        assert!(e.starts_with("a[1]"));
        assert!(compare(&json!({"a": [1]}), &got, ABS, "").is_err());
        assert!(compare(&json!({"c": 1}), &got, ABS, "")
            .unwrap_err()
            .contains("missing"));
        assert!(compare(&json!({"b": "tanh"}), &got, ABS, "").is_err());
    }

    fn case(id: &str, expected: Value) -> GoldenCase {
        GoldenCase {
            id: id.into(),
            op: "entropy".into(),
            inputs: json!({"probs": [0.5, 0.5]}).as_object().unwrap().clone(),
            expected: expected.as_object().unwrap().clone(),
            tol: ABS,
            cite: "test".into(),
            book_note: None,
        }
    }

    #[test]
    fn exam_counts_and_exit_code() {
        let good = vec![
            case("a.1", json!({"entropy": 1.0})),
            case("a.2", json!({"entropy": 1.0})),
        ];
        let r = run_exam(&good, None);
        assert_eq!(
            r.summary,
            Summary {
                total: 2,
                passed: 2,
                failed: 0,
                skipped: 0
            }
        );
        assert_eq!(r.exit_code(), 0);

        let mut mixed = good.clone();
        mixed.push(case("b.1", json!({"entropy": 0.9})));
        let r = run_exam(&mixed, None);
        assert_eq!((r.summary.passed, r.summary.failed), (2, 1));
        assert_eq!(r.exit_code(), 1);
        assert_eq!(run_exam(&mixed, Some("a.")).summary.total, 2);
    }

    #[test]
    fn skips_do_not_fail() {
        let mut c = case("k", json!({"passed": true}));
        c.op = "grad_check".into();
        c.inputs = json!({"kind": "relu", "x": 0.0, "h": 1e-6, "tol": 1e-5})
            .as_object()
            .unwrap()
            .clone();
        let r = run_exam(&[c], None);
        assert_eq!(r.summary.skipped, 1);
        assert_eq!(r.exit_code(), 0);
    }
}
