use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::dual::Dual;
use super::expr::{BinaryOp, Expr, Step, Tape, UnaryOp};
use super::ExprError;

/// Variable name to value.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Bindings(BTreeMap<String, f64>);

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: impl Into<String>, value: f64) -> Self {
        self.set(name, value);
        self
    }

    pub fn set(&mut self, name: impl Into<String>, value: f64) {
        self.0.insert(name.into(), value);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl<S: Into<String>> FromIterator<(S, f64)> for Bindings {
    fn from_iter<I: IntoIterator<Item = (S, f64)>>(iter: I) -> Self {
        Bindings(iter.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

/// Parses `x1=7.389,x2=3.14`.
impl FromStr for Bindings {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Bindings::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| ExprError::BadBinding(part.into()))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| ExprError::BadBinding(part.into()))?;
            let name = name.trim();
            if name.is_empty() {
                return Err(ExprError::BadBinding(part.into()));
            }
            out.set(name, value);
        }
        Ok(out)
    }
}

pub type DualBindings = BTreeMap<String, Dual>;

/// Evaluates the linearized DAG over dual numbers; returns one entry per step.
fn run_tape<F>(tape: &Tape, mut seed: F) -> Result<Vec<Dual>, ExprError>
where
    F: FnMut(&str) -> Option<Dual>,
{
    let mut out: Vec<Dual> = Vec::with_capacity(tape.steps.len());
    for step in &tape.steps {
        let d = match step {
            Step::Input(name) => seed(name).ok_or_else(|| ExprError::Unbound(name.clone()))?,
            Step::Const(c) => Dual::constant(*c),
            Step::Unary(op, a) => apply_unary(*op, out[*a])?,
            Step::Binary(op, a, b) => apply_binary(*op, out[*a], out[*b])?,
        };
        out.push(d);
    }
    Ok(out)
}

pub(crate) fn apply_unary(op: UnaryOp, a: Dual) -> Result<Dual, ExprError> {
    Ok(match op {
        UnaryOp::Neg => -a,
        UnaryOp::Ln => a.ln()?,
        UnaryOp::Exp => a.exp(),
        UnaryOp::Sin => a.sin(),
        UnaryOp::Cos => a.cos(),
        UnaryOp::Sqrt => a.sqrt()?,
        UnaryOp::Tanh => a.tanh(),
        UnaryOp::Atanh => a.atanh()?,
        UnaryOp::Sigmoid => a.sigmoid(),
    })
}

pub(crate) fn apply_binary(op: BinaryOp, a: Dual, b: Dual) -> Result<Dual, ExprError> {
    Ok(match op {
        BinaryOp::Add => a + b,
        BinaryOp::Sub => a - b,
        BinaryOp::Mul => a * b,
        BinaryOp::Div => a.checked_div(b)?,
        BinaryOp::Pow => a.pow(b)?,
    })
}

/// Plain evaluation: every tangent is zero, so only values propagate.
pub fn eval(expr: &Expr, at: &Bindings) -> Result<f64, ExprError> {
    let tape = expr.linearize();
    let values = run_tape(&tape, |name| at.get(name).map(Dual::constant))?;
    Ok(values[tape.root].value)
}

/// Pushes dual-valued bindings through the DAG: `g(x + ẋd) = g(x) + g'(x)ẋd`.
pub fn dual_eval(expr: &Expr, at: &DualBindings) -> Result<Dual, ExprError> {
    dual_eval_steps(expr, at).map(|(root, _)| root)
}

/// `dual_eval` that also hands back the per-step duals and their tape.
fn dual_eval_steps(expr: &Expr, at: &DualBindings) -> Result<(Dual, TangentTrace), ExprError> {
    let tape = expr.linearize();
    let values = run_tape(&tape, |name| at.get(name).copied())?;
    Ok((values[tape.root], TangentTrace::from_tape(&tape, &values)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdResult {
    pub value: f64,
    pub derivative: f64,
    pub trace: TangentTrace,
}

/// Forward-mode derivative with respect to `wrt`, seeding `wrt` with tangent 1
/// and every other variable with 0.
pub fn forward_ad(expr: &Expr, at: &Bindings, wrt: &str) -> Result<AdResult, ExprError> {
    if at.get(wrt).is_none() {
        return Err(ExprError::Unbound(wrt.to_string()));
    }
    let seeds: DualBindings = at
        .iter()
        .map(|(name, v)| {
            let tangent = if name == wrt { 1.0 } else { 0.0 };
            (name.to_string(), Dual::new(v, tangent))
        })
        .collect();
    let (result, trace) = dual_eval_steps(expr, &seeds)?;
    Ok(AdResult {
        value: result.value,
        derivative: result.tangent,
        trace,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRow {
    pub label: String,
    /// How the row is computed from earlier rows, e.g. `ln v-1` or `v-1 * v0`.
    pub definition: String,
    pub value: f64,
    pub tangent: f64,
    #[serde(skip)]
    step: Step,
}

/// Rows of intermediate values and tangents in evaluation order.
///
/// Inputs are labelled `v-(n-1) … v0`, computed nodes `v1, v2, …`; the last
/// row is the function output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TangentTrace {
    pub rows: Vec<TraceRow>,
}

impl TangentTrace {
    fn from_tape(tape: &Tape, values: &[Dual]) -> Self {
        let n = tape.input_count as i64;
        let label = |i: usize| format!("v{}", i as i64 - (n - 1));
        let rows: Vec<TraceRow> = tape
            .steps
            .iter()
            .zip(values)
            .enumerate()
            .map(|(i, (step, d))| {
                let definition = match step {
                    Step::Input(name) => name.clone(),
                    Step::Const(c) => format!("{c}"),
                    Step::Unary(UnaryOp::Neg, a) => format!("-{}", label(*a)),
                    Step::Unary(op, a) => format!("{} {}", op.name(), label(*a)),
                    Step::Binary(op, a, b) => {
                        format!("{} {} {}", label(*a), op.symbol(), label(*b))
                    }
                };
                TraceRow {
                    label: label(i),
                    definition,
                    value: d.value,
                    tangent: d.tangent,
                    step: step.clone(),
                }
            })
            .collect();
        debug_assert_eq!(tape.root + 1, rows.len(), "root is always evaluated last");
        TangentTrace { rows }
    }

    pub fn output(&self) -> Dual {
        let last = self.rows.last().expect("a trace always has a row");
        Dual::new(last.value, last.tangent)
    }

    /// Recomputes every row from the input rows' values and seeds, checking
    /// that each operand refers to an earlier row.
    pub fn replay(&self) -> Result<Dual, ExprError> {
        let mut out: Vec<Dual> = Vec::with_capacity(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            let d = match &row.step {
                Step::Input(_) => Dual::new(row.value, row.tangent),
                Step::Const(c) => Dual::constant(*c),
                Step::Unary(op, a) if *a < i => apply_unary(*op, out[*a])?,
                Step::Binary(op, a, b) if *a < i && *b < i => apply_binary(*op, out[*a], out[*b])?,
                _ => return Err(ExprError::BadTrace(i)),
            };
            out.push(d);
        }
        out.last().copied().ok_or(ExprError::BadTrace(0))
    }

    /// Three-column text table: label, value, tangent.
    pub fn to_table(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|r| r.label.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let mut s = format!("{:<width$}  {:>22}  {:>22}\n", "label", "value", "tangent");
        for r in &self.rows {
            s.push_str(&format!(
                "{:<width$}  {:>22.12}  {:>22.12}\n",
                r.label, r.value, r.tangent
            ));
        }
        s
    }
}

impl fmt::Display for TangentTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_table())
    }
}
