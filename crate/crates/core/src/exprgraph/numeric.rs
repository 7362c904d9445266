use serde::{Deserialize, Serialize};

use super::eval::{eval, Bindings};
use super::expr::Expr;
use super::ExprError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiffScheme {
    /// `(f(x+h) − f(x)) / h`
    Forward,
    /// `(f(x+h) − f(x−h)) / 2h`
    Central,
}

/// Step size that trades truncation error against rounding: `1e-6·max(1, |x|)`.
pub fn default_step(x: f64) -> f64 {
    1e-6 * x.abs().max(1.0)
}

pub fn forward_difference<F>(f: F, x: f64, h: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    (f(x + h) - f(x)) / h
}

pub fn central_difference<F>(f: F, x: f64, h: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Numerical partial derivative of `expr` with respect to `wrt`.
pub fn finite_diff(
    expr: &Expr,
    at: &Bindings,
    wrt: &str,
    h: f64,
    scheme: DiffScheme,
) -> Result<f64, ExprError> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(ExprError::InvalidStep(h));
    }
    let x = at
        .get(wrt)
        .ok_or_else(|| ExprError::Unbound(wrt.to_string()))?;
    let at_offset = |dx: f64| eval(expr, &at.clone().with(wrt, x + dx));
    Ok(match scheme {
        DiffScheme::Forward => (at_offset(h)? - eval(expr, at)?) / h,
        DiffScheme::Central => (at_offset(h)? - at_offset(-h)?) / (2.0 * h),
    })
}
