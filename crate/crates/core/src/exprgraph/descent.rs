use serde::Serialize;

use super::eval::{eval, forward_ad, Bindings};
use super::expr::Expr;
use super::ExprError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GdConfig {
    pub learning_rate: f64,
    pub max_iterations: usize,
    /// Stop once the gradient's max-norm is at or below this.
    pub tolerance: f64,
    /// Decay applied to the running velocity; 0 is plain gradient descent.
    pub momentum: f64,
}

impl GdConfig {
    pub fn new(
        learning_rate: f64,
        max_iterations: usize,
        tolerance: f64,
        momentum: f64,
    ) -> Result<Self, ExprError> {
        if !(learning_rate > 0.0 && learning_rate.is_finite()) {
            return Err(ExprError::InvalidConfig(format!(
                "learning rate must be positive, got {learning_rate}"
            )));
        }
        if max_iterations == 0 {
            return Err(ExprError::InvalidConfig(
                "max iterations must be positive".into(),
            ));
        }
        if !(tolerance > 0.0) {
            return Err(ExprError::InvalidConfig(format!(
                "tolerance must be positive, got {tolerance}"
            )));
        }
        if !(0.0..1.0).contains(&momentum) {
            return Err(ExprError::InvalidConfig(format!(
                "momentum must lie in [0, 1), got {momentum}"
            )));
        }
        Ok(GdConfig {
            learning_rate,
            max_iterations,
            tolerance,
            momentum,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GdStatus {
    Converged,
    /// The (point, velocity) state returned to where it was two steps earlier,
    /// so the iteration is trapped in a 2-cycle.
    Oscillating,
    MaxIterations,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GdOutcome {
    pub point: Bindings,
    pub value: f64,
    pub iterations: usize,
    /// Visited points in `vars` order, starting with the initial point.
    pub trajectory: Vec<Vec<f64>>,
    pub status: GdStatus,
}

impl GdOutcome {
    pub fn converged(&self) -> bool {
        self.status == GdStatus::Converged
    }
}

/// Minimizes `expr` over `vars`, taking the gradient one forward-mode pass per
/// variable. With momentum `m`: `vₖ = m·vₖ₋₁ + ∇f(xₖ₋₁)`, `xₖ = xₖ₋₁ − η·vₖ`.
pub fn gradient_descent(
    expr: &Expr,
    vars: &[&str],
    init: &Bindings,
    cfg: &GdConfig,
) -> Result<GdOutcome, ExprError> {
    let mut x: Vec<f64> = vars
        .iter()
        .map(|v| init.get(v).ok_or_else(|| ExprError::Unbound(v.to_string())))
        .collect::<Result<_, _>>()?;
    let mut velocity = vec![0.0; vars.len()];
    let mut trajectory = vec![x.clone()];
    let mut velocities = vec![velocity.clone()];
    let mut status = GdStatus::MaxIterations;
    let mut iterations = cfg.max_iterations;

    let point_of = |x: &[f64]| {
        let mut b = init.clone();
        for (name, v) in vars.iter().zip(x) {
            b.set(*name, *v);
        }
        b
    };

    for iteration in 0..cfg.max_iterations {
        let at = point_of(&x);
        let grad = vars
            .iter()
            .map(|v| forward_ad(expr, &at, v).map(|r| r.derivative))
            .collect::<Result<Vec<_>, _>>()?;
        if grad.iter().any(|g| !g.is_finite()) {
            return Err(ExprError::NonFinite { iteration });
        }
        if grad.iter().fold(0.0f64, |m, g| m.max(g.abs())) <= cfg.tolerance {
            status = GdStatus::Converged;
            iterations = iteration;
            break;
        }
        for ((xi, vi), gi) in x.iter_mut().zip(velocity.iter_mut()).zip(&grad) {
            *vi = cfg.momentum * *vi + gi;
            *xi -= cfg.learning_rate * *vi;
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(ExprError::NonFinite { iteration });
        }
        trajectory.push(x.clone());
        velocities.push(velocity.clone());

        let n = trajectory.len();
        if n >= 3
            && same_state(&trajectory[n - 1], &trajectory[n - 3])
            && same_state(&velocities[n - 1], &velocities[n - 3])
            && !same_state(&trajectory[n - 1], &trajectory[n - 2])
        {
            status = GdStatus::Oscillating;
            iterations = iteration + 1;
            break;
        }
    }

    let point = point_of(&x);
    let value = eval(expr, &point)?;
    if !value.is_finite() {
        return Err(ExprError::NonFinite {
            iteration: iterations,
        });
    }
    Ok(GdOutcome {
        point,
        value,
        iterations,
        trajectory,
        status,
    })
}

fn same_state(a: &[f64], b: &[f64]) -> bool {
    a.iter()
        .zip(b)
        .all(|(p, q)| (p - q).abs() <= 1e-12 * p.abs().max(q.abs()).max(1.0))
}
