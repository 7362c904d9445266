//! Expression DAGs, dual-number forward-mode differentiation, finite
//! differences, Taylor partial sums and a gradient-descent driver.

mod descent;
mod dual;
mod eval;
mod expr;
mod numeric;
mod parse;
mod taylor;

pub use descent::{gradient_descent, GdConfig, GdOutcome, GdStatus};
pub use dual::Dual;
pub use eval::{
    dual_eval, eval, forward_ad, AdResult, Bindings, DualBindings, TangentTrace, TraceRow,
};
pub use expr::{BinaryOp, Expr, Node, UnaryOp};
pub use numeric::{central_difference, default_step, finite_diff, forward_difference, DiffScheme};
pub use parse::parse_expr;
pub use taylor::{taylor_eval, Series};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExprError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown function '{name}' at position {position}")]
    UnknownFunction { name: String, position: usize },
    #[error("variable names must be nonempty")]
    EmptyVariableName,
    #[error("unbound variable '{0}'")]
    Unbound(String),
    #[error("malformed binding '{0}', expected name=value")]
    BadBinding(String),
    #[error("domain error in {op} at {value}{}", .detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default())]
    Domain {
        op: &'static str,
        value: f64,
        detail: Option<String>,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("finite-difference step must be positive and finite, got {0}")]
    InvalidStep(f64),
    #[error("a series needs at least one term")]
    InvalidTerms,
    #[error("invalid gradient-descent configuration: {0}")]
    InvalidConfig(String),
    #[error("non-finite value or gradient at iteration {iteration}")]
    NonFinite { iteration: usize },
    #[error("trace row {0} refers to a row that does not precede it")]
    BadTrace(usize),
}
