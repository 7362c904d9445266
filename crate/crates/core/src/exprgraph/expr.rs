use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::ExprError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Ln,
    Exp,
    Sin,
    Cos,
    Sqrt,
    Tanh,
    Atanh,
    Sigmoid,
}

impl UnaryOp {
    pub fn name(self) -> &'static str {
        match self {
            UnaryOp::Neg => "neg",
            UnaryOp::Ln => "ln",
            UnaryOp::Exp => "exp",
            UnaryOp::Sin => "sin",
            UnaryOp::Cos => "cos",
            UnaryOp::Sqrt => "sqrt",
            UnaryOp::Tanh => "tanh",
            UnaryOp::Atanh => "atanh",
            UnaryOp::Sigmoid => "sigmoid",
        }
    }

    /// Function-call names accepted by the parser (`neg` is spelled `-x`).
    pub fn from_function_name(name: &str) -> Option<Self> {
        Some(match name {
            "ln" => UnaryOp::Ln,
            "exp" => UnaryOp::Exp,
            "sin" => UnaryOp::Sin,
            "cos" => UnaryOp::Cos,
            "sqrt" => UnaryOp::Sqrt,
            "tanh" => UnaryOp::Tanh,
            "atanh" => UnaryOp::Atanh,
            "sigmoid" => UnaryOp::Sigmoid,
            _ => return None,
        })
    }

    pub const ALL: [UnaryOp; 9] = [
        UnaryOp::Neg,
        UnaryOp::Ln,
        UnaryOp::Exp,
        UnaryOp::Sin,
        UnaryOp::Cos,
        UnaryOp::Sqrt,
        UnaryOp::Tanh,
        UnaryOp::Atanh,
        UnaryOp::Sigmoid,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Pow => "^",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinaryOp::Add | BinaryOp::Sub => 1,
            BinaryOp::Mul | BinaryOp::Div => 2,
            BinaryOp::Pow => 4,
        }
    }
}

#[derive(Debug)]
pub enum Node {
    Const(f64),
    Var(String),
    Unary(UnaryOp, Expr),
    Binary(BinaryOp, Expr, Expr),
}

/// An immutable expression DAG.
///
/// Cloning an `Expr` shares the underlying node, so reusing a sub-expression
/// (or a variable leaf) in several places builds a DAG rather than a tree.
/// Nodes are never rewritten or folded after construction.
#[derive(Debug, Clone)]
pub struct Expr(Arc<Node>);

impl Expr {
    pub fn constant(value: f64) -> Self {
        Expr(Arc::new(Node::Const(value)))
    }

    pub fn var(name: impl Into<String>) -> Result<Self, ExprError> {
        let name = name.into();
        if name.is_empty() {
            return Err(ExprError::EmptyVariableName);
        }
        Ok(Expr(Arc::new(Node::Var(name))))
    }

    pub fn unary(op: UnaryOp, arg: Expr) -> Self {
        Expr(Arc::new(Node::Unary(op, arg)))
    }

    pub fn binary(op: BinaryOp, lhs: Expr, rhs: Expr) -> Self {
        Expr(Arc::new(Node::Binary(op, lhs, rhs)))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn ln(self) -> Self {
        Self::unary(UnaryOp::Ln, self)
    }
    pub fn exp(self) -> Self {
        Self::unary(UnaryOp::Exp, self)
    }
    pub fn sin(self) -> Self {
        Self::unary(UnaryOp::Sin, self)
    }
    pub fn cos(self) -> Self {
        Self::unary(UnaryOp::Cos, self)
    }
    pub fn sqrt(self) -> Self {
        Self::unary(UnaryOp::Sqrt, self)
    }
    pub fn tanh(self) -> Self {
        Self::unary(UnaryOp::Tanh, self)
    }
    pub fn atanh(self) -> Self {
        Self::unary(UnaryOp::Atanh, self)
    }
    pub fn sigmoid(self) -> Self {
        Self::unary(UnaryOp::Sigmoid, self)
    }
    pub fn pow(self, exponent: Expr) -> Self {
        Self::binary(BinaryOp::Pow, self, exponent)
    }

    fn key(&self) -> *const Node {
        Arc::as_ptr(&self.0)
    }

    /// Distinct variable names in first-visit (depth-first, left to right) order.
    pub fn variables(&self) -> Vec<String> {
        self.linearize()
            .steps
            .iter()
            .filter_map(|s| match s {
                Step::Input(name) => Some(name.clone()),
                _ => None,
            })
            .collect()
    }

    /// Flattens the DAG into evaluation order: variable inputs first (in
    /// first-visit order), then every other node in post-order. Shared nodes
    /// and same-named variables appear exactly once.
    pub(crate) fn linearize(&self) -> Tape {
        let mut inputs: Vec<String> = Vec::new();
        let mut input_index: HashMap<String, usize> = HashMap::new();
        let mut body: Vec<PendingStep> = Vec::new();
        let mut seen: HashMap<*const Node, Slot> = HashMap::new();
        let root = visit(self, &mut inputs, &mut input_index, &mut body, &mut seen);

        let offset = inputs.len();
        let resolve = |slot: Slot| match slot {
            Slot::Input(i) => i,
            Slot::Body(i) => offset + i,
        };
        let mut steps: Vec<Step> = inputs.into_iter().map(Step::Input).collect();
        for step in body {
            steps.push(match step {
                PendingStep::Const(c) => Step::Const(c),
                PendingStep::Unary(op, a) => Step::Unary(op, resolve(a)),
                PendingStep::Binary(op, a, b) => Step::Binary(op, resolve(a), resolve(b)),
            });
        }
        Tape {
            steps,
            input_count: offset,
            root: resolve(root),
        }
    }
}

#[derive(Clone, Copy)]
enum Slot {
    Input(usize),
    Body(usize),
}

enum PendingStep {
    Const(f64),
    Unary(UnaryOp, Slot),
    Binary(BinaryOp, Slot, Slot),
}

fn visit(
    expr: &Expr,
    inputs: &mut Vec<String>,
    input_index: &mut HashMap<String, usize>,
    body: &mut Vec<PendingStep>,
    seen: &mut HashMap<*const Node, Slot>,
) -> Slot {
    if let Some(slot) = seen.get(&expr.key()) {
        return *slot;
    }
    let slot = match expr.node() {
        Node::Var(name) => {
            let idx = *input_index.entry(name.clone()).or_insert_with(|| {
                inputs.push(name.clone());
                inputs.len() - 1
            });
            Slot::Input(idx)
        }
        Node::Const(c) => {
            body.push(PendingStep::Const(*c));
            Slot::Body(body.len() - 1)
        }
        Node::Unary(op, a) => {
            let a = visit(a, inputs, input_index, body, seen);
            body.push(PendingStep::Unary(*op, a));
            Slot::Body(body.len() - 1)
        }
        Node::Binary(op, a, b) => {
            let a = visit(a, inputs, input_index, body, seen);
            let b = visit(b, inputs, input_index, body, seen);
            body.push(PendingStep::Binary(*op, a, b));
            Slot::Body(body.len() - 1)
        }
    };
    seen.insert(expr.key(), slot);
    slot
}

/// One instruction of a linearized expression; operands index earlier steps.
#[derive(Debug, Clone, PartialEq)]
pub enum Step {
    Input(String),
    Const(f64),
    Unary(UnaryOp, usize),
    Binary(BinaryOp, usize, usize),
}

#[derive(Debug, Clone)]
pub(crate) struct Tape {
    pub steps: Vec<Step>,
    pub input_count: usize,
    pub root: usize,
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(self, f, 0)
    }
}

fn write_expr(expr: &Expr, f: &mut fmt::Formatter<'_>, parent_prec: u8) -> fmt::Result {
    match expr.node() {
        Node::Const(c) => {
            if *c < 0.0 {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        }
        Node::Var(name) => write!(f, "{name}"),
        Node::Unary(UnaryOp::Neg, a) => {
            let wrap = parent_prec > 3;
            if wrap {
                write!(f, "(")?;
            }
            write!(f, "-")?;
            write_expr(a, f, 3)?;
            if wrap {
                write!(f, ")")?;
            }
            Ok(())
        }
        Node::Unary(op, a) => {
            write!(f, "{}(", op.name())?;
            write_expr(a, f, 0)?;
            write!(f, ")")
        }
        Node::Binary(op, a, b) => {
            let prec = op.precedence();
            let wrap = prec < parent_prec;
            if wrap {
                write!(f, "(")?;
            }
            // `^` is right-associative, the rest left-associative.
            let (lp, rp) = if *op == BinaryOp::Pow {
                (prec + 1, prec)
            } else {
                (prec, prec + 1)
            };
            write_expr(a, f, lp)?;
            write!(f, " {} ", op.symbol())?;
            write_expr(b, f, rp)?;
            if wrap {
                write!(f, ")")?;
            }
            Ok(())
        }
    }
}

macro_rules! impl_binary_operator {
    ($trait:ident, $method:ident, $op:expr) => {
        impl std::ops::$trait for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::binary($op, self, rhs)
            }
        }
        impl std::ops::$trait<f64> for Expr {
            type Output = Expr;
            fn $method(self, rhs: f64) -> Expr {
                Expr::binary($op, self, Expr::constant(rhs))
            }
        }
        impl std::ops::$trait<Expr> for f64 {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::binary($op, Expr::constant(self), rhs)
            }
        }
    };
}

impl_binary_operator!(Add, add, BinaryOp::Add);
impl_binary_operator!(Sub, sub, BinaryOp::Sub);
impl_binary_operator!(Mul, mul, BinaryOp::Mul);
impl_binary_operator!(Div, div, BinaryOp::Div);

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::unary(UnaryOp::Neg, self)
    }
}
