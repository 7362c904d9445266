// Negated comparisons such as `!(x > 0.0)` deliberately reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bayes;
pub mod exprgraph;
pub mod infotheory;
pub mod logistic;
pub mod metrics;
pub mod nncore;
pub mod tensorops;
