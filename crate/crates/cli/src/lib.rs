//! Golden-case exam harness and calculator subcommands over `ikit`.

pub mod commands;
pub mod exam;
pub mod manifest;
pub mod ops;
pub mod render;

pub use exam::{compare, run_exam, CaseResult, RunReport, Status, Summary};
pub use manifest::{
    load_manifest, parse_manifest, GoldenCase, ManifestError, TolKind, Tolerance, DEFAULT_MANIFEST,
};
pub use ops::{lookup, op_names, run_op, OpError};
