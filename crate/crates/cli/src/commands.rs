//! Command-line front-end. Every calculator subcommand builds an input
//! object and dispatches through the op registry.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::exam::{run_exam, RunReport, Status};
use crate::manifest::{load_manifest, parse_manifest, GoldenCase, DEFAULT_MANIFEST};
use crate::ops::{op_names, run_op};
use crate::render::to_text;

#[derive(Debug, Parser)]
#[command(
    name = "ikit",
    version,
    about = "Numerical toolkit calculator and golden-case exam harness"
)]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Golden-case manifest runner.
    Exam {
        #[command(subcommand)]
        action: ExamAction,
    },
    /// List registered operations.
    Ops,
    /// Run any registered operation on a JSON input object.
    Op {
        name: String,
        /// JSON object, e.g. '{"probs":[0.5,0.5]}'.
        #[arg(long, default_value = "{}")]
        inputs: String,
    },
    /// Evaluate an expression.
    Eval {
        #[arg(long)]
        expr: String,
        /// Bindings such as x=1,y=2.
        #[arg(long, default_value = "")]
        at: String,
    },
    /// Forward-mode derivative of an expression.
    Ad {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        at: String,
        #[arg(long)]
        wrt: String,
        /// Print the tangent table.
        #[arg(long)]
        trace: bool,
    },
    /// Gradient descent on an expression.
    Gd {
        #[arg(long)]
        expr: String,
        /// Starting point such as x=-1,y=2.
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        #[arg(long)]
        eta: f64,
        #[arg(long, default_value_t = 1000)]
        max_iter: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 0.0)]
        momentum: f64,
    },
    /// Entropy of a distribution.
    Entropy {
        #[arg(long, value_delimiter = ',', required = true)]
        probs: Vec<f64>,
        #[arg(long, default_value = "bits")]
        base: String,
    },
    /// Entropies and information gains of a CSV dataset (label in last column).
    Ig {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, default_value = "bits")]
        base: String,
    },
    /// KL divergences between two distributions.
    Kl {
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<f64>,
        #[arg(long, default_value = "bits")]
        base: String,
        /// Mix q toward uniform so zero cells are tolerated.
        #[arg(long)]
        smoothed: bool,
    },
    /// Odds, log-odds and logistic-model predictions.
    Logit(LogitArgs),
    /// Odds ratio of a 2x2 table, or of a fitted coefficient.
    Oddsratio(OddsArgs),
    /// Posterior of a hypothesis against its complement.
    Bayes {
        #[arg(long)]
        prior: f64,
        #[arg(long)]
        lik_a: f64,
        #[arg(long)]
        lik_not_a: f64,
    },
    /// Binomial pmf, upper tail and moments.
    Binomial {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Binomial maximum-likelihood estimate.
    Mle {
        #[arg(long)]
        successes: u64,
        #[arg(long)]
        trials: u64,
    },
    /// Beta-binomial conjugate update.
    Betaupdate {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        successes: u64,
        #[arg(long)]
        trials: u64,
    },
    /// Forward pass of a network described in JSON.
    Mlp {
        #[arg(long)]
        net: PathBuf,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        x: Vec<f64>,
    },
    /// Activation values and derivatives.
    Act {
        /// sigmoid, sigmoid_approx, tanh, relu, leaky_relu(a), swish or identity.
        #[arg(long)]
        kind: String,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        x: Vec<f64>,
    },
    /// 2D convolution or cross-correlation.
    Conv {
        /// Matrix file ("rows cols" header) or inline rows such as "1,2;3,4".
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        kernel: String,
        #[arg(long, default_value = "valid")]
        mode: String,
        /// Cross-correlate instead of convolving.
        #[arg(long)]
        corr: bool,
        /// Activation applied to the result.
        #[arg(long)]
        activation: Option<String>,
    },
    /// Max pooling; a single-row input pools in one dimension.
    Pool {
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        stride: usize,
    },
    /// Output extent of a convolution.
    Convshape {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        f: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        p: usize,
    },
    /// Confusion-matrix rates, or ROC/AUC from a score,label CSV.
    Metrics(MetricsArgs),
    /// Cross-validation fold plan as JSON index lists.
    Folds {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Class labels for stratified folds, comma separated.
        #[arg(long, value_delimiter = ',')]
        stratify: Option<Vec<String>>,
        #[arg(long)]
        loocv: bool,
    },
    /// Vector distances or set similarity.
    Sim(SimArgs),
    /// MinHash estimate of the Jaccard index of two integer sets.
    Minhash {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u64>,
        #[arg(long, default_value_t = 256)]
        hashes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExamAction {
    /// Run the manifest and report pass/fail per case.
    Run {
        #[arg(long, env = "IK_MANIFEST")]
        manifest: Option<PathBuf>,
        /// Only cases whose id starts with this prefix.
        #[arg(long)]
        filter: Option<String>,
    },
    /// List case ids with their citations.
    List {
        #[arg(long, env = "IK_MANIFEST")]
        manifest: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct LogitArgs {
    /// Probability to convert to odds and log-odds.
    #[arg(long, conflicts_with_all = ["betas", "x"])]
    p: Option<f64>,
    /// Coefficients b0,b1,...
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        requires = "x"
    )]
    betas: Option<Vec<f64>>,
    /// Feature values; with --target-p, exactly one entry is '_' and is solved for.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    x: Option<Vec<String>>,
    #[arg(long, requires = "betas")]
    target_p: Option<f64>,
}

#[derive(Debug, Args)]
pub struct OddsArgs {
    /// Cells a,b,c,d.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["estimate", "se"])]
    table: Option<Vec<u64>>,
    #[arg(long, allow_hyphen_values = true, requires = "se")]
    estimate: Option<f64>,
    #[arg(long)]
    se: Option<f64>,
    #[arg(long, default_value = "95")]
    level: String,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    #[arg(long, requires_all = ["fn_", "fp", "tn"])]
    tp: Option<u64>,
    #[arg(long = "fn", id = "fn_")]
    fn_: Option<u64>,
    #[arg(long)]
    fp: Option<u64>,
    #[arg(long)]
    tn: Option<u64>,
    /// CSV of score,label rows for ROC/AUC.
    #[arg(long, conflicts_with = "tp")]
    scores: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimArgs {
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        requires = "v"
    )]
    u: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    v: Option<Vec<f64>>,
    /// Integer set for Jaccard.
    #[arg(long, value_delimiter = ',', conflicts_with = "u", requires = "b")]
    a: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    b: Option<Vec<u64>>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Op(#[from] crate::ops::OpError),
    #[error(transparent)]
    Manifest(#[from] crate::manifest::ManifestError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// A path to a matrix text file, or inline rows `1,2;3,4`.
fn matrix_arg(s: &str) -> Result<Value, CliError> {
    let path = PathBuf::from(s);
    let m: ikit::tensorops::Matrix = if path.is_file() {
        read(&path)?
            .parse()
            .map_err(|e: ikit::tensorops::TensorError| CliError::Usage(e.to_string()))?
    } else {
        let rows: Vec<Vec<f64>> = s
            .split(';')
            .map(|r| {
                r.split(',')
                    .map(|v| v.trim().parse::<f64>())
                    .collect::<Result<_, _>>()
            })
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Usage(format!("matrix '{s}': {e}")))?;
        ikit::tensorops::Matrix::from_rows(rows).map_err(|e| CliError::Usage(e.to_string()))?
    };
    Ok(json!(m))
}

fn bindings(s: &str) -> Result<Value, CliError> {
    let b: ikit::exprgraph::Bindings = s
        .parse()
        .map_err(|e: ikit::exprgraph::ExprError| CliError::Usage(e.to_string()))?;
    Ok(json!(b))
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("inputs are built as objects"),
    }
}

/// Op name and inputs for a calculator subcommand.
fn plan(cmd: &Command) -> Result<(&'static str, Map<String, Value>), CliError> {
    Ok(match cmd {
        Command::Exam { .. } | Command::Ops | Command::Op { .. } => unreachable!("handled by run"),
        Command::Eval { expr, at } => ("eval", obj(json!({ "expr": expr, "at": bindings(at)? }))),
        Command::Ad { expr, at, wrt, .. } => (
            "ad",
            obj(json!({ "expr": expr, "at": bindings(at)?, "wrt": wrt })),
        ),
        Command::Gd {
            expr,
            start,
            eta,
            max_iter,
            tol,
            momentum,
        } => (
            "gd",
            obj(json!({ "expr": expr, "start": bindings(start)?, "eta": eta,
                        "max_iter": max_iter, "tol": tol, "momentum": momentum })),
        ),
        Command::Entropy { probs, base } => {
            ("entropy", obj(json!({ "probs": probs, "base": base })))
        }
        Command::Ig { csv, base } => ("info_gain", obj(json!({ "csv": read(csv)?, "base": base }))),
        Command::Kl {
            p,
            q,
            base,
            smoothed,
        } => (
            "kl",
            obj(json!({ "p": p, "q": q, "base": base, "smoothed": smoothed })),
        ),
        Command::Logit(a) => match (a.p, &a.betas, &a.x, a.target_p) {
            (Some(p), _, _, _) => ("logit", obj(json!({ "p": p }))),
            (None, Some(betas), Some(x), None) => {
                let x: Vec<f64> = x
                    .iter()
                    .map(|v| v.parse::<f64>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| CliError::Usage(format!("--x: {e}")))?;
                ("logistic_predict", obj(json!({ "betas": betas, "x": x })))
            }
            (None, Some(betas), Some(x), Some(p)) => {
                let x: Vec<Option<f64>> = x
                    .iter()
                    .map(|v| {
                        if v.trim() == "_" {
                            Ok(None)
                        } else {
                            v.parse::<f64>().map(Some)
                        }
                    })
                    .collect::<Result<_, _>>()
                    .map_err(|e| CliError::Usage(format!("--x: {e}")))?;
                (
                    "logistic_solve",
                    obj(json!({ "betas": betas, "x": x, "p": p })),
                )
            }
            _ => return Err(CliError::Usage("give --p, or --betas with --x".into())),
        },
        Command::Oddsratio(a) => match (&a.table, a.estimate, a.se) {
            (Some(t), _, _) => ("odds_ratio", obj(json!({ "table": t, "level": a.level }))),
            (None, Some(est), Some(se)) => (
                "coef_or",
                obj(json!({ "estimate": est, "se": se, "level": a.level })),
            ),
            _ => {
                return Err(CliError::Usage(
                    "give --table a,b,c,d or --estimate with --se".into(),
                ))
            }
        },
        Command::Bayes {
            prior,
            lik_a,
            lik_not_a,
        } => (
            "two_hypothesis",
            obj(json!({ "prior": prior, "lik_a": lik_a, "lik_not_a": lik_not_a })),
        ),
        Command::Binomial { n, p, k } => ("binomial", obj(json!({ "n": n, "p": p, "k": k }))),
        Command::Mle { successes, trials } => (
            "mle",
            obj(json!({ "successes": successes, "trials": trials })),
        ),
        Command::Betaupdate {
            a,
            b,
            successes,
            trials,
        } => (
            "beta_update",
            obj(json!({ "a": a, "b": b, "successes": successes, "trials": trials })),
        ),
        Command::Mlp { net, x } => {
            let net: Value = serde_json::from_str(&read(net)?)
                .map_err(|e| CliError::Usage(format!("--net: {e}")))?;
            ("mlp", obj(json!({ "net": net, "x": x })))
        }
        Command::Act { kind, x } => ("activate", obj(json!({ "kind": kind, "x": x }))),
        Command::Conv {
            input,
            kernel,
            mode,
            corr,
            activation,
        } => (
            "conv2d",
            obj(
                json!({ "x": matrix_arg(input)?, "kernel": matrix_arg(kernel)?, "mode": mode,
                        "kind": if *corr { "corr" } else { "conv" }, "activation": activation }),
            ),
        ),
        Command::Pool {
            input,
            size,
            stride,
        } => {
            let m = matrix_arg(input)?;
            let x = match m.as_array().map(Vec::as_slice) {
                Some([row]) => row.clone(),
                _ => m,
            };
            (
                "pool",
                obj(json!({ "x": x, "size": size, "stride": stride })),
            )
        }
        Command::Convshape { n, f, s, p } => {
            ("conv_shape", obj(json!({ "n": n, "f": f, "s": s, "p": p })))
        }
        Command::Metrics(a) => match (&a.scores, a.tp) {
            (Some(path), _) => ("roc", obj(json!({ "csv": read(path)? }))),
            (None, Some(tp)) => (
                "confusion",
                obj(json!({ "tp": tp, "fn": a.fn_, "fp": a.fp, "tn": a.tn })),
            ),
            _ => {
                return Err(CliError::Usage(
                    "give --tp/--fn/--fp/--tn or --scores".into(),
                ))
            }
        },
        Command::Folds {
            n,
            k,
            seed,
            stratify,
            loocv,
        } => match (loocv, stratify) {
            (true, _) => ("folds", obj(json!({ "kind": "loocv", "n": n }))),
            (false, Some(labels)) => (
                "folds",
                obj(json!({ "kind": "stratified", "labels": labels, "k": k, "seed": seed })),
            ),
            (false, None) => (
                "folds",
                obj(json!({ "kind": "kfold", "n": n, "k": k, "seed": seed })),
            ),
        },
        Command::Sim(a) => match (&a.u, &a.v, &a.a, &a.b) {
            (Some(u), Some(v), _, _) => ("distances", obj(json!({ "u": u, "v": v }))),
            (_, _, Some(x), Some(y)) => ("jaccard", obj(json!({ "a": x, "b": y }))),
            _ => return Err(CliError::Usage("give --u with --v, or --a with --b".into())),
        },
        Command::Minhash { a, b, hashes, seed } => (
            "minhash",
            obj(json!({ "a": a, "b": b, "hashes": hashes, "seed": seed })),
        ),
    })
}

fn load(manifest: &Option<PathBuf>) -> Result<Vec<GoldenCase>, CliError> {
    Ok(match manifest {
        Some(path) => load_manifest(path)?,
        None => parse_manifest(DEFAULT_MANIFEST, "embedded manifest")?,
    })
}

fn report_text(r: &RunReport) -> String {
    let mut out = String::new();
    for c in &r.cases {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        let detail = match (&c.message, c.delta) {
            (Some(m), _) => m.clone(),
            (None, Some(d)) => format!("delta {d:.2e}"),
            (None, None) => String::new(),
        };
        out.push_str(&format!("{tag} {:<34} {:<18} {detail}\n", c.id, c.op));
    }
    let s = r.summary;
    out.push_str(&format!(
        "{} cases: {} passed, {} failed, {} skipped\n",
        s.total, s.passed, s.failed, s.skipped
    ));
    out
}

/// Runs a parsed command, returning the text to print and the exit code.
pub fn run(cli: &Cli) -> Result<(String, i32), CliError> {
    let emit = |v: &Value| {
        if cli.json {
            serde_json::to_string_pretty(v).expect("values serialize") + "\n"
        } else {
            to_text(v)
        }
    };
    match &cli.command {
        Command::Exam {
            action: ExamAction::Run { manifest, filter },
        } => {
            let report = run_exam(&load(manifest)?, filter.as_deref());
            let text = if cli.json {
                serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
            } else {
                report_text(&report)
            };
            Ok((text, report.exit_code()))
        }
        Command::Exam {
            action: ExamAction::List { manifest },
        } => {
            let cases = load(manifest)?;
            let v = json!({ "cases": cases.iter().map(|c| json!({ "id": c.id, "op": c.op, "cite": c.cite })).collect::<Vec<_>>() });
            Ok((emit(&v), 0))
        }
        Command::Ops => {
            let v = json!({ "ops": op_names().map(|(n, s)| json!({ "name": n, "summary": s })).collect::<Vec<_>>() });
            Ok((emit(&v), 0))
        }
        Command::Op { name, inputs } => {
            let inputs: Map<String, Value> = serde_json::from_str(inputs)
                .map_err(|e| CliError::Usage(format!("--inputs: {e}")))?;
            Ok((emit(&run_op(name, &inputs)?), 0))
        }
        cmd => {
            let (op, inputs) = plan(cmd)?;
            let mut out = run_op(op, &inputs)?;
            if let (Command::Ad { trace: false, .. }, Value::Object(m)) = (cmd, &mut out) {
                m.remove("trace");
            }
            Ok((emit(&out), 0))
        }
    }
}

/// Process entry: parses arguments, prints, and returns the exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, code)) => {
            print!("{text}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
