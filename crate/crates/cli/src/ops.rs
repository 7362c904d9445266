//! Named operations over JSON inputs. Both the exam harness and the
//! calculator subcommands go through this registry.

use std::fmt::Display;

use serde_json::{json, Map, Value};

use ikit::bayes::{
    beta_binomial_update, beta_pdf, binomial_moments, binomial_pmf, binomial_tail,
    discrete_posterior, mle_binomial, posterior_two_hypothesis, unnormalized_posterior_density,
    z_score, BetaParams, BinomialParams, DiscreteThetaPrior, TwoHypothesis,
};
use ikit::exprgraph::{eval, forward_ad, gradient_descent, parse_expr, Bindings, GdConfig};
use ikit::infotheory::{
    conditional_entropy, entropy, information_gain, kl_distances, kl_divergence,
    kl_divergence_smoothed, DiscreteDist, LabeledDataset, LogBase, DEFAULT_SMOOTHING,
};
use ikit::logistic::{
    coefficient_or_ci, logit, odds_from_prob, odds_ratio, predict, relative_risk,
    solve_feature_for_prob, ConfidenceLevel, LogisticModel, TwoByTwoTable,
};
use ikit::metrics::{
    confusion_metrics, cosine_similarity, dropout_compose, ensemble_average,
    inverted_dropout_scale, jaccard_counts, kfold, l1_distance, l2_distance, loocv, majority_vote,
    minhash_estimate, minhash_signature, roc_auc, stratified_kfold, ConfusionCounts, ScoredLabels,
};
use ikit::nncore::{
    activate, activate_grad, cross_entropy_loss, dense_forward, grad_check, mlp_forward, softmax,
    truth_table, ActivationKind, DenseLayer, Mlp, NnError,
};
use ikit::tensorops::{
    conv2d, conv_cost, conv_output_shape, correlate2d, maxpool1d, maxpool2d, model_size_mb,
    ConvSpec, Kernel, Matrix, Padding,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OpError {
    #[error("unknown op '{0}'")]
    Unknown(String),
    #[error("input '{key}': {message}")]
    Input { key: String, message: String },
    #[error("{0}")]
    Compute(String),
    /// The case does not apply at these inputs; reported, never a failure.
    #[error("skipped: {0}")]
    Skip(String),
}

trait OrCompute<T> {
    fn op(self) -> Result<T, OpError>;
}

impl<T, E: Display> OrCompute<T> for Result<T, E> {
    fn op(self) -> Result<T, OpError> {
        self.map_err(|e| OpError::Compute(e.to_string()))
    }
}

/// Typed access to an op's input object.
pub struct Inputs<'a>(&'a Map<String, Value>);

impl<'a> Inputs<'a> {
    fn bad(key: &str, message: impl Into<String>) -> OpError {
        OpError::Input {
            key: key.to_string(),
            message: message.into(),
        }
    }

    fn get(&self, key: &str) -> Result<&'a Value, OpError> {
        self.0.get(key).ok_or_else(|| Self::bad(key, "missing"))
    }

    fn has(&self, key: &str) -> bool {
        self.0.get(key).is_some_and(|v| !v.is_null())
    }

    fn parse<T: serde::de::DeserializeOwned>(&self, key: &str) -> Result<T, OpError> {
        serde_json::from_value(self.get(key)?.clone()).map_err(|e| Self::bad(key, e.to_string()))
    }

    fn opt<T: serde::de::DeserializeOwned>(&self, key: &str) -> Result<Option<T>, OpError> {
        if self.has(key) {
            self.parse(key).map(Some)
        } else {
            Ok(None)
        }
    }

    fn f64(&self, key: &str) -> Result<f64, OpError> {
        self.parse(key)
    }

    fn u64(&self, key: &str) -> Result<u64, OpError> {
        self.parse(key)
    }

    fn usize(&self, key: &str) -> Result<usize, OpError> {
        self.parse(key)
    }

    fn str(&self, key: &str) -> Result<&'a str, OpError> {
        self.get(key)?
            .as_str()
            .ok_or_else(|| Self::bad(key, "expected a string"))
    }

    fn vec(&self, key: &str) -> Result<Vec<f64>, OpError> {
        self.parse(key)
    }

    fn matrix(&self, key: &str) -> Result<Matrix, OpError> {
        self.parse(key)
    }

    fn dist(&self, key: &str) -> Result<DiscreteDist, OpError> {
        DiscreteDist::new(self.vec(key)?).map_err(|e| Self::bad(key, e.to_string()))
    }

    fn base(&self) -> Result<LogBase, OpError> {
        match self.opt::<String>("base")? {
            Some(b) => b.parse().map_err(|e: String| Self::bad("base", e)),
            None => Ok(LogBase::Bits),
        }
    }

    fn level(&self) -> Result<ConfidenceLevel, OpError> {
        match self.get("level").ok() {
            None | Some(Value::Null) => Ok(ConfidenceLevel::default()),
            Some(Value::Number(n)) => n
                .to_string()
                .parse()
                .map_err(|e: ikit::logistic::LogisticError| Self::bad("level", e.to_string())),
            Some(Value::String(s)) => s
                .parse()
                .map_err(|e: ikit::logistic::LogisticError| Self::bad("level", e.to_string())),
            Some(_) => Err(Self::bad("level", "expected 90, 95, 99 or 99.9")),
        }
    }

    fn bindings(&self, key: &str) -> Result<Bindings, OpError> {
        let map: Map<String, Value> = self.parse(key)?;
        map.into_iter()
            .map(|(k, v)| {
                v.as_f64()
                    .map(|v| (k.clone(), v))
                    .ok_or_else(|| Self::bad(key, format!("'{k}' is not a number")))
            })
            .collect()
    }

    fn activation(&self, key: &str) -> Result<ActivationKind, OpError> {
        self.str(key)?
            .parse()
            .map_err(|e: NnError| Self::bad(key, e.to_string()))
    }
}

type OpFn = fn(&Inputs) -> Result<Value, OpError>;

/// Name, one-line summary, implementation.
const REGISTRY: &[(&str, &str, OpFn)] = &[
    ("eval", "value of an expression at a point", op_eval),
    ("ad", "forward-mode derivative with tangent trace", op_ad),
    ("gd", "gradient descent on an expression", op_gd),
    ("entropy", "Shannon entropy of a distribution", op_entropy),
    ("kl", "KL divergences and symmetric variants", op_kl),
    (
        "info_gain",
        "entropy, conditional entropies and gains of a CSV dataset",
        op_info_gain,
    ),
    ("logit", "odds and log-odds of a probability", op_logit),
    (
        "logistic_predict",
        "logistic-model prediction",
        op_logistic_predict,
    ),
    (
        "logistic_solve",
        "feature value that gives a target probability",
        op_logistic_solve,
    ),
    (
        "odds_ratio",
        "Woolf odds ratio, CI and relative risk of a 2x2 table",
        op_odds_ratio,
    ),
    (
        "coef_or",
        "odds ratio and CI from a coefficient and its SE",
        op_coef_or,
    ),
    (
        "two_hypothesis",
        "posterior of a hypothesis against its complement",
        op_two_hypothesis,
    ),
    ("binomial", "binomial pmf, tail and moments", op_binomial),
    ("z_score", "standardized deviation", op_z_score),
    ("mle", "binomial MLE with variance and SE", op_mle),
    ("beta_pdf", "beta density", op_beta_pdf),
    (
        "beta_update",
        "beta-binomial conjugate update",
        op_beta_update,
    ),
    (
        "unnormalized_posterior",
        "beta prior times binomial likelihood",
        op_unnormalized_posterior,
    ),
    (
        "discrete_posterior",
        "posterior over a finite set of success probabilities",
        op_discrete_posterior,
    ),
    (
        "activate",
        "activation values and exact derivatives",
        op_activate,
    ),
    (
        "grad_check",
        "analytic vs central-difference activation derivative",
        op_grad_check,
    ),
    ("dense", "single dense layer forward pass", op_dense),
    ("mlp", "multilayer perceptron forward pass", op_mlp),
    ("softmax", "softmax of a vector", op_softmax),
    (
        "cross_entropy",
        "cross-entropy of probabilities against a class",
        op_cross_entropy,
    ),
    (
        "perceptron",
        "threshold perceptron truth table",
        op_perceptron,
    ),
    ("conv2d", "2D convolution or cross-correlation", op_conv2d),
    ("pool", "max pooling in one or two dimensions", op_pool),
    (
        "conv_shape",
        "output extent of a strided, padded convolution",
        op_conv_shape,
    ),
    (
        "model_size",
        "parameter storage in megabytes",
        op_model_size,
    ),
    (
        "conv_cost",
        "multiply-accumulates of a convolution",
        op_conv_cost,
    ),
    ("confusion", "accuracy, precision and recall", op_confusion),
    ("roc", "ROC curve and AUC", op_roc),
    ("folds", "cross-validation fold plan", op_folds),
    (
        "distances",
        "L1, L2 and cosine between vectors",
        op_distances,
    ),
    ("jaccard", "exact Jaccard index of integer sets", op_jaccard),
    ("minhash", "MinHash Jaccard estimate", op_minhash),
    (
        "ensemble",
        "weighted average of probability matrices",
        op_ensemble,
    ),
    ("vote", "majority vote over model labels", op_vote),
    (
        "dropout",
        "composed dropout rate and inverted scale",
        op_dropout,
    ),
];

pub fn lookup(name: &str) -> Option<OpFn> {
    REGISTRY
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, _, f)| *f)
}

/// Registered names with their summaries, in registry order.
pub fn op_names() -> impl Iterator<Item = (&'static str, &'static str)> {
    REGISTRY.iter().map(|(n, s, _)| (*n, *s))
}

pub fn run_op(name: &str, inputs: &Map<String, Value>) -> Result<Value, OpError> {
    let f = lookup(name).ok_or_else(|| OpError::Unknown(name.to_string()))?;
    f(&Inputs(inputs))
}

fn op_eval(i: &Inputs) -> Result<Value, OpError> {
    let e = parse_expr(i.str("expr")?).op()?;
    Ok(json!({ "value": eval(&e, &i.bindings("at")?).op()? }))
}

fn op_ad(i: &Inputs) -> Result<Value, OpError> {
    let e = parse_expr(i.str("expr")?).op()?;
    let r = forward_ad(&e, &i.bindings("at")?, i.str("wrt")?).op()?;
    Ok(json!({ "value": r.value, "derivative": r.derivative, "trace": r.trace.rows }))
}

fn op_gd(i: &Inputs) -> Result<Value, OpError> {
    let e = parse_expr(i.str("expr")?).op()?;
    let start = i.bindings("start")?;
    let vars: Vec<String> = match i.opt::<Vec<String>>("vars")? {
        Some(v) => v,
        None => start.iter().map(|(k, _)| k.to_string()).collect(),
    };
    let cfg = GdConfig::new(
        i.f64("eta")?,
        i.opt("max_iter")?.unwrap_or(1000),
        i.opt("tol")?.unwrap_or(1e-8),
        i.opt("momentum")?.unwrap_or(0.0),
    )
    .op()?;
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let out = gradient_descent(&e, &names, &start, &cfg).op()?;
    let abs_max = out
        .trajectory
        .last()
        .map_or(0.0, |x| x.iter().fold(0.0f64, |m, v| m.max(v.abs())));
    Ok(json!({
        "status": out.status,
        "iterations": out.iterations,
        "point": out.point,
        "value": out.value,
        "max_abs_coordinate": abs_max,
    }))
}

fn op_entropy(i: &Inputs) -> Result<Value, OpError> {
    let base = i.base()?;
    Ok(json!({ "entropy": entropy(&i.dist("probs")?, base), "unit": base.unit() }))
}

fn op_kl(i: &Inputs) -> Result<Value, OpError> {
    let (p, q, base) = (i.dist("p")?, i.dist("q")?, i.base()?);
    if i.opt::<bool>("smoothed")?.unwrap_or(false) {
        let eps = i.opt("epsilon")?.unwrap_or(DEFAULT_SMOOTHING);
        return Ok(json!({ "kl_pq": kl_divergence_smoothed(&p, &q, base, eps).op()? }));
    }
    let d = kl_distances(&p, &q, base).op()?;
    Ok(json!({
        "kl_pq": kl_divergence(&p, &q, base).op()?,
        "kl_qp": kl_divergence(&q, &p, base).op()?,
        "symmetrized": d.symmetrized,
        "lin_form": d.lin_form,
        "jensen_shannon": d.jensen_shannon,
        "max_directed": d.max_directed,
    }))
}

fn op_info_gain(i: &Inputs) -> Result<Value, OpError> {
    let ds = LabeledDataset::from_csv_str(i.str("csv")?).op()?;
    let base = i.base()?;
    let mut cond = Map::new();
    let mut gain = Map::new();
    for (f, name) in ds.feature_names().iter().enumerate() {
        cond.insert(name.clone(), json!(conditional_entropy(&ds, f, base).op()?));
        gain.insert(name.clone(), json!(information_gain(&ds, f, base).op()?));
    }
    let best = ikit::infotheory::best_split(&ds, base);
    Ok(json!({
        "entropy": entropy(&ds.label_distribution(), base),
        "conditional": cond,
        "gain": gain,
        "best": best.name,
    }))
}

fn op_logit(i: &Inputs) -> Result<Value, OpError> {
    let p = i.f64("p")?;
    Ok(json!({ "odds": odds_from_prob(p).op()?, "logit": logit(p).op()? }))
}

fn model(i: &Inputs) -> Result<LogisticModel, OpError> {
    LogisticModel::from_betas(&i.vec("betas")?).op()
}

fn op_logistic_predict(i: &Inputs) -> Result<Value, OpError> {
    let p = predict(&model(i)?, &i.vec("x")?).op()?;
    Ok(json!(p))
}

fn op_logistic_solve(i: &Inputs) -> Result<Value, OpError> {
    let x: Vec<Option<f64>> = i.parse("x")?;
    Ok(json!({ "value": solve_feature_for_prob(&model(i)?, &x, i.f64("p")?).op()? }))
}

fn op_odds_ratio(i: &Inputs) -> Result<Value, OpError> {
    let [a, b, c, d]: [u64; 4] = i.parse("table")?;
    let t = TwoByTwoTable::new(a, b, c, d);
    let r = odds_ratio(&t, i.level()?).op()?;
    Ok(json!({
        "or": r.or,
        "log_or": r.log_or,
        "se": r.se,
        "ci_log": [r.ci_log.low, r.ci_log.high],
        "ci": [r.ci_or.low, r.ci_or.high],
        "rr": relative_risk(&t).ok(),
    }))
}

fn op_coef_or(i: &Inputs) -> Result<Value, OpError> {
    let c = coefficient_or_ci(i.f64("estimate")?, i.f64("se")?, i.level()?).op()?;
    Ok(
        json!({ "or": c.or, "ci_beta": [c.ci_beta.low, c.ci_beta.high], "ci": [c.ci_or.low, c.ci_or.high] }),
    )
}

fn op_two_hypothesis(i: &Inputs) -> Result<Value, OpError> {
    let h = TwoHypothesis::new(i.f64("prior")?, i.f64("lik_a")?, i.f64("lik_not_a")?).op()?;
    let r = posterior_two_hypothesis(h).op()?;
    Ok(json!({ "posterior": r.posterior, "evidence": r.evidence }))
}

fn op_binomial(i: &Inputs) -> Result<Value, OpError> {
    let params = BinomialParams::new(i.u64("n")?, i.f64("p")?).op()?;
    let m = binomial_moments(params);
    let mut out = json!({ "mean": m.mean, "variance": m.variance });
    if let Some(k) = i.opt::<u64>("k")? {
        out["pmf"] = json!(binomial_pmf(params, k).op()?);
        out["tail"] = json!(binomial_tail(params, k).op()?);
    }
    Ok(out)
}

fn op_z_score(i: &Inputs) -> Result<Value, OpError> {
    Ok(json!({ "z": z_score(i.f64("x")?, i.f64("mu")?, i.f64("sigma")?).op()? }))
}

fn op_mle(i: &Inputs) -> Result<Value, OpError> {
    Ok(json!(
        mle_binomial(i.u64("successes")?, i.u64("trials")?).op()?
    ))
}

fn beta(i: &Inputs) -> Result<BetaParams, OpError> {
    BetaParams::new(i.f64("a")?, i.f64("b")?).op()
}

fn op_beta_pdf(i: &Inputs) -> Result<Value, OpError> {
    Ok(json!({ "density": beta_pdf(beta(i)?, i.f64("theta")?).op()? }))
}

fn op_beta_update(i: &Inputs) -> Result<Value, OpError> {
    let post = beta_binomial_update(beta(i)?, i.u64("successes")?, i.u64("trials")?).op()?;
    Ok(json!({ "a": post.a(), "b": post.b(), "mean": post.mean() }))
}

fn op_unnormalized_posterior(i: &Inputs) -> Result<Value, OpError> {
    let v =
        unnormalized_posterior_density(beta(i)?, i.u64("n")?, i.u64("x")?, i.f64("theta")?).op()?;
    Ok(json!({ "density": v }))
}

fn op_discrete_posterior(i: &Inputs) -> Result<Value, OpError> {
    let prior = DiscreteThetaPrior::new(i.vec("thetas")?, i.vec("weights")?).op()?;
    let post = discrete_posterior(&prior, i.u64("n")?, i.u64("y")?).op()?;
    Ok(json!({ "posterior": post.probabilities() }))
}

fn op_activate(i: &Inputs) -> Result<Value, OpError> {
    let kind = i.activation("kind")?;
    let xs = i.vec("x")?;
    Ok(json!({
        "kind": kind.to_string(),
        "values": xs.iter().map(|&x| activate(kind, x)).collect::<Vec<_>>(),
        "grads": xs.iter().map(|&x| activate_grad(kind, x)).collect::<Vec<_>>(),
    }))
}

fn op_grad_check(i: &Inputs) -> Result<Value, OpError> {
    let kind = i.activation("kind")?;
    match grad_check(
        kind,
        i.f64("x")?,
        i.opt("h")?.unwrap_or(1e-6),
        i.opt("tol")?.unwrap_or(1e-5),
    ) {
        Ok(g) => Ok(json!(g)),
        Err(e @ NnError::NearKink { .. }) => Err(OpError::Skip(e.to_string())),
        Err(e) => Err(OpError::Compute(e.to_string())),
    }
}

fn op_dense(i: &Inputs) -> Result<Value, OpError> {
    let w = i.matrix("weights")?;
    let layer = match i.get("bias")? {
        Value::Number(n) => DenseLayer::with_shared_bias(
            w,
            n.as_f64().unwrap_or(f64::NAN),
            i.activation("activation")?,
        ),
        _ => DenseLayer::new(w, i.vec("bias")?, i.activation("activation")?).op()?,
    };
    let x = i.vec("x")?;
    Ok(json!({
        "pre_activation": layer.pre_activation(&x).op()?,
        "output": dense_forward(&layer, &x).op()?,
    }))
}

fn op_mlp(i: &Inputs) -> Result<Value, OpError> {
    let net: Mlp = i.parse("net")?;
    Ok(json!(mlp_forward(&net, &i.vec("x")?).op()?))
}

fn op_softmax(i: &Inputs) -> Result<Value, OpError> {
    Ok(json!({ "probs": softmax(&i.vec("v")?).op()?.probabilities() }))
}

fn op_cross_entropy(i: &Inputs) -> Result<Value, OpError> {
    let probs = i.dist("probs")?;
    let mut target = vec![0.0; probs.len()];
    let t = i.usize("target")?;
    *target
        .get_mut(t)
        .ok_or_else(|| Inputs::bad("target", "class index out of range"))? = 1.0;
    Ok(json!({ "loss": cross_entropy_loss(&probs, &target).op()? }))
}

fn op_perceptron(i: &Inputs) -> Result<Value, OpError> {
    let rows = truth_table(&i.vec("w")?, i.f64("b")?);
    Ok(json!({
        "weighted_sums": rows.iter().map(|r| r.weighted_sum).collect::<Vec<_>>(),
        "outputs": rows.iter().map(|r| r.output).collect::<Vec<_>>(),
        "table": rows,
    }))
}

fn padding(i: &Inputs) -> Result<Padding, OpError> {
    match i.opt::<String>("mode")?.as_deref() {
        None | Some("valid") => Ok(Padding::Valid),
        Some("same") => Ok(Padding::Same),
        Some(other) => Err(Inputs::bad(
            "mode",
            format!("'{other}', expected valid or same"),
        )),
    }
}

fn op_conv2d(i: &Inputs) -> Result<Value, OpError> {
    let x = i.matrix("x")?;
    let k = Kernel(i.matrix("kernel")?);
    let mode = padding(i)?;
    let y = match i.opt::<String>("kind")?.as_deref() {
        None | Some("conv") => conv2d(&x, &k, mode).op()?,
        Some("corr") => correlate2d(&x, &k, mode).op()?,
        Some(other) => {
            return Err(Inputs::bad(
                "kind",
                format!("'{other}', expected conv or corr"),
            ))
        }
    };
    let mut out = json!({ "output": y });
    if let Some(act) = i.opt::<String>("activation")? {
        let kind: ActivationKind = act
            .parse()
            .map_err(|e: NnError| Inputs::bad("activation", e.to_string()))?;
        out["activated"] = json!(y.map(|v| activate(kind, v)));
    }
    Ok(out)
}

fn op_pool(i: &Inputs) -> Result<Value, OpError> {
    let (size, stride) = (i.usize("size")?, i.usize("stride")?);
    match i.get("x")? {
        Value::Array(rows) if rows.first().is_some_and(Value::is_array) => {
            Ok(json!({ "output": maxpool2d(&i.matrix("x")?, size, stride).op()? }))
        }
        _ => Ok(json!({ "output": maxpool1d(&i.vec("x")?, size, stride).op()? })),
    }
}

fn op_conv_shape(i: &Inputs) -> Result<Value, OpError> {
    let spec = ConvSpec::new(
        i.usize("n")?,
        i.usize("f")?,
        i.usize("s")?,
        i.opt("p")?.unwrap_or(0),
    );
    Ok(json!({ "size": conv_output_shape(spec).op()? }))
}

fn op_model_size(i: &Inputs) -> Result<Value, OpError> {
    Ok(json!({ "mb": model_size_mb(i.u64("params")?, i.parse("bits")?) }))
}

fn op_conv_cost(i: &Inputs) -> Result<Value, OpError> {
    Ok(json!({ "macs": conv_cost(i.u64("w")?, i.u64("h")?, i.u64("k")?) }))
}

fn op_confusion(i: &Inputs) -> Result<Value, OpError> {
    let c = ConfusionCounts::new(i.u64("tp")?, i.u64("fn")?, i.u64("fp")?, i.u64("tn")?);
    Ok(json!(confusion_metrics(&c)))
}

fn op_roc(i: &Inputs) -> Result<Value, OpError> {
    let s = if i.has("csv") {
        ScoredLabels::from_csv_str(i.str("csv")?).op()?
    } else {
        ScoredLabels::new(i.vec("scores")?, i.parse("labels")?).op()?
    };
    Ok(json!(roc_auc(&s)))
}

fn op_folds(i: &Inputs) -> Result<Value, OpError> {
    let seed = i.opt("seed")?.unwrap_or(0);
    let plan = match i.opt::<String>("kind")?.as_deref() {
        None | Some("kfold") => kfold(i.usize("n")?, i.usize("k")?, seed).op()?,
        Some("stratified") => {
            stratified_kfold(&i.parse::<Vec<String>>("labels")?, i.usize("k")?, seed).op()?
        }
        Some("loocv") => loocv(i.usize("n")?).op()?,
        Some(other) => {
            return Err(Inputs::bad(
                "kind",
                format!("'{other}', expected kfold, stratified or loocv"),
            ))
        }
    };
    Ok(json!({ "sizes": plan.sizes(), "folds": plan }))
}

fn op_distances(i: &Inputs) -> Result<Value, OpError> {
    let (u, v) = (i.vec("u")?, i.vec("v")?);
    Ok(json!({
        "l1": l1_distance(&u, &v).op()?,
        "l2": l2_distance(&u, &v).op()?,
        "cosine": cosine_similarity(&u, &v, false).ok(),
        "cosine_clamped": cosine_similarity(&u, &v, true).ok(),
    }))
}

fn op_jaccard(i: &Inputs) -> Result<Value, OpError> {
    let (n, d) = jaccard_counts(&i.parse::<Vec<u64>>("a")?, &i.parse::<Vec<u64>>("b")?).op()?;
    Ok(json!({ "intersection": n, "union": d, "value": n as f64 / d as f64 }))
}

fn op_minhash(i: &Inputs) -> Result<Value, OpError> {
    let (a, b): (Vec<u64>, Vec<u64>) = (i.parse("a")?, i.parse("b")?);
    let (hashes, seed) = (i.opt("hashes")?.unwrap_or(256), i.opt("seed")?.unwrap_or(0));
    let sa = minhash_signature(&a, hashes, seed).op()?;
    let sb = minhash_signature(&b, hashes, seed).op()?;
    let (n, d) = jaccard_counts(&a, &b).op()?;
    Ok(json!({ "estimate": minhash_estimate(&sa, &sb).op()?, "exact": n as f64 / d as f64 }))
}

fn op_ensemble(i: &Inputs) -> Result<Value, OpError> {
    let ms: Vec<Matrix> = i.parse("matrices")?;
    let w: Option<Vec<f64>> = i.opt("weights")?;
    Ok(json!({ "output": ensemble_average(&ms, w.as_deref()).op()? }))
}

fn op_vote(i: &Inputs) -> Result<Value, OpError> {
    Ok(json!({ "labels": majority_vote(&i.parse::<Vec<Vec<usize>>>("votes")?).op()? }))
}

fn op_dropout(i: &Inputs) -> Result<Value, OpError> {
    let p = i.f64("p")?;
    Ok(json!({
        "combined": dropout_compose(p, i.opt("q")?.unwrap_or(0.0)).op()?,
        "scale": inverted_dropout_scale(p).op()?,
    }))
}
