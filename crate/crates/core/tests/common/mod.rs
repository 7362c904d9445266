#![allow(dead_code)]

use ikit::exprgraph::{eval, forward_ad, Bindings, Expr};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random expression over `x` and `y` of depth at most `depth`. Domain-limited
/// functions get arguments that keep them in range (ln(1 + a²), atanh(0.9·tanh a), …),
/// and reused operands are shared nodes, so the result is a genuine DAG.
pub fn random_expr<R: Rng>(rng: &mut R, depth: usize) -> Expr {
    let x = Expr::var("x").unwrap();
    let y = Expr::var("y").unwrap();
    build(rng, depth, &x, &y)
}

fn build<R: Rng>(rng: &mut R, depth: usize, x: &Expr, y: &Expr) -> Expr {
    if depth == 0 || rng.random_bool(0.2) {
        return match rng.random_range(0..3) {
            0 => x.clone(),
            1 => y.clone(),
            _ => Expr::constant(rng.random_range(-1.5..1.5)),
        };
    }
    let a = build(rng, depth - 1, x, y);
    match rng.random_range(0..15) {
        0 => a + build(rng, depth - 1, x, y),
        1 => a - build(rng, depth - 1, x, y),
        2 => a * build(rng, depth - 1, x, y),
        3 => a / (1.5 + build(rng, depth - 1, x, y).sin()),
        4 => (1.0 + a.clone() * a).ln(),
        5 => a.tanh().exp(),
        6 => a.sin(),
        7 => a.cos(),
        8 => a.tanh(),
        9 => a.sigmoid(),
        10 => (1.0 + a.clone() * a).sqrt(),
        11 => (0.9 * a.tanh()).atanh(),
        12 => a.pow(Expr::constant(rng.random_range(2..4) as f64)),
        13 => {
            let c = [0.5, -1.5, 2.5][rng.random_range(0..3)];
            (1.0 + a.clone() * a).pow(Expr::constant(c))
        }
        _ => -a,
    }
}

/// Random (expression, point) with moderate value and derivatives.
pub fn well_scaled_case<R: Rng>(rng: &mut R, depth: usize) -> (Expr, Bindings) {
    loop {
        let f = random_expr(rng, depth);
        let at = Bindings::new()
            .with("x", rng.random_range(-1.5..1.5))
            .with("y", rng.random_range(-1.5..1.5));
        let ok = eval(&f, &at).map(|v| v.abs() < 1e4).unwrap_or(false)
            && ["x", "y"].iter().all(|v| {
                forward_ad(&f, &at, v)
                    .map(|r| r.derivative.abs() < 1e4)
                    .unwrap_or(false)
            });
        if ok {
            return (f, at);
        }
    }
}
