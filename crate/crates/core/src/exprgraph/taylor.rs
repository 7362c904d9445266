//! Partial sums of a few classic power series.

use serde::{Deserialize, Serialize};

use super::ExprError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Series {
    /// `Σ xᵏ/k!`
    Exp,
    /// `Σ (−1)ᵏ x²ᵏ⁺¹/(2k+1)!`
    Sin,
    /// `Σ (−1)ᵏ x²ᵏ/(2k)!`
    Cos,
    /// `Σ xᵏ = 1/(1−x)` for `|x| < 1`
    Geometric,
    /// `ln x = Σₙ₌₁ (−1)ⁿ⁺¹ (x−1)ⁿ/n` for `0 < x ≤ 2`
    LnAbout1,
}

/// Sum of the first `terms` nonzero terms of `series` at `x`.
pub fn taylor_eval(series: Series, x: f64, terms: usize) -> Result<f64, ExprError> {
    if terms == 0 {
        return Err(ExprError::InvalidTerms);
    }
    let mut sum = 0.0;
    match series {
        Series::Exp => {
            let mut term = 1.0;
            for k in 0..terms {
                if k > 0 {
                    term *= x / k as f64;
                }
                sum += term;
            }
        }
        Series::Sin => {
            let mut term = x;
            for k in 0..terms {
                if k > 0 {
                    let k = k as f64;
                    term *= -x * x / ((2.0 * k) * (2.0 * k + 1.0));
                }
                sum += term;
            }
        }
        Series::Cos => {
            let mut term = 1.0;
            for k in 0..terms {
                if k > 0 {
                    let k = k as f64;
                    term *= -x * x / ((2.0 * k - 1.0) * (2.0 * k));
                }
                sum += term;
            }
        }
        Series::Geometric => {
            if x.abs() >= 1.0 {
                return Err(ExprError::Domain {
                    op: "geometric series",
                    value: x,
                    detail: Some("requires |x| < 1".into()),
                });
            }
            let mut term = 1.0;
            for k in 0..terms {
                if k > 0 {
                    term *= x;
                }
                sum += term;
            }
        }
        Series::LnAbout1 => {
            if !(x > 0.0 && x <= 2.0) {
                return Err(ExprError::Domain {
                    op: "ln series about 1",
                    value: x,
                    detail: Some("requires 0 < x <= 2".into()),
                });
            }
            let u = x - 1.0;
            let mut power = 1.0;
            for n in 1..=terms {
                power *= u;
                let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
                sum += sign * power / n as f64;
            }
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosine_at_zero_is_one() {
        for terms in 1..10 {
            assert_eq!(taylor_eval(Series::Cos, 0.0, terms).unwrap(), 1.0);
        }
    }

    #[test]
    fn exp_twelve_terms_at_one() {
        let e = taylor_eval(Series::Exp, 1.0, 12).unwrap();
        assert!((e - 1f64.exp()).abs() < 1e-7);
    }

    #[test]
    fn geometric_half() {
        assert!((taylor_eval(Series::Geometric, 0.5, 30).unwrap() - 2.0).abs() < 1e-8);
    }

    #[test]
    fn sin_and_ln_converge() {
        assert!((taylor_eval(Series::Sin, 0.7, 10).unwrap() - 0.7f64.sin()).abs() < 1e-14);
        assert!((taylor_eval(Series::LnAbout1, 1.5, 60).unwrap() - 1.5f64.ln()).abs() < 1e-14);
        // first three terms of ln about 1 at x = 1.5: 0.5 − 0.125 + 0.041666…
        let three = taylor_eval(Series::LnAbout1, 1.5, 3).unwrap();
        assert!((three - (0.5 - 0.125 + 0.125 / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn domain_and_term_errors() {
        assert!(taylor_eval(Series::Geometric, 1.0, 5).is_err());
        assert!(taylor_eval(Series::LnAbout1, 0.0, 5).is_err());
        assert!(taylor_eval(Series::LnAbout1, 2.5, 5).is_err());
        assert!(matches!(
            taylor_eval(Series::Exp, 1.0, 0),
            Err(ExprError::InvalidTerms)
        ));
    }

    #[test]
    fn exp_error_nonincreasing_in_terms() {
        for i in -20..=20 {
            let x = i as f64 / 20.0;
            let start = x.abs().ceil() as usize;
            let mut prev = f64::INFINITY;
            for n in start.max(1)..40 {
                let err = (taylor_eval(Series::Exp, x, n).unwrap() - x.exp()).abs();
                // once converged the partial sum may wobble by an ulp
                let floor = 4.0 * f64::EPSILON * x.exp();
                assert!(err <= prev + floor, "x={x} n={n}: {err} > {prev}");
                prev = err;
            }
        }
    }
}
