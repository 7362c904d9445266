use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::ExprError;

/// A first-order dual number `value + tangent·d` with `d² = 0`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Dual {
    pub value: f64,
    pub tangent: f64,
}

impl Dual {
    pub const fn new(value: f64, tangent: f64) -> Self {
        Dual { value, tangent }
    }

    pub const fn constant(value: f64) -> Self {
        Dual::new(value, 0.0)
    }

    /// Seeded with tangent 1.
    pub const fn variable(value: f64) -> Self {
        Dual::new(value, 1.0)
    }

    pub fn checked_div(self, rhs: Dual) -> Result<Dual, ExprError> {
        if rhs.value == 0.0 {
            return Err(ExprError::DivisionByZero);
        }
        let value = self.value / rhs.value;
        let tangent =
            (self.tangent * rhs.value - self.value * rhs.tangent) / (rhs.value * rhs.value);
        Ok(Dual::new(value, tangent))
    }

    pub fn ln(self) -> Result<Dual, ExprError> {
        if self.value <= 0.0 {
            return Err(domain("ln", self.value));
        }
        Ok(Dual::new(self.value.ln(), self.tangent / self.value))
    }

    pub fn exp(self) -> Dual {
        let e = self.value.exp();
        Dual::new(e, e * self.tangent)
    }

    pub fn sin(self) -> Dual {
        Dual::new(self.value.sin(), self.value.cos() * self.tangent)
    }

    pub fn cos(self) -> Dual {
        Dual::new(self.value.cos(), -self.value.sin() * self.tangent)
    }

    pub fn sqrt(self) -> Result<Dual, ExprError> {
        if self.value <= 0.0 {
            return Err(domain("sqrt", self.value));
        }
        let r = self.value.sqrt();
        Ok(Dual::new(r, self.tangent / (2.0 * r)))
    }

    pub fn tanh(self) -> Dual {
        let t = self.value.tanh();
        Dual::new(t, (1.0 - t * t) * self.tangent)
    }

    pub fn atanh(self) -> Result<Dual, ExprError> {
        if !(self.value > -1.0 && self.value < 1.0) {
            return Err(domain("atanh", self.value));
        }
        Ok(Dual::new(
            self.value.atanh(),
            self.tangent / (1.0 - self.value * self.value),
        ))
    }

    pub fn sigmoid(self) -> Dual {
        let s = sigmoid(self.value);
        Dual::new(s, s * (1.0 - s) * self.tangent)
    }

    /// `self ^ exponent`.
    ///
    /// An integer-valued exponent with zero tangent is evaluated by repeated
    /// multiplication, so negative bases are legal there. Every other case
    /// goes through `exp(b·ln a)` and needs a positive base.
    pub fn pow(self, exponent: Dual) -> Result<Dual, ExprError> {
        let b = exponent.value;
        if exponent.tangent == 0.0 && b.fract() == 0.0 && b.abs() <= i32::MAX as f64 {
            let n = b as i64;
            if n == 0 {
                return Ok(Dual::constant(1.0));
            }
            if n < 0 && self.value == 0.0 {
                return Err(ExprError::DivisionByZero);
            }
            // a^(n-1) is shared by the value and the power rule.
            let below = int_pow(self.value, n - 1);
            let value = int_pow(self.value, n);
            let tangent = n as f64 * below * self.tangent;
            return Ok(Dual::new(value, tangent));
        }
        if self.value <= 0.0 {
            return Err(ExprError::Domain {
                op: "pow",
                value: self.value,
                detail: Some(format!("non-integer or varying exponent {b}")),
            });
        }
        let value = self.value.powf(b);
        let tangent = value * (exponent.tangent * self.value.ln() + b * self.tangent / self.value);
        Ok(Dual::new(value, tangent))
    }
}

/// `base^n` by binary exponentiation; negative `n` inverts the result.
pub(crate) fn int_pow(base: f64, n: i64) -> f64 {
    let mut acc = 1.0;
    let mut factor = base;
    let mut k = n.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc *= factor;
        }
        factor *= factor;
        k >>= 1;
    }
    if n < 0 {
        1.0 / acc
    } else {
        acc
    }
}

pub(crate) fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

fn domain(op: &'static str, value: f64) -> ExprError {
    ExprError::Domain {
        op,
        value,
        detail: None,
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, rhs: Dual) -> Dual {
        Dual::new(self.value + rhs.value, self.tangent + rhs.tangent)
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, rhs: Dual) -> Dual {
        Dual::new(self.value - rhs.value, self.tangent - rhs.tangent)
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, rhs: Dual) -> Dual {
        Dual::new(
            self.value * rhs.value,
            self.value * rhs.tangent + self.tangent * rhs.value,
        )
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-self.value, -self.tangent)
    }
}

impl fmt::Display for Dual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tangent.is_sign_negative() {
            write!(f, "{} - {}d", self.value, -self.tangent)
        } else {
            write!(f, "{} + {}d", self.value, self.tangent)
        }
    }
}
