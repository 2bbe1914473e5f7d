//! Machine-readable verification verdicts.

use serde::{Deserialize, Serialize};

use crate::numerics::{Mode, Rational, Scalar};

/// A residual value in the arithmetic mode it was computed in.
///
/// Exact values serialize as `"p/q"` strings and float values as JSON numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Exact(Rational),
    Float(f64),
}

impl Value {
    pub fn from_scalar<T: Scalar>(x: &T) -> Value {
        match x.as_rational() {
            Some(r) => Value::Exact(r),
            None => Value::Float(x.to_f64()),
        }
    }

    pub fn magnitude(&self) -> f64 {
        match self {
            Value::Exact(r) => r.abs().to_f64(),
            Value::Float(x) => x.abs(),
        }
    }

    pub fn is_within(&self, tolerance: f64) -> bool {
        match self {
            Value::Exact(r) => r.is_zero() || (tolerance > 0.0 && r.abs().to_f64() <= tolerance),
            Value::Float(x) => x.abs() <= tolerance,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => r.to_f64(),
            Value::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Float(_) => None,
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Float(x) => write!(f, "{x:.3e}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub value: Value,
}

impl Residual {
    pub fn new(degree: u32, value: Value) -> Self {
        Residual { degree, label: None, value }
    }

    pub fn labelled(degree: u32, label: impl Into<String>, value: Value) -> Self {
        Residual { degree, label: Some(label.into()), value }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub criterion: String,
    pub degrees: Vec<u32>,
    pub residuals: Vec<Residual>,
    pub mode: Mode,
    pub tolerance: f64,
    pub verdict: Verdict,
}

impl Certificate {
    /// Build a certificate; the verdict passes iff every residual is within
    /// `tolerance` (exact residuals must vanish when `tolerance` is zero).
    pub fn from_residuals(criterion: impl Into<String>, mode: Mode, tolerance: f64, residuals: Vec<Residual>) -> Self {
        let mut degrees: Vec<u32> = residuals.iter().map(|r| r.degree).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let verdict = Verdict::from_bool(residuals.iter().all(|r| r.value.is_within(tolerance)));
        Certificate { criterion: criterion.into(), degrees, residuals, mode, tolerance, verdict }
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    /// Largest residual magnitude at a given degree.
    pub fn residual_at(&self, degree: u32) -> Option<f64> {
        self.residuals.iter().filter(|r| r.degree == degree).map(|r| r.value.magnitude()).reduce(f64::max)
    }

    /// Whether every residual at `degree` is within tolerance.
    pub fn passes_degree(&self, degree: u32) -> bool {
        self.residuals.iter().filter(|r| r.degree == degree).all(|r| r.value.is_within(self.tolerance))
    }

    /// Residuals carrying a given label.
    pub fn labelled(&self, label: &str) -> Option<&Value> {
        self.residuals.iter().find(|r| r.label.as_deref() == Some(label)).map(|r| &r.value)
    }
}
