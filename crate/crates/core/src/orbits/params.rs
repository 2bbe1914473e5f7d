use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{binom, Rational};

/// Parameters `(d, a, b)` of the orbit of `span{u₀, v₀}`, where `u₀` and `v₀`
/// are normalized indicators of disjoint index sets of sizes `a` and `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitParams {
    pub d: usize,
    pub a: usize,
    pub b: usize,
}

impl OrbitParams {
    pub fn new(d: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || a > b || a + b > d {
            return Err(Error::InvalidArgument(format!(
                "orbit parameters need 1 <= a <= b and a + b <= d, got (d, a, b) = ({d}, {a}, {b})"
            )));
        }
        Ok(OrbitParams { d, a, b })
    }

    /// Every valid `(a, b)` for dimension `d`, in lexicographic order.
    pub fn all(d: usize) -> Vec<OrbitParams> {
        (1..=d / 2).flat_map(|a| (a..=d - a).map(move |b| OrbitParams { d, a, b })).collect()
    }

    fn ints(&self) -> (i64, i64, i64) {
        (self.d as i64, self.a as i64, self.b as i64)
    }
}

impl fmt::Display for OrbitParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({}; {}, {})", self.d, self.a, self.b)
    }
}

/// The two probe vectors of the orbit functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Probe {
    /// `e₁`
    E1,
    /// `(e₁ + e₂)/√2`
    E12,
}

impl Probe {
    pub fn label(self) -> &'static str {
        match self {
            Probe::E1 => "e1",
            Probe::E12 => "(e1+e2)/sqrt2",
        }
    }
}

/// `N_d(a, b) = binom(d, a) binom(d-a, b) 2^(a+b-2)`, halved when `a = b`.
pub fn orbit_size(p: OrbitParams) -> BigInt {
    let (d, a, b) = p.ints();
    let n = binom(d, a) * binom(d - a, b) * (BigInt::from(1) << (p.a + p.b - 2));
    if a == b {
        n / 2
    } else {
        n
    }
}

/// Orbit average of `‖P_W x‖⁴` at a probe, in closed form.
pub fn f_value(p: OrbitParams, probe: Probe) -> Rational {
    let (d, a, b) = p.ints();
    match probe {
        Probe::E1 => Rational::new(a + b, a * b * d),
        Probe::E12 => Rational::new(8 * a * b + (d - 4) * (a + b), 2 * a * b * d * (d - 1)),
    }
}

/// `Δ = F(e₁) - F((e₁+e₂)/√2) = ((d+2)(a+b) - 8ab) / (2ab d(d-1))`.
pub fn delta(p: OrbitParams) -> Rational {
    let (d, a, b) = p.ints();
    Rational::new((d + 2) * (a + b) - 8 * a * b, 2 * a * b * d * (d - 1))
}

/// `N_d(a, b) · Δ`, the contribution of one orbit to the union condition.
pub fn weighted_delta(p: OrbitParams) -> Rational {
    Rational::from(orbit_size(p)) * delta(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::q;

    fn op(d: usize, a: usize, b: usize) -> OrbitParams {
        OrbitParams::new(d, a, b).unwrap()
    }

    #[test]
    fn validation() {
        assert!(OrbitParams::new(4, 0, 3).is_err());
        assert!(OrbitParams::new(4, 3, 1).is_err());
        assert!(OrbitParams::new(4, 2, 3).is_err());
        assert_eq!(OrbitParams::all(4).len(), 4);
    }

    #[test]
    fn sizes() {
        assert_eq!(orbit_size(op(4, 1, 3)), BigInt::from(16));
        assert_eq!(orbit_size(op(5, 1, 1)), BigInt::from(10));
        assert_eq!(orbit_size(op(5, 2, 2)), BigInt::from(60));
        assert_eq!(orbit_size(op(4, 2, 2)), BigInt::from(12));
    }

    #[test]
    fn functional_values() {
        assert_eq!(f_value(op(4, 1, 3), Probe::E1), q(1, 3));
        assert_eq!(f_value(op(4, 1, 3), Probe::E12), q(1, 3));
        assert_eq!(f_value(op(5, 1, 1), Probe::E1), q(2, 5));
        assert_eq!(f_value(op(5, 1, 1), Probe::E12), q(1, 4));
        assert_eq!(delta(op(4, 1, 3)), q(0, 1));
        assert_eq!(delta(op(13, 3, 5)), q(0, 1));
        assert_eq!(delta(op(5, 2, 2)), q(-1, 40));
        assert_eq!(delta(op(5, 1, 1)), q(3, 20));
        for d in 2..12 {
            for p in OrbitParams::all(d) {
                assert_eq!(delta(p), f_value(p, Probe::E1) - f_value(p, Probe::E12));
            }
        }
    }

    #[test]
    fn weighted_deltas() {
        assert_eq!(weighted_delta(op(5, 1, 1)) + weighted_delta(op(5, 2, 2)), q(0, 1));
        assert_eq!(weighted_delta(op(7, 1, 3)), q(560, 21));
        assert_eq!(weighted_delta(op(7, 3, 3)), q(-1120, 42));
    }
}
