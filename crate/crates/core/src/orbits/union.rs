use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::functional::{two_point_unchecked, TwoPointResult};
use super::params::{orbit_size, weighted_delta, OrbitParams};
use super::tags::{enumerate_orbit_with_cap, DEFAULT_ENUMERATION_CAP};
use crate::certificate::Verdict;
use crate::error::{Error, Result};
use crate::grassmann::FrameConfig;
use crate::numerics::Rational;

/// A disjoint union of orbits in a common dimension.
///
/// JSON form: `{"d": 5, "parts": [[1, 1], [2, 2]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "UnionJson", into = "UnionJson")]
pub struct OrbitUnion {
    d: usize,
    parts: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct UnionJson {
    d: usize,
    parts: Vec<(usize, usize)>,
}

impl TryFrom<UnionJson> for OrbitUnion {
    type Error = Error;
    fn try_from(j: UnionJson) -> Result<Self> {
        OrbitUnion::new(j.d, j.parts)
    }
}

impl From<OrbitUnion> for UnionJson {
    fn from(u: OrbitUnion) -> Self {
        UnionJson { d: u.d, parts: u.parts }
    }
}

impl OrbitUnion {
    /// Parts may be given in any order; each is stored as `(min, max)` and
    /// the list is kept sorted.
    pub fn new(d: usize, parts: Vec<(usize, usize)>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Empty("orbit union"));
        }
        let mut normalized = Vec::with_capacity(parts.len());
        for (a, b) in parts {
            let p = OrbitParams::new(d, a.min(b), a.max(b))?;
            if normalized.contains(&(p.a, p.b)) {
                return Err(Error::InvalidArgument(format!("orbit ({}, {}) listed twice", p.a, p.b)));
            }
            normalized.push((p.a, p.b));
        }
        normalized.sort_unstable();
        Ok(OrbitUnion { d, parts: normalized })
    }

    pub fn single(p: OrbitParams) -> Self {
        OrbitUnion { d: p.d, parts: vec![(p.a, p.b)] }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn parts(&self) -> &[(usize, usize)] {
        &self.parts
    }

    pub fn params(&self) -> Vec<OrbitParams> {
        self.parts.iter().map(|&(a, b)| OrbitParams { d: self.d, a, b }).collect()
    }

    /// Total number of planes.
    pub fn size(&self) -> BigInt {
        self.params().into_iter().map(orbit_size).sum()
    }

    /// Equal-weight frame of all planes, part by part.
    pub fn to_frame(&self) -> Result<FrameConfig> {
        self.to_frame_with_cap(DEFAULT_ENUMERATION_CAP)
    }

    pub fn to_frame_with_cap(&self, cap: usize) -> Result<FrameConfig> {
        if self.size() > cap.into() {
            return Err(Error::CapExceeded { requested: self.size().to_string(), cap });
        }
        let mut planes = Vec::new();
        for p in self.params() {
            planes.extend(enumerate_orbit_with_cap(p, cap)?);
        }
        FrameConfig::equal_weight(planes)
    }
}

impl fmt::Display for OrbitUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|(a, b)| format!("({a},{b})")).collect();
        write!(f, "d={} {}", self.d, parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnionCondition {
    /// `Σ N_d(a, b) Δ(a, b)` over the parts.
    pub sum: Rational,
    pub verdict: Verdict,
}

/// The union is a tight 2-fusion frame iff `Σ N Δ = 0`.
pub fn union_condition(u: &OrbitUnion) -> UnionCondition {
    let sum: Rational = u.params().into_iter().map(weighted_delta).sum();
    let verdict = Verdict::from_bool(sum.is_zero());
    UnionCondition { sum, verdict }
}

/// Two-point test on an enumerated union. Full orbits are invariant by
/// construction, so no invariance check is run.
pub fn two_point_test(u: &OrbitUnion) -> Result<TwoPointResult> {
    two_point_unchecked(&u.to_frame()?)
}
