use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::params::{delta, weighted_delta, OrbitParams};
use crate::error::{Error, Result};
use crate::numerics::Rational;

/// All `(a, b)` with `1 ≤ a ≤ b`, `a + b ≤ d` and `(d+2)(a+b) = 8ab`.
pub fn solve_single_orbit(d: usize) -> Vec<(usize, usize)> {
    let d = d as u128;
    let mut out = Vec::new();
    for a in 1..=d / 2 {
        for b in a..=d - a {
            if (d + 2) * (a + b) == 8 * a * b {
                out.push((a as usize, b as usize));
            }
        }
    }
    out
}

/// `(d₀+2)s - 2, a₀ s, b₀ s)` from a single-orbit solution `(d₀, a₀, b₀)`.
pub fn scaling_family(d0: usize, a0: usize, b0: usize, s: usize) -> Result<OrbitParams> {
    if s == 0 {
        return Err(Error::InvalidArgument("scale factor must be at least 1".into()));
    }
    let seed = OrbitParams::new(d0, a0, b0)?;
    if !delta(seed).is_zero() {
        return Err(Error::InvalidArgument(format!("({d0}, {a0}, {b0}) is not a single-orbit solution")));
    }
    OrbitParams::new((d0 + 2) * s - 2, a0 * s, b0 * s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionClass {
    /// Both orbits have `Δ ≠ 0` and their contributions cancel.
    Pure,
    /// Both orbits already have `Δ = 0` on their own.
    SingleOrbitPair,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoOrbitSolution {
    pub d: usize,
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub class: SolutionClass,
}

/// Unordered pairs of distinct orbits in dimension `d` whose union satisfies
/// `N₁Δ₁ + N₂Δ₂ = 0`, sorted. Pairs of two `Δ = 0` orbits are included only
/// when `include_single` is set.
pub fn search_two_orbit(d: usize, include_single: bool) -> Vec<TwoOrbitSolution> {
    let params = OrbitParams::all(d);
    let values: Vec<Rational> = params.par_iter().map(|&p| weighted_delta(p)).collect();
    let mut by_value: HashMap<&Rational, Vec<usize>> = HashMap::new();
    for (i, v) in values.iter().enumerate() {
        by_value.entry(v).or_default().push(i);
    }
    let mut out = Vec::new();
    for (i, v) in values.iter().enumerate() {
        if v.is_positive() {
            if let Some(partners) = by_value.get(&-v) {
                for &j in partners {
                    out.push(make(d, &params, i, j, SolutionClass::Pure));
                }
            }
        } else if v.is_zero() && include_single {
            for &j in by_value[v].iter().filter(|&&j| j > i) {
                out.push(make(d, &params, i, j, SolutionClass::SingleOrbitPair));
            }
        }
    }
    out.sort();
    out
}

fn make(d: usize, params: &[OrbitParams], i: usize, j: usize, class: SolutionClass) -> TwoOrbitSolution {
    let (x, y) = (params[i.min(j)], params[i.max(j)]);
    TwoOrbitSolution { d, first: (x.a, x.b), second: (y.a, y.b), class }
}

/// Run [`search_two_orbit`] over `min_d..=max_d`, optionally odd `d` only.
pub fn search_range(min_d: usize, max_d: usize, odd_only: bool, include_single: bool) -> Vec<TwoOrbitSolution> {
    let dims: Vec<usize> = (min_d.max(2)..=max_d).filter(|d| !odd_only || d % 2 == 1).collect();
    let mut out: Vec<TwoOrbitSolution> =
        dims.par_iter().flat_map_iter(|&d| search_two_orbit(d, include_single)).collect();
    out.sort();
    out
}
