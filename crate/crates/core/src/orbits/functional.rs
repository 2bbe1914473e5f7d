//! The probe functional `F_X(x) = (1/Ω) Σ ω_W ‖P_W x‖⁴` and the two-point
//! test for `B_d`-invariant configurations.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::params::{OrbitParams, Probe};
use super::tags::{enumerate_orbit, SignedPermutation};
use crate::certificate::{Certificate, Residual, Value};
use crate::error::{Error, Result};
use crate::grassmann::{FrameConfig, Subspace};
use crate::numerics::{Matrix, Mode, Rational};

pub const TWO_POINT_CRITERION: &str = "two-point";

/// `‖P x‖² = xᵀ P x` at a probe, read off the projector entries.
pub fn probe_quadratic(p: &Matrix<Rational>, probe: Probe) -> Result<Rational> {
    match probe {
        Probe::E1 => Ok(p[(0, 0)].clone()),
        Probe::E12 => {
            if p.rows() < 2 {
                return Err(Error::InvalidArgument("probe (e1+e2)/sqrt2 needs d >= 2".into()));
            }
            Ok((&p[(0, 0)] + &p[(1, 1)] + &p[(0, 1)] * Rational::from(2)) / Rational::from(2))
        }
    }
}

fn projector_of(w: &Subspace) -> Result<&Matrix<Rational>> {
    w.projector().ok_or_else(|| Error::InvalidArgument("probe functional needs exact projectors".into()))
}

/// `Σ ω_W (xᵀ P_W x)² / Σ ω_W` over explicit subspaces.
pub fn probe_functional(subspaces: &[Subspace], weights: &[Rational], probe: Probe) -> Result<Rational> {
    let terms = subspaces
        .par_iter()
        .zip(weights)
        .map(|(w, om)| Ok(om * probe_quadratic(projector_of(w)?, probe)?.pow(2)))
        .collect::<Result<Vec<Rational>>>()?;
    let total: Rational = weights.iter().sum();
    Ok(terms.into_iter().sum::<Rational>() / total)
}

/// Orbit average at a probe by summing over the enumerated orbit.
pub fn brute_force_f(p: OrbitParams, probe: Probe) -> Result<Rational> {
    let planes = enumerate_orbit(p)?;
    let ones = vec![Rational::one(); planes.len()];
    probe_functional(&planes, &ones, probe)
}

/// Outcome of the two-point test: both functional values and a certificate
/// whose single residual is their difference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoPointResult {
    pub f_e1: Rational,
    pub f_e12: Rational,
    pub certificate: Certificate,
}

impl TwoPointResult {
    pub fn passed(&self) -> bool {
        self.certificate.passed()
    }
}

pub(crate) fn two_point_unchecked(frame: &FrameConfig) -> Result<TwoPointResult> {
    let f_e1 = probe_functional(frame.subspaces(), frame.weights(), Probe::E1)?;
    let f_e12 = probe_functional(frame.subspaces(), frame.weights(), Probe::E12)?;
    let diff = &f_e1 - &f_e12;
    let certificate = Certificate::from_residuals(
        TWO_POINT_CRITERION,
        Mode::Exact,
        0.0,
        vec![Residual::labelled(4, "F(e1) - F((e1+e2)/sqrt2)", Value::Exact(diff))],
    );
    Ok(TwoPointResult { f_e1, f_e12, certificate })
}

fn permuted_key(p: &Matrix<Rational>, g: &SignedPermutation) -> Vec<Rational> {
    let d = p.rows();
    let mut out = vec![Rational::zero(); d * d];
    for i in 0..d {
        for j in 0..d {
            let v = &p[(i, j)];
            if v.is_zero() {
                continue;
            }
            let s = g.signs[i] * g.signs[j];
            out[g.perm[i] * d + g.perm[j]] = if s > 0 { v.clone() } else { -v };
        }
    }
    out
}

/// Whether the weighted configuration is mapped onto itself by `B_d`,
/// checked on the generators.
pub fn is_hyperoctahedral_invariant(frame: &FrameConfig) -> Result<bool> {
    let d = frame.ambient_dim();
    let mut index: HashMap<Vec<Rational>, Rational> = HashMap::new();
    for (w, om) in frame.subspaces().iter().zip(frame.weights()) {
        let key = projector_of(w)?.as_slice().to_vec();
        *index.entry(key).or_insert_with(Rational::zero) += om;
    }
    for g in SignedPermutation::generators(d) {
        for (key, om) in &index {
            let p = Matrix::from_vec(d, d, key.clone())?;
            if index.get(&permuted_key(&p, &g)) != Some(om) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Two-point test on an arbitrary exact frame. Rejects configurations that
/// are not `B_d`-invariant, for which equal probe values do not imply a tight
/// 2-fusion frame.
pub fn two_point_test_frame(frame: &FrameConfig) -> Result<TwoPointResult> {
    if !is_hyperoctahedral_invariant(frame)? {
        return Err(Error::NotInvariant);
    }
    two_point_unchecked(frame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::q;
    use crate::orbits::params::f_value;

    #[test]
    fn brute_force_matches_closed_forms() {
        for d in 2..=6 {
            for p in OrbitParams::all(d) {
                for probe in [Probe::E1, Probe::E12] {
                    assert_eq!(brute_force_f(p, probe).unwrap(), f_value(p, probe), "{p} {probe:?}");
                }
            }
        }
    }

    #[test]
    fn single_orbit_verdicts() {
        let frame = FrameConfig::equal_weight(enumerate_orbit(OrbitParams::new(4, 1, 3).unwrap()).unwrap()).unwrap();
        let r = two_point_test_frame(&frame).unwrap();
        assert!(r.passed());
        assert_eq!(r.f_e1, q(1, 3));
        let frame = FrameConfig::equal_weight(enumerate_orbit(OrbitParams::new(5, 1, 1).unwrap()).unwrap()).unwrap();
        let r = two_point_test_frame(&frame).unwrap();
        assert!(!r.passed());
        assert_eq!(r.certificate.residuals[0].value, Value::Exact(q(3, 20)));
    }

    #[test]
    fn partial_orbit_is_rejected() {
        let mut planes = enumerate_orbit(OrbitParams::new(4, 1, 3).unwrap()).unwrap();
        planes.pop();
        let frame = FrameConfig::equal_weight(planes).unwrap();
        assert_eq!(two_point_test_frame(&frame), Err(Error::NotInvariant));
    }
}
