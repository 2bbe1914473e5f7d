//! Spherical designs from tight fusion frames of planes.
//!
//! Each plane `V` of a tight `t`-fusion frame carries a regular `n`-gon
//! (a circle `(n-1)`-design). The union of the polygons, with every vertex
//! weighted by its plane's weight, is a weighted spherical design of strength
//! `min{n-1, 2t+1}`.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Verdict};
use crate::error::{Error, Result};
use crate::grassmann::{check_tff, FrameConfig};
use crate::numerics::{Mode, Rational};
use crate::sphere::{
    certify_polygon, check_spherical_design_pairwise, check_weighted_design_moments, regular_polygon, PlaneBasis,
    PointSetJson, WeightedPointSet,
};

/// Rounds of re-rotation before [`repair_disjointness`] gives up.
pub const REPAIR_BUDGET: usize = 64;
/// Two points closer than this (max-norm) count as coincident.
pub const COINCIDENCE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "snake_case")]
pub enum PhasePolicy {
    /// The same rotation angle on every plane.
    Fixed { phase: f64 },
    /// An independent uniform angle in `[0, 2π/n)` per plane, drawn from a
    /// stream keyed by the seed and the plane index.
    Seeded,
}

#[derive(Debug, Clone)]
pub struct LiftSpec {
    pub frame: FrameConfig,
    pub t: u32,
    pub polygon: usize,
    pub phase: PhasePolicy,
    pub seed: u64,
}

impl LiftSpec {
    /// Polygon size `s + 1` for a circle `s`-design, seeded phases.
    pub fn new(frame: FrameConfig, t: u32, s: u32, seed: u64) -> Self {
        LiftSpec { frame, t, polygon: s as usize + 1, phase: PhasePolicy::Seeded, seed }
    }

    pub fn with_polygon(mut self, n: usize) -> Self {
        self.polygon = n;
        self
    }

    pub fn with_phase(mut self, phase: PhasePolicy) -> Self {
        self.phase = phase;
        self
    }

    /// Circle design strength of the per-plane polygons.
    pub fn circle_strength(&self) -> u32 {
        self.polygon as u32 - 1
    }

    /// `min{s, 2t+1}`.
    pub fn declared_strength(&self) -> u32 {
        self.circle_strength().min(2 * self.t + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Provenance {
    pub plane: usize,
    pub vertex: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LiftedDesign {
    pub result: WeightedPointSet<f64>,
    pub strength: u32,
    pub provenance: Vec<Provenance>,
    /// `Ω · Λ` with `Λ = n` the polygon weight.
    pub total_weight: Rational,
    pub polygon: usize,
    pub planes: Vec<PlaneBasis>,
    pub phases: Vec<f64>,
    plane_weights: Vec<f64>,
}

/// Serialized lift: the point set plus its side tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftedDesignJson {
    pub design: PointSetJson,
    pub strength: u32,
    pub polygon: usize,
    pub total_weight: Rational,
    pub provenance: Vec<(usize, usize)>,
    pub phases: Vec<f64>,
}

impl From<&LiftedDesign> for LiftedDesignJson {
    fn from(l: &LiftedDesign) -> Self {
        LiftedDesignJson {
            design: PointSetJson::Float {
                d: l.result.dim(),
                points: l.result.points().to_vec(),
                weights: l.result.weights().to_vec(),
            },
            strength: l.strength,
            polygon: l.polygon,
            total_weight: l.total_weight.clone(),
            provenance: l.provenance.iter().map(|p| (p.plane, p.vertex)).collect(),
            phases: l.phases.clone(),
        }
    }
}

fn plane_phase(policy: PhasePolicy, seed: u64, plane: usize, n: usize) -> f64 {
    match policy {
        PhasePolicy::Fixed { phase } => phase,
        PhasePolicy::Seeded => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(plane as u64);
            rng.gen_range(0.0..TAU / n as f64)
        }
    }
}

fn assemble(
    planes: Vec<PlaneBasis>,
    phases: Vec<f64>,
    plane_weights: Vec<f64>,
    n: usize,
    strength: u32,
    total_weight: Rational,
) -> Result<LiftedDesign> {
    let d = planes[0].dim();
    let polygons =
        planes.par_iter().zip(&phases).map(|(b, &phi)| regular_polygon(b, n, phi)).collect::<Result<Vec<_>>>()?;
    let mut points = Vec::with_capacity(n * planes.len());
    let mut weights = Vec::with_capacity(n * planes.len());
    let mut provenance = Vec::with_capacity(n * planes.len());
    for (i, poly) in polygons.into_iter().enumerate() {
        for (j, x) in poly.points().iter().enumerate() {
            points.push(x.clone());
            weights.push(plane_weights[i]);
            provenance.push(Provenance { plane: i, vertex: j });
        }
    }
    Ok(LiftedDesign {
        result: WeightedPointSet::new(d, points, weights)?,
        strength,
        provenance,
        total_weight,
        polygon: n,
        planes,
        phases,
        plane_weights,
    })
}

/// Lift a verified tight `t`-fusion frame of planes.
pub fn lift(spec: &LiftSpec) -> Result<LiftedDesign> {
    let frame = &spec.frame;
    if frame.dim() != 2 {
        return Err(Error::Unsupported("lifting needs a frame of planes".into()));
    }
    if !(1..=2).contains(&spec.t) {
        return Err(Error::Unsupported(format!("lifting from t = {}", spec.t)));
    }
    if spec.polygon < 2 {
        return Err(Error::InvalidArgument("polygon needs at least 2 vertices".into()));
    }
    if !check_tff(frame, spec.t)?.passed() {
        return Err(Error::FrameCheckFailed { t: spec.t });
    }
    let n = spec.polygon;
    let planes = frame.subspaces().iter().map(|v| v.plane_basis()).collect::<Result<Vec<_>>>()?;
    let phases: Vec<f64> = (0..planes.len()).map(|i| plane_phase(spec.phase, spec.seed, i, n)).collect();

    // every polygon must be a circle design of the same total weight
    let s = spec.circle_strength();
    for (b, &phi) in planes.iter().zip(&phases) {
        let poly = regular_polygon(b, n, phi)?;
        if !certify_polygon(&poly, s)?.passed() {
            return Err(Error::InvalidArgument(format!("{n}-gon is not a circle {s}-design")));
        }
        if (poly.total_weight() - n as f64).abs() > 1e-12 {
            return Err(Error::WeightMismatch);
        }
    }

    let plane_weights: Vec<f64> = frame.weights().iter().map(Rational::to_f64).collect();
    let total = frame.total_weight() * Rational::from(n);
    assemble(planes, phases, plane_weights, n, spec.declared_strength(), total)
}

/// Pairs `(i, j)`, `i < j`, of coincident points.
pub fn coincident_pairs(points: &[Vec<f64>], tol: f64) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| points[i][0].total_cmp(&points[j][0]));
    let mut out = Vec::new();
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[pos + 1..] {
            if points[j][0] - points[i][0] > tol {
                break;
            }
            if points[i].iter().zip(&points[j]).all(|(x, y)| (x - y).abs() <= tol) {
                out.push((i.min(j), i.max(j)));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Rotate planes within themselves until no two points coincide.
///
/// Each round takes every coincident pair and turns the polygon of the later
/// point's plane by a fresh angle. Rotations inside a plane keep each polygon
/// a circle design, so the design certificate is unaffected.
pub fn repair_disjointness(design: &LiftedDesign, seed: u64) -> Result<LiftedDesign> {
    let mut current = design.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..REPAIR_BUDGET {
        let clashes = coincident_pairs(current.result.points(), COINCIDENCE_TOL);
        if clashes.is_empty() {
            return Ok(current);
        }
        let mut moved: Vec<usize> = clashes.iter().map(|&(_, j)| current.provenance[j].plane).collect();
        moved.sort_unstable();
        moved.dedup();
        let mut phases = current.phases.clone();
        for plane in moved {
            phases[plane] += rng.gen_range(0.0..TAU / current.polygon as f64);
        }
        current = assemble(
            current.planes.clone(),
            phases,
            current.plane_weights.clone(),
            current.polygon,
            current.strength,
            current.total_weight.clone(),
        )?;
    }
    if coincident_pairs(current.result.points(), COINCIDENCE_TOL).is_empty() {
        Ok(current)
    } else {
        Err(Error::RepairExhausted { rounds: REPAIR_BUDGET })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftCertificate {
    pub strength: u32,
    pub verdict: Verdict,
    /// Certificates at the declared strength; these decide the verdict.
    pub checks: Vec<Certificate>,
    /// Certificates one degree higher, informational only.
    pub diagnostics: Vec<Certificate>,
}

impl LiftCertificate {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }
}

fn criteria(x: &WeightedPointSet<f64>, r: u32) -> Result<Vec<Certificate>> {
    let mut out = vec![check_weighted_design_moments(x, r)?];
    if x.has_equal_weights() {
        out.push(check_spherical_design_pairwise(x, r)?);
    }
    Ok(out)
}

/// Run the design criteria at strength `r` and, as a diagnostic, at `r + 1`.
/// The pairwise criterion is used only for equal weights.
pub fn certify_lift(design: &LiftedDesign, r: u32) -> Result<LiftCertificate> {
    let checks = criteria(&design.result, r)?;
    let diagnostics = criteria(&design.result, r + 1)?;
    let verdict = Verdict::from_bool(checks.iter().all(Certificate::passed));
    debug_assert!(checks.iter().all(|c| c.mode == Mode::Float));
    Ok(LiftCertificate { strength: r, verdict, checks, diagnostics })
}
