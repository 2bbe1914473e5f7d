//! Cardinality bounds for equi-chordal tight 2-fusion frames of planes.
//!
//! Equi-isoclinic examples come from SIC-POVMs via [`sic_to_eitff`].

use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Residual, Value, Verdict};
use crate::error::{Error, Result};
use crate::grassmann::{
    check_grassmann_design_4, check_tff, chs_embed, embedding_dim, exact_moments, exact_power_sums, float_moments,
    float_power_sums, is_equichordal, is_equiisoclinic, EquiReport, FrameConfig, Subspace, Zonal, ZonalForm,
};
use crate::numerics::{binom, Mode, Rational};
use crate::sphere::{check_pairwise_in_dimension, gegenbauer_double_sums, WeightedPointSet};

pub const ECTFF2_CRITERION: &str = "ectff2";
pub const SIC_TOL: f64 = 1e-10;
const FLOAT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EctffClass {
    /// `N = d²/4`: only an equi-isoclinic frame can have this size.
    Eitff2,
    /// `N = binom(d+1, 2)`: the frame would be a tight Grassmann 4-design.
    /// Nothing is claimed about existence.
    WouldBeTight4Design,
    /// Strictly between the bounds.
    Interior,
    /// Outside `[d²/4, binom(d+1, 2)]`; no such frame exists.
    OutsideBounds,
}

/// Predicted pair statistics of an equi-chordal tight 2-fusion frame of `N`
/// planes in `R^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EctffReport {
    pub d: usize,
    #[serde(rename = "N")]
    pub n: usize,
    /// Common `e₁ = y₁ + y₂` of all pairs.
    pub e10: Rational,
    /// Mean of `e₂ = y₁ y₂` over ordered pairs of distinct planes.
    pub e2_mean: Rational,
    /// `e₁,₀²/4 - ē₂`.
    pub gap: Rational,
    /// Predicted `Σ_{V,W} P_(2,2)(V, W)`.
    pub p22_sum: Rational,
    pub lower_bound: Rational,
    pub upper_bound: Rational,
    pub lower_ok: bool,
    pub upper_ok: bool,
    pub class: EctffClass,
}

fn r(x: i64) -> Rational {
    Rational::from(x)
}

/// `2(2N - d) / (d(N-1))`.
pub fn e10(d: i64, n: i64) -> Rational {
    Rational::new(2 * (2 * n - d), d * (n - 1))
}

/// `[d²(d+2) + 2d(d²-4d-4)N - 4(d-6)N²] / (d²(d+2)(N-1)²)`.
pub fn e2_mean(d: i64, n: i64) -> Rational {
    let num = r(d * d * (d + 2)) + r(2 * d * (d * d - 4 * d - 4)) * r(n) - r(4 * (d - 6)) * r(n) * r(n);
    num / (r(d * d * (d + 2)) * r(n - 1) * r(n - 1))
}

/// `-2N(d-2)(d² - 4N) / (d²(d+2)(N-1)²)`.
pub fn gap_closed_form(d: i64, n: i64) -> Rational {
    r(-2 * n * (d - 2)) * r(d * d - 4 * n) / (r(d * d * (d + 2)) * r(n - 1) * r(n - 1))
}

/// `3N²(d-2)²(d(d+1) - 2N) / (d²(N-1)(d-3)(d+2))`.
pub fn p22_sum_prediction(d: i64, n: i64) -> Rational {
    r(3) * r(n) * r(n) * r((d - 2) * (d - 2)) * r(d * (d + 1) - 2 * n) / (r(d * d) * r(n - 1) * r(d - 3) * r(d + 2))
}

/// Predicted moments and bound verdicts for `(d, N)`, `d ≥ 4`, `N ≥ 2`.
pub fn ectff2_moments(d: usize, n: usize) -> Result<EctffReport> {
    if d < 4 || n < 2 {
        return Err(Error::InvalidArgument(format!("need d >= 4 and N >= 2, got d = {d}, N = {n}")));
    }
    let (di, ni) = (d as i64, n as i64);
    let e10 = e10(di, ni);
    let e2_mean = e2_mean(di, ni);
    let gap = &e10 * &e10 / r(4) - &e2_mean;
    let lower_bound = Rational::new(di * di, 4);
    let upper_bound = Rational::from(binom(di + 1, 2));
    let nr = r(ni);
    let lower_ok = nr >= lower_bound;
    let upper_ok = nr <= upper_bound;
    let class = if !lower_ok || !upper_ok {
        EctffClass::OutsideBounds
    } else if nr == lower_bound {
        EctffClass::Eitff2
    } else if nr == upper_bound {
        EctffClass::WouldBeTight4Design
    } else {
        EctffClass::Interior
    };
    Ok(EctffReport {
        d,
        n,
        e10,
        e2_mean,
        gap,
        p22_sum: p22_sum_prediction(di, ni),
        lower_bound,
        upper_bound,
        lower_ok,
        upper_ok,
        class,
    })
}

/// Measured pair statistics next to the predictions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ectff2Check {
    pub certificate: Certificate,
    pub report: EctffReport,
    pub equichordal: EquiReport,
    pub equiisoclinic: EquiReport,
    pub tff: Certificate,
    pub measured_e1: Value,
    pub measured_e2_mean: Value,
    /// Equi-isoclinic in odd `d`, which rules out a tight 2-fusion frame.
    pub odd_dimension_exclusion: bool,
}

impl Ectff2Check {
    pub fn passed(&self) -> bool {
        self.certificate.passed()
    }
}

fn pair_indices(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Check a plane configuration for being an equi-chordal tight 2-fusion
/// frame and compare its pair statistics with [`ectff2_moments`].
pub fn check_ectff2(planes: &[Subspace]) -> Result<Ectff2Check> {
    let first = planes.first().ok_or(Error::Empty("configuration"))?;
    if first.dim() != 2 {
        return Err(Error::Unsupported("ECTFF check is defined for planes".into()));
    }
    let (d, n) = (first.ambient_dim(), planes.len());
    let report = ectff2_moments(d, n)?;
    let equichordal = is_equichordal(planes, None)?;
    let equiisoclinic = is_equiisoclinic(planes, None)?;
    let frame = FrameConfig::equal_weight(planes.to_vec())?;
    let tff = check_tff(&frame, 2)?;
    let pairs = pair_indices(n);
    let exact = planes.iter().all(Subspace::is_exact);

    let mut residuals: Vec<Residual> = tff.residuals.clone();
    let (measured_e1, measured_e2_mean, mode, tolerance) = if exact {
        let sums = pairs
            .iter()
            .map(|&(i, j)| Ok(exact_power_sums(&planes[i], &planes[j])?.expect("exact")))
            .collect::<Result<Vec<_>>>()?;
        let e2s: Vec<Rational> = sums.iter().map(|s| s.e2()).collect();
        let mean = e2s.iter().sum::<Rational>() / r(pairs.len() as i64);
        let e1 = sums[0].e1();
        residuals.push(Residual::labelled(2, "e1 - e1,0", Value::Exact(&e1 - &report.e10)));
        residuals.push(Residual::labelled(4, "mean e2 - predicted", Value::Exact(&mean - &report.e2_mean)));
        if equiisoclinic.passed() {
            let target = &report.e10 * &report.e10 / r(4);
            let worst = e2s.iter().map(|e| (e - &target).abs()).max().expect("pairs");
            residuals.push(Residual::labelled(4, "e2 - e1,0^2/4", Value::Exact(worst)));
        }
        (Value::Exact(e1), Value::Exact(mean), Mode::Exact, 0.0)
    } else {
        let sums = pairs.iter().map(|&(i, j)| float_power_sums(&planes[i], &planes[j])).collect::<Result<Vec<_>>>()?;
        let e2s: Vec<f64> = sums.iter().map(|s| s.e2()).collect();
        let mean = e2s.iter().sum::<f64>() / pairs.len() as f64;
        let e1 = sums[0].e1();
        residuals.push(Residual::labelled(2, "e1 - e1,0", Value::Float(e1 - report.e10.to_f64())));
        residuals.push(Residual::labelled(4, "mean e2 - predicted", Value::Float(mean - report.e2_mean.to_f64())));
        if equiisoclinic.passed() {
            let target = report.e10.to_f64().powi(2) / 4.0;
            let worst = e2s.iter().map(|e| (e - target).abs()).fold(0.0, f64::max);
            residuals.push(Residual::labelled(4, "e2 - e1,0^2/4", Value::Float(worst)));
        }
        (Value::Float(e1), Value::Float(mean), Mode::Float, FLOAT_TOL)
    };
    let mut certificate = Certificate::from_residuals(ECTFF2_CRITERION, mode, tolerance, residuals);
    if !equichordal.passed() || !tff.passed() {
        certificate.verdict = Verdict::Fail;
    }
    Ok(Ectff2Check {
        certificate,
        report,
        odd_dimension_exclusion: d % 2 == 1 && equiisoclinic.passed(),
        equichordal,
        equiisoclinic,
        tff,
        measured_e1,
        measured_e2_mean,
    })
}

/// `n²` unit vectors in `C^n` with `|⟨zᵢ, zⱼ⟩|² = 1/(n+1)` for `i ≠ j`.
///
/// Each vector is stored as `2n` reals `(Re z₁, Im z₁, Re z₂, Im z₂, …)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SicSystem {
    pub n: usize,
    pub vectors: Vec<Vec<f64>>,
}

fn hermitian(x: &[f64], y: &[f64]) -> (f64, f64) {
    // ⟨x, y⟩ = Σ conj(x_m) y_m
    x.chunks(2)
        .zip(y.chunks(2))
        .fold((0.0, 0.0), |(re, im), (a, b)| (re + a[0] * b[0] + a[1] * b[1], im + a[0] * b[1] - a[1] * b[0]))
}

impl SicSystem {
    pub fn new(n: usize, vectors: Vec<Vec<f64>>) -> Result<Self> {
        if vectors.len() != n * n || vectors.iter().any(|v| v.len() != 2 * n) {
            return Err(Error::DimensionMismatch(format!("a SIC in C^{n} has {} vectors of 2n reals", n * n)));
        }
        let target = 1.0 / (n as f64 + 1.0);
        for i in 0..vectors.len() {
            for j in i..vectors.len() {
                let (re, im) = hermitian(&vectors[i], &vectors[j]);
                let overlap = re * re + im * im;
                let want = if i == j { 1.0 } else { target };
                if (overlap - want).abs() > SIC_TOL {
                    return Err(Error::SicViolation { i, j, overlap });
                }
            }
        }
        Ok(SicSystem { n, vectors })
    }

    /// The tetrahedral SIC in `C²`: `(1, 0)` and `(1/√3, √(2/3) ωᵏ)` for
    /// `ω = e^{2πi/3}`, `k = 0, 1, 2`.
    pub fn tetrahedral() -> Self {
        let a = 1.0 / 3f64.sqrt();
        let b = (2.0 / 3.0f64).sqrt();
        let mut vectors = vec![vec![1.0, 0.0, 0.0, 0.0]];
        for k in 0..3 {
            let (s, c) = (std::f64::consts::TAU * k as f64 / 3.0).sin_cos();
            vectors.push(vec![a, 0.0, b * c, b * s]);
        }
        SicSystem::new(2, vectors).expect("tetrahedral SIC")
    }
}

/// The real planes `span_R{z, iz} ⊂ R^{2n}`, one per SIC vector.
pub fn sic_to_eitff(sic: &SicSystem) -> Result<Vec<Subspace>> {
    sic.vectors
        .iter()
        .map(|z| {
            let iz: Vec<f64> = z.chunks(2).flat_map(|c| [-c[1], c[0]]).collect();
            Subspace::from_float_vectors(&[z.clone(), iz])
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereMapCheck {
    pub design4: Certificate,
    /// Spherical 2-design certificate of the embedded points in `R^{D₀}`.
    pub image: Certificate,
    pub image_dim: usize,
    /// `Σ P_(2)(V, W)` over the configuration.
    pub p2_sum: Value,
    /// `Σ ⟨Φ(V), Φ(W)⟩` over the image.
    pub image_degree1_sum: f64,
    /// A passing 4-design certificate forces a passing image certificate.
    pub implication_holds: bool,
}

/// Embed the configuration and compare its Grassmann 4-design certificate
/// with the spherical 2-design certificate of the image.
pub fn design_to_sphere_map_check(planes: &[Subspace]) -> Result<SphereMapCheck> {
    let design4 = check_grassmann_design_4(planes)?;
    let first = planes.first().ok_or(Error::Empty("configuration"))?;
    let (d, k) = (first.ambient_dim(), first.dim());
    let image_dim = embedding_dim(d);
    let points = planes.iter().map(chs_embed).collect::<Result<Vec<_>>>()?;
    let image_set = WeightedPointSet::equal_weight(image_dim, points.clone())?;
    let image = check_pairwise_in_dimension(&image_set, 2, image_dim)?;
    let frame = FrameConfig::equal_weight(planes.to_vec())?;
    let form = ZonalForm::new(Zonal::P2, k, d)?;
    let p2_sum = if frame.mode() == Mode::Exact {
        Value::Exact(exact_moments(&frame)?.zonal_sum(&form))
    } else {
        Value::Float(float_moments(&frame)?.zonal_sum(&form))
    };
    let image_degree1_sum = gegenbauer_double_sums(&points, 1, image_dim)[1];
    let implication_holds = !design4.passed() || image.passed();
    Ok(SphereMapCheck { design4, image, image_dim, p2_sum, image_degree1_sum, implication_holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::q;
    use crate::orbits::{enumerate_orbit, OrbitParams};

    #[test]
    fn report_examples() {
        let r44 = ectff2_moments(4, 4).unwrap();
        assert_eq!(r44.e10, q(2, 3));
        assert_eq!(r44.gap, q(0, 1));
        assert_eq!(r44.class, EctffClass::Eitff2);
        assert_eq!(r44.p22_sum, q(8, 1));
        let r410 = ectff2_moments(4, 10).unwrap();
        assert_eq!(r410.class, EctffClass::WouldBeTight4Design);
        assert_eq!(r410.p22_sum, q(0, 1));
        let r56 = ectff2_moments(5, 6).unwrap();
        assert!(!r56.lower_ok);
        assert_eq!(r56.class, EctffClass::OutsideBounds);
        assert!(ectff2_moments(3, 4).is_err());
    }

    #[test]
    fn gap_identity_small_grid() {
        for d in 4..9 {
            for n in 2..40 {
                let rep = ectff2_moments(d, n).unwrap();
                assert_eq!(rep.gap, gap_closed_form(d as i64, n as i64));
            }
        }
    }

    #[test]
    fn tetrahedral_sic_gives_eitff() {
        let planes = sic_to_eitff(&SicSystem::tetrahedral()).unwrap();
        assert_eq!(planes.len(), 4);
        let check = check_ectff2(&planes).unwrap();
        assert!(check.passed(), "{:?}", check.certificate);
        assert!(check.equiisoclinic.passed());
        assert!((check.equiisoclinic.common.to_f64() - 1.0 / 3.0).abs() < 1e-10);
        assert_eq!(check.report.class, EctffClass::Eitff2);
    }

    #[test]
    fn sic_validation() {
        let mut s = SicSystem::tetrahedral();
        s.vectors[1][0] = 0.9;
        assert!(matches!(SicSystem::new(2, s.vectors), Err(Error::SicViolation { .. })));
    }

    #[test]
    fn orbit_is_tff_but_not_equichordal() {
        let planes = enumerate_orbit(OrbitParams::new(4, 1, 3).unwrap()).unwrap();
        let check = check_ectff2(&planes).unwrap();
        assert!(check.tff.passed());
        assert!(!check.equichordal.passed());
        assert!(!check.passed());
    }

    #[test]
    fn sphere_map_identity() {
        let planes = sic_to_eitff(&SicSystem::tetrahedral()).unwrap();
        let m = design_to_sphere_map_check(&planes).unwrap();
        assert_eq!(m.image_dim, 9);
        assert!(!m.design4.passed());
        assert!((m.p2_sum.to_f64() - m.image_degree1_sum).abs() < 1e-9);
        assert!(m.implication_holds);
    }
}
