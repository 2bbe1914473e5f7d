//! Principal angles and the pair invariants derived from them.

use serde::{Deserialize, Serialize};

use super::subspace::{IntegerSpan, Subspace};
use crate::error::{Error, Result};
use crate::numerics::{clamp_unit_interval, svd_singular_values, Matrix, Rational, Scalar};

/// Squared cosines of the principal angles of two planes, `1 ≥ y₁ ≥ y₂ ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnglePair {
    pub y1: f64,
    pub y2: f64,
}

impl AnglePair {
    pub fn new(y1: f64, y2: f64) -> Result<Self> {
        let (y1, y2) = if y1 >= y2 { (y1, y2) } else { (y2, y1) };
        if !(0.0..=1.0).contains(&y2) || !(0.0..=1.0).contains(&y1) {
            return Err(Error::InvalidArgument(format!("squared cosines ({y1}, {y2}) outside [0, 1]")));
        }
        Ok(AnglePair { y1, y2 })
    }

    /// Roots of `y² - e₁ y + e₂`.
    pub fn from_symmetric(e1: f64, e2: f64) -> Result<Self> {
        let disc = (e1 * e1 - 4.0 * e2).max(0.0).sqrt();
        let clamped = clamp_unit_interval(&[(e1 + disc) / 2.0, (e1 - disc) / 2.0])?;
        AnglePair::new(clamped[0], clamped[1])
    }

    pub fn e1(&self) -> f64 {
        self.y1 + self.y2
    }

    pub fn e2(&self) -> f64 {
        self.y1 * self.y2
    }
}

/// Power sums `p₁ = Σ yᵢ = tr(P_V P_W)` and `p₂ = Σ yᵢ² = tr((P_V P_W)²)`.
///
/// The three explicit zonal polynomials depend on the squared cosines only
/// through these two sums, so they are all a pair contributes to the frame
/// and design checks.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSums<T> {
    pub p1: T,
    pub p2: T,
}

impl<T: Scalar> PowerSums<T> {
    pub fn from_cosines(y: &[T]) -> Self {
        PowerSums {
            p1: y.iter().fold(T::zero(), |a, x| a + x.clone()),
            p2: y.iter().fold(T::zero(), |a, x| a + x.clone() * x.clone()),
        }
    }

    /// `e₁ = y₁ + y₂`.
    pub fn e1(&self) -> T {
        self.p1.clone()
    }

    /// `e₂ = y₁ y₂ = (p₁² - p₂)/2` (the second elementary symmetric function).
    pub fn e2(&self) -> T {
        (self.p1.clone() * self.p1.clone() - self.p2.clone()) / T::from_i64(2)
    }
}

fn check_compatible(v: &Subspace, w: &Subspace) -> Result<()> {
    if v.ambient_dim() != w.ambient_dim() || v.dim() != w.dim() {
        return Err(Error::DimensionMismatch(format!(
            "G({}, {}) vs G({}, {})",
            v.dim(),
            v.ambient_dim(),
            w.dim(),
            w.ambient_dim()
        )));
    }
    Ok(())
}

/// Squared cosines of the principal angles, non-increasing, from the singular
/// values of `Q_Vᵀ Q_W`.
pub fn principal_angles(v: &Subspace, w: &Subspace) -> Result<Vec<f64>> {
    check_compatible(v, w)?;
    let m = v.basis().transpose().matmul(w.basis())?;
    let sigma = clamp_unit_interval(&svd_singular_values(&m)?)?;
    let y: Vec<f64> = sigma.iter().map(|s| s * s).collect();
    clamp_unit_interval(&y)
}

/// Unclamped squared singular values, for auditing the clamp slack.
pub fn raw_squared_singular_values(v: &Subspace, w: &Subspace) -> Result<Vec<f64>> {
    check_compatible(v, w)?;
    let m = v.basis().transpose().matmul(w.basis())?;
    Ok(svd_singular_values(&m)?.into_iter().map(|s| s * s).collect())
}

pub fn angle_pair(v: &Subspace, w: &Subspace) -> Result<AnglePair> {
    if v.dim() != 2 {
        return Err(Error::Unsupported("angle pairs are defined for planes".into()));
    }
    let y = principal_angles(v, w)?;
    AnglePair::new(y[0], y[1])
}

/// `d_C(V, W) = sqrt(Σ (1 - yᵢ))`.
pub fn chordal_distance(v: &Subspace, w: &Subspace) -> Result<f64> {
    Ok(chordal_distance_sq_float(v, w)?.sqrt())
}

fn chordal_distance_sq_float(v: &Subspace, w: &Subspace) -> Result<f64> {
    let y = principal_angles(v, w)?;
    Ok(y.iter().map(|yi| 1.0 - yi).sum::<f64>().max(0.0))
}

/// Exact power sums when both subspaces carry exact data.
pub fn exact_power_sums(v: &Subspace, w: &Subspace) -> Result<Option<PowerSums<Rational>>> {
    check_compatible(v, w)?;
    if let (Some(a), Some(b)) = (v.integer_span(), w.integer_span()) {
        if let Some(s) = span_power_sums(a, b) {
            return Ok(Some(s));
        }
    }
    match (v.projector(), w.projector()) {
        (Some(p), Some(q)) => Ok(Some(projector_power_sums(p, q)?)),
        _ => Ok(None),
    }
}

/// Float power sums from the principal angles.
pub fn float_power_sums(v: &Subspace, w: &Subspace) -> Result<PowerSums<f64>> {
    Ok(PowerSums::from_cosines(&principal_angles(v, w)?))
}

/// `tr(PQ)` and `tr((PQ)²)` from exact projectors.
pub fn projector_power_sums(p: &Matrix<Rational>, q: &Matrix<Rational>) -> Result<PowerSums<Rational>> {
    let p1 = p.frobenius_dot(q)?;
    let pq = p.matmul(q)?;
    let p2 = pq.frobenius_dot(&pq.transpose())?;
    Ok(PowerSums { p1, p2 })
}

/// Power sums from orthogonal integer spanning sets.
///
/// With Gram entries `G_ij = ⟨w_i, w'_j⟩` and squared norms `n_i`, `n'_j`:
/// `p₁ = Σ G_ij² / (n_i n'_j)` and
/// `p₂ = Σ_{i,l} (Σ_j G_ij G_lj / n'_j)² / (n_i n_l)`.
/// Returns `None` if an intermediate would overflow `i128`.
pub fn span_power_sums(a: &IntegerSpan, b: &IntegerSpan) -> Option<PowerSums<Rational>> {
    let k = a.vectors.len();
    let kk = b.vectors.len();
    let gram: Vec<Vec<i128>> = a
        .vectors
        .iter()
        .map(|u| b.vectors.iter().map(|w| u.iter().zip(w).map(|(&x, &y)| x as i128 * y as i128).sum()).collect())
        .collect();
    // D' = Π n'_j; H_il · D' is an integer.
    let dprime: i128 = b.norms2.iter().try_fold(1i128, |acc, &n| acc.checked_mul(n as i128))?;
    let cofactor: Vec<i128> = b.norms2.iter().map(|&n| dprime / n as i128).collect();

    let mut p1 = Rational::zero();
    for (row, &n) in gram.iter().zip(&a.norms2) {
        let mut num: i128 = 0;
        for (g, c) in row.iter().zip(&cofactor) {
            num = num.checked_add(g.checked_mul(*g)?.checked_mul(*c)?)?;
        }
        let den = dprime.checked_mul(n as i128)?;
        p1 += Rational::new(num, den);
    }
    let mut p2 = Rational::zero();
    for i in 0..k {
        for l in 0..k {
            let mut h: i128 = 0;
            for j in 0..kk {
                h = h.checked_add(gram[i][j].checked_mul(gram[l][j])?.checked_mul(cofactor[j])?)?;
            }
            let num = h.checked_mul(h)?;
            let den = dprime.checked_mul(dprime)?.checked_mul(a.norms2[i] as i128)?.checked_mul(a.norms2[l] as i128)?;
            p2 += Rational::new(num, den);
        }
    }
    Some(PowerSums { p1, p2 })
}
