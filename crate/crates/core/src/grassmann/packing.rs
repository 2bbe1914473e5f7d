//! Equi-chordal / equi-isoclinic predicates, the sphere embedding of the
//! Grassmannian, and the simplex bound on chordal distance.

use serde::{Deserialize, Serialize};

use super::angles::{exact_power_sums, principal_angles};
use super::subspace::Subspace;
use crate::certificate::{Value, Verdict};
use crate::error::{Error, Result};
use crate::numerics::{binom, Matrix, Mode, Rational};

/// Default float tolerance for the equality predicates.
pub const EQUALITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquiReport {
    pub verdict: Verdict,
    pub mode: Mode,
    pub tolerance: f64,
    /// The common value (squared chordal distance, or squared cosine), taken
    /// from the first pair.
    pub common: Value,
    /// Spread `max - min` of the pairwise values.
    pub spread: f64,
}

impl EquiReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }
}

fn all_exact(d: &[Subspace]) -> bool {
    d.iter().all(Subspace::is_exact)
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

fn report_exact(values: Vec<Rational>) -> EquiReport {
    let first = values[0].clone();
    let max = values.iter().max().cloned().unwrap_or_else(Rational::zero);
    let min = values.iter().min().cloned().unwrap_or_else(Rational::zero);
    EquiReport {
        verdict: Verdict::from_bool(min == max),
        mode: Mode::Exact,
        tolerance: 0.0,
        common: Value::Exact(first),
        spread: (max - min).to_f64(),
    }
}

fn report_float(values: Vec<f64>, tol: f64, ok: bool) -> EquiReport {
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    EquiReport {
        verdict: Verdict::from_bool(ok && max - min <= tol),
        mode: Mode::Float,
        tolerance: tol,
        common: Value::Float(values[0]),
        spread: max - min,
    }
}

/// All pairwise chordal distances equal. The reported common value is the
/// squared chordal distance. `tol` applies to the distances in float mode.
pub fn is_equichordal(d: &[Subspace], tol: Option<f64>) -> Result<EquiReport> {
    if d.len() < 2 {
        return Err(Error::InvalidArgument("equi-chordality needs at least two subspaces".into()));
    }
    let k = Rational::from(d[0].dim());
    if all_exact(d) {
        let values = pairs(d.len())
            .map(|(i, j)| Ok(&k - &exact_power_sums(&d[i], &d[j])?.expect("exact").p1))
            .collect::<Result<Vec<_>>>()?;
        return Ok(report_exact(values));
    }
    let tol = tol.unwrap_or(EQUALITY_TOL);
    let dist = pairs(d.len())
        .map(|(i, j)| Ok(principal_angles(&d[i], &d[j])?.iter().map(|y| 1.0 - y).sum::<f64>().max(0.0).sqrt()))
        .collect::<Result<Vec<f64>>>()?;
    let max = dist.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = dist.iter().cloned().fold(f64::INFINITY, f64::min);
    let squares: Vec<f64> = dist.iter().map(|x| x * x).collect();
    Ok(report_float(squares, f64::INFINITY, max - min <= tol)).map(|mut r| {
        r.tolerance = tol;
        r
    })
}

/// Every principal angle of every pair equals one common angle. The reported
/// common value is its squared cosine.
///
/// Exactly, all `k` squared cosines of a pair coincide iff `k p₂ = p₁²`.
pub fn is_equiisoclinic(d: &[Subspace], tol: Option<f64>) -> Result<EquiReport> {
    if d.len() < 2 {
        return Err(Error::InvalidArgument("equi-isoclinicity needs at least two subspaces".into()));
    }
    let k = Rational::from(d[0].dim());
    if all_exact(d) {
        let mut isoclinic = true;
        let mut values = Vec::new();
        for (i, j) in pairs(d.len()) {
            let s = exact_power_sums(&d[i], &d[j])?.expect("exact");
            isoclinic &= &k * &s.p2 == &s.p1 * &s.p1;
            values.push(&s.p1 / &k);
        }
        let mut r = report_exact(values);
        if !isoclinic {
            r.verdict = Verdict::Fail;
        }
        return Ok(r);
    }
    let tol = tol.unwrap_or(EQUALITY_TOL);
    let mut all = Vec::new();
    for (i, j) in pairs(d.len()) {
        all.extend(principal_angles(&d[i], &d[j])?);
    }
    Ok(report_float(all, tol, true))
}

/// `binom(d+1, 2) - 1`, the dimension of traceless symmetric `d × d` matrices.
pub fn embedding_dim(d: usize) -> usize {
    binom(d as i64 + 1, 2).try_into().map(|x: u64| x as usize).expect("small") - 1
}

/// `R_V = sqrt(d/(k(d-k))) (P_V - (k/d) I)`, a unit-Frobenius traceless matrix.
pub fn chs_matrix(v: &Subspace) -> Result<Matrix<f64>> {
    let (d, k) = (v.ambient_dim(), v.dim());
    if k >= d {
        return Err(Error::InvalidArgument("embedding needs k < d".into()));
    }
    let scale = (d as f64 / (k * (d - k)) as f64).sqrt();
    let shifted = v.float_projector().sub(&Matrix::identity(d).scale(&(k as f64 / d as f64)))?;
    Ok(shifted.scale(&scale))
}

/// Coordinates of `R_V` in an orthonormal basis of the traceless symmetric
/// matrices: `√2 R_ij` for `i < j`, then the diagonal in a Helmert basis of
/// the sum-zero hyperplane.
pub fn chs_embed(v: &Subspace) -> Result<Vec<f64>> {
    let r = chs_matrix(v)?;
    let d = r.rows();
    let mut out = Vec::with_capacity(embedding_dim(d));
    for i in 0..d {
        for j in i + 1..d {
            out.push(std::f64::consts::SQRT_2 * r[(i, j)]);
        }
    }
    for m in 1..d {
        // h_m = (1, ..., 1, -m, 0, ...) / sqrt(m(m+1)) with m leading ones
        let head: f64 = (0..m).map(|i| r[(i, i)]).sum();
        out.push((head - m as f64 * r[(m, m)]) / ((m * (m + 1)) as f64).sqrt());
    }
    Ok(out)
}

/// `⟨R_V, R_W⟩_F = d/(k(d-k)) · (tr(P_V P_W) - k²/d)`, exactly.
pub fn chs_inner_exact(v: &Subspace, w: &Subspace) -> Result<Option<Rational>> {
    let (d, k) = (v.ambient_dim() as i64, v.dim() as i64);
    if k >= d {
        return Err(Error::InvalidArgument("embedding needs k < d".into()));
    }
    Ok(exact_power_sums(v, w)?.map(|s| Rational::new(d, k * (d - k)) * (s.p1 - Rational::new(k * k, d))))
}

/// `(k(d-k)/d) · N/(N-1)`, the largest possible minimal squared chordal
/// distance of `N` subspaces of `G(k, d)`.
pub fn simplex_bound(d: usize, k: usize, n: usize) -> Result<Rational> {
    if n < 2 {
        return Err(Error::InvalidArgument("simplex bound needs N >= 2".into()));
    }
    let (d, k, n) = (d as i64, k as i64, n as i64);
    Ok(Rational::new(k * (d - k), d) * Rational::new(n, n - 1))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexReport {
    pub bound: Rational,
    pub min_chordal_sq: Value,
    pub satisfied: bool,
    pub equality: bool,
}

/// Compare a configuration's minimal squared chordal distance with the bound.
pub fn check_simplex_bound(d: &[Subspace], tol: f64) -> Result<SimplexReport> {
    let n = d.len();
    let bound = simplex_bound(d[0].ambient_dim(), d[0].dim(), n)?;
    let k = Rational::from(d[0].dim());
    let min = if all_exact(d) {
        let m = pairs(n)
            .map(|(i, j)| Ok(&k - &exact_power_sums(&d[i], &d[j])?.expect("exact").p1))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min()
            .expect("n >= 2");
        Value::Exact(m)
    } else {
        let m = pairs(n)
            .map(|(i, j)| Ok(principal_angles(&d[i], &d[j])?.iter().map(|y| 1.0 - y).sum::<f64>()))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        Value::Float(m)
    };
    let (satisfied, equality) = match &min {
        Value::Exact(m) => (*m <= bound, *m == bound),
        Value::Float(m) => (*m <= bound.to_f64() + tol, (m - bound.to_f64()).abs() <= tol),
    };
    Ok(SimplexReport { bound, min_chordal_sq: min, satisfied, equality })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::subspace::coordinate_subspace;
    use crate::numerics::q;

    #[test]
    fn equichordal_examples() {
        let a = coordinate_subspace(4, &[0, 1]);
        let b = coordinate_subspace(4, &[0, 2]);
        let c = coordinate_subspace(4, &[2, 3]);
        assert!(is_equichordal(&[a.clone(), b.clone()], None).unwrap().passed());
        let r = is_equichordal(&[a.clone(), b.clone(), c.clone()], None).unwrap();
        assert!(!r.passed());
        assert_eq!(r.mode, Mode::Exact);
        assert!(is_equichordal(std::slice::from_ref(&a), None).is_err());
    }

    #[test]
    fn equiisoclinic_examples() {
        let a = coordinate_subspace(4, &[0, 1]);
        let c = coordinate_subspace(4, &[2, 3]);
        let r = is_equiisoclinic(&[a.clone(), c], None).unwrap();
        assert!(r.passed());
        assert_eq!(r.common, Value::Exact(q(0, 1)));
        let b = coordinate_subspace(4, &[0, 2]);
        assert!(!is_equiisoclinic(&[a, b], None).unwrap().passed());
    }

    #[test]
    fn embedding_is_unit_and_traceless() {
        let v = coordinate_subspace(4, &[0, 1]);
        let r = chs_matrix(&v).unwrap();
        assert!(r.trace().abs() < 1e-15);
        assert!((r.frobenius_dot(&r).unwrap() - 1.0).abs() < 1e-14);
        let x = chs_embed(&v).unwrap();
        assert_eq!(x.len(), 9);
        assert!((x.iter().map(|c| c * c).sum::<f64>() - 1.0).abs() < 1e-14);
        let w = coordinate_subspace(4, &[2, 3]);
        assert_eq!(chs_inner_exact(&v, &w).unwrap(), Some(q(-1, 1)));
        let y = chs_embed(&w).unwrap();
        assert!((x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>() + 1.0).abs() < 1e-14);
    }

    #[test]
    fn simplex_bound_values() {
        assert_eq!(simplex_bound(4, 2, 4).unwrap(), q(4, 3));
        assert!(simplex_bound(4, 2, 1).is_err());
        let big = simplex_bound(7, 2, 1_000_000).unwrap().to_f64();
        assert!((big - 10.0 / 7.0).abs() < 1e-5 && big > 10.0 / 7.0);
    }
}
