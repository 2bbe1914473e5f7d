//! The two spherical-design criteria: vanishing Gegenbauer double sums, and
//! weighted moments matching the sphere average on a probe set.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::gegenbauer::GegenbauerEvaluator;
use super::pointset::WeightedPointSet;
use crate::certificate::{Certificate, Residual, Value};
use crate::error::{Error, Result};
use crate::numerics::{dot, norm2, pochhammer, tree_sum, Mode, Rational, Scalar};

pub const PAIRWISE_CRITERION: &str = "gegenbauer-pairwise";
pub const MOMENT_CRITERION: &str = "weighted-moments";

/// Seed of the random part of the default probe set.
pub const PROBE_SEED: u64 = 0x5eed_d351_9a5f;
const RANDOM_PROBES: usize = 8;

/// Float tolerance of the pairwise criterion for `n` points.
pub fn pairwise_tolerance(n: usize) -> f64 {
    1e-9 * (n as f64) * (n as f64)
}

/// Float tolerance of the moment criterion; residuals are normalized by the
/// total weight and the probe norm.
pub const MOMENT_TOL: f64 = 1e-9;

/// `Σ_{i,j} Q_ℓ(⟨x_i, x_j⟩)` for `ℓ = 1..=t`, using the point set's own dimension.
pub fn check_spherical_design_pairwise<T: Scalar>(x: &WeightedPointSet<T>, t: u32) -> Result<Certificate> {
    check_pairwise_in_dimension(x, t, x.dim())
}

/// Pairwise criterion with an explicit sphere dimension.
///
/// Points confined to a subspace (a polygon in a plane of `R^d`) are checked
/// against the Gegenbauer family of that subspace's sphere.
pub fn check_pairwise_in_dimension<T: Scalar>(
    x: &WeightedPointSet<T>,
    t: u32,
    sphere_dim: usize,
) -> Result<Certificate> {
    if sphere_dim < 2 {
        return Err(Error::InvalidArgument("sphere dimension must be at least 2".into()));
    }
    if !x.has_equal_weights() {
        return Err(Error::InvalidArgument("pairwise criterion requires equal weights".into()));
    }
    let sums = gegenbauer_double_sums(x.points(), t, sphere_dim);
    let n = x.len();
    let tolerance = match T::MODE {
        Mode::Exact => 0.0,
        Mode::Float => pairwise_tolerance(n),
    };
    let residuals = (1..=t).map(|l| Residual::new(l, Value::from_scalar(&sums[l as usize]))).collect();
    Ok(Certificate::from_residuals(PAIRWISE_CRITERION, T::MODE, tolerance, residuals))
}

/// `[Σ_{i,j} Q_ℓ(⟨x_i,x_j⟩)]` for `ℓ = 0..=t`.
///
/// Row partial sums run in parallel; the final reduction is a fixed tree so
/// float results do not depend on the thread count.
pub fn gegenbauer_double_sums<T: Scalar>(points: &[Vec<T>], t: u32, sphere_dim: usize) -> Vec<T> {
    let n = points.len();
    let geg = GegenbauerEvaluator::new(sphere_dim, t);
    let width = t as usize + 1;
    let rows: Vec<Vec<T>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut acc = vec![T::zero(); width];
            for j in i + 1..n {
                let ip = dot(&points[i], &points[j]);
                for (a, q) in acc.iter_mut().zip(geg.eval_all(&ip)) {
                    *a = a.clone() + q;
                }
            }
            acc
        })
        .collect();
    (0..width)
        .map(|l| {
            let column: Vec<T> = rows.iter().map(|r| r[l].clone()).collect();
            // diagonal terms contribute Q_ℓ(1) = 1 each
            T::from_i64(n as i64) + T::from_i64(2) * tree_sum(&column)
        })
        .collect()
}

/// Structured probes (`e_i` and `e_i + e_j`) followed by eight seeded random directions.
///
/// Both criteria are homogeneous in the probe, so exact mode keeps the
/// unnormalized integer directions; float mode normalizes them.
pub fn default_probes<T: Scalar>(d: usize) -> Vec<Vec<T>> {
    let mut raw: Vec<Vec<i64>> = Vec::new();
    for i in 0..d {
        let mut v = vec![0; d];
        v[i] = 1;
        raw.push(v);
    }
    for i in 0..d {
        for j in i + 1..d {
            let mut v = vec![0; d];
            v[i] = 1;
            v[j] = 1;
            raw.push(v);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED ^ d as u64);
    while raw.len() < d + d * (d - 1) / 2 + RANDOM_PROBES {
        let v: Vec<i64> = (0..d).map(|_| rng.gen_range(-9..=9)).collect();
        if v.iter().any(|&c| c != 0) {
            raw.push(v);
        }
    }
    raw.into_iter()
        .map(|v| {
            let v: Vec<T> = v.into_iter().map(T::from_i64).collect();
            match T::MODE {
                Mode::Exact => v,
                Mode::Float => {
                    let n = norm2(&v).to_f64().sqrt();
                    v.into_iter().map(|c| c / T::from_rational(&Rational::from_f64(n).expect("finite"))).collect()
                }
            }
        })
        .collect()
}

/// Sphere average of `⟨x, y⟩^m` for `‖y‖ = 1`: `(1/2)_{m/2} / (d/2)_{m/2}` for
/// even `m`, zero for odd `m`.
pub fn sphere_moment(d: usize, m: u32) -> Rational {
    if m % 2 == 1 {
        return Rational::zero();
    }
    pochhammer(&Rational::new(1, 2), m / 2) / pochhammer(&Rational::new(d as i64, 2), m / 2)
}

/// Moment criterion on the default probe set.
pub fn check_weighted_design_moments<T: Scalar>(x: &WeightedPointSet<T>, t: u32) -> Result<Certificate> {
    check_weighted_design_moments_with(x, t, &default_probes::<T>(x.dim()))
}

/// Moment criterion: for every probe `y` and `m = 0..=t`,
/// `Σ λ_j ⟨x_j, y⟩^m = Λ · sphere_moment(d, m) · ‖y‖^m`.
///
/// Residuals are divided by `Λ` (and by `‖y‖^m` for even `m`).
pub fn check_weighted_design_moments_with<T: Scalar>(
    x: &WeightedPointSet<T>,
    t: u32,
    probes: &[Vec<T>],
) -> Result<Certificate> {
    if probes.is_empty() {
        return Err(Error::Empty("probe set"));
    }
    let d = x.dim();
    let total = x.total_weight();
    let mut residuals = Vec::new();
    for (pi, y) in probes.iter().enumerate() {
        if y.len() != d {
            return Err(Error::DimensionMismatch(format!("probe {pi} has length {}", y.len())));
        }
        let y2 = norm2(y);
        if y2.is_zero_exact() || y2.to_f64() == 0.0 {
            return Err(Error::InvalidArgument(format!("probe {pi} is the zero vector")));
        }
        let ips: Vec<T> = x.points().iter().map(|p| dot(p, y)).collect();
        let mut powers: Vec<T> = vec![T::one(); ips.len()];
        for m in 0..=t {
            if m > 0 {
                for (pw, ip) in powers.iter_mut().zip(&ips) {
                    *pw = pw.clone() * ip.clone();
                }
            }
            let terms: Vec<T> = powers.iter().zip(x.weights()).map(|(pw, w)| pw.clone() * w.clone()).collect();
            let moment = tree_sum(&terms) / total.clone();
            let residual =
                if m % 2 == 0 { moment / y2.powi(m / 2) - T::from_rational(&sphere_moment(d, m)) } else { moment };
            residuals.push(Residual::labelled(m, format!("probe {pi}"), Value::from_scalar(&residual)));
        }
    }
    let tolerance = match T::MODE {
        Mode::Exact => 0.0,
        Mode::Float => MOMENT_TOL,
    };
    Ok(Certificate::from_residuals(MOMENT_CRITERION, T::MODE, tolerance, residuals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::q;

    fn hexagon() -> WeightedPointSet<f64> {
        let pts = (0..6)
            .map(|j| {
                let a = std::f64::consts::TAU * j as f64 / 6.0;
                vec![a.cos(), a.sin()]
            })
            .collect();
        WeightedPointSet::equal_weight(2, pts).unwrap()
    }

    fn cross2() -> WeightedPointSet<Rational> {
        let o = Rational::zero;
        let i = Rational::one;
        WeightedPointSet::equal_weight(2, vec![vec![i(), o()], vec![-i(), o()], vec![o(), i()], vec![o(), -i()]])
            .unwrap()
    }

    #[test]
    fn antipodal_pair_is_a_one_design() {
        for d in 2..6 {
            let mut e = vec![Rational::zero(); d];
            e[0] = Rational::one();
            let neg: Vec<Rational> = e.iter().map(|x| -x).collect();
            let s = WeightedPointSet::equal_weight(d, vec![e, neg]).unwrap();
            let c = check_spherical_design_pairwise(&s, 1).unwrap();
            assert!(c.passed());
            assert_eq!(c.tolerance, 0.0);
        }
    }

    #[test]
    fn hexagon_pairwise() {
        assert!(check_spherical_design_pairwise(&hexagon(), 5).unwrap().passed());
        let c = check_spherical_design_pairwise(&hexagon(), 6).unwrap();
        assert!(!c.passed());
        assert!(c.passes_degree(5));
        // Chebyshev: Σ cos(6(θ_i - θ_j)) = 36
        assert!((c.residual_at(6).unwrap() - 36.0).abs() < 1e-9);
    }

    #[test]
    fn cross_moments() {
        let s = cross2();
        let c = check_weighted_design_moments_with(&s, 3, &[vec![q(1, 1), q(0, 1)]]).unwrap();
        assert!(c.passed());
        assert_eq!(sphere_moment(2, 2), q(1, 2));
        // the m = 4 moment of the square differs from the circle average 3/8
        let c4 = check_weighted_design_moments(&s, 4).unwrap();
        assert!(!c4.passed());
    }

    #[test]
    fn single_point_fails_odd_moment() {
        let s = WeightedPointSet::equal_weight(2, vec![vec![q(1, 1), q(0, 1)]]).unwrap();
        let c = check_weighted_design_moments_with(&s, 1, &[vec![q(1, 1), q(0, 1)]]).unwrap();
        assert!(!c.passed());
        assert_eq!(c.labelled("probe 0"), Some(&Value::Exact(q(0, 1))));
        assert_eq!(c.residuals[1].value, Value::Exact(q(1, 1)));
    }

    #[test]
    fn criteria_agree_on_hexagon() {
        let h = hexagon();
        for t in 1..=7 {
            let a = check_spherical_design_pairwise(&h, t).unwrap().passed();
            let b = check_weighted_design_moments(&h, t).unwrap().passed();
            assert_eq!(a, b, "t = {t}");
        }
    }

    #[test]
    fn error_paths() {
        let s = cross2();
        assert!(check_weighted_design_moments_with(&s, 2, &[vec![q(0, 1), q(0, 1)]]).is_err());
        assert!(check_weighted_design_moments_with(&s, 2, &[]).is_err());
        let uneven = WeightedPointSet::new(2, vec![vec![1.0, 0.0], vec![-1.0, 0.0]], vec![1.0, 2.0]).unwrap();
        assert!(check_spherical_design_pairwise(&uneven, 1).is_err());
    }

    #[test]
    fn default_probe_count() {
        let p: Vec<Vec<f64>> = default_probes(4);
        assert_eq!(p.len(), 4 + 6 + 8);
        for y in &p {
            assert!((norm2(y) - 1.0).abs() < 1e-14);
        }
        let e: Vec<Vec<Rational>> = default_probes(4);
        assert_eq!(e.len(), p.len());
    }
}
