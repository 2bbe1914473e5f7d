//! Singular values of small dense matrices by one-sided Jacobi rotation.

use super::matrix::Matrix;
use crate::error::{Error, Result};

const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 64;

/// Slack allowed past the `[0, 1]` range before clamping becomes an error.
pub const CLAMP_TOL: f64 = 1e-9;

/// Singular values in non-increasing order.
pub fn svd_singular_values(m: &Matrix<f64>) -> Result<Vec<f64>> {
    if m.as_slice().iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    // Work on the orientation with fewer columns; singular values are shared.
    let work = if m.cols() > m.rows() { m.transpose() } else { m.clone() };
    let cols = work.cols();
    let mut columns: Vec<Vec<f64>> = (0..cols).map(|j| work.column(j)).collect();

    let mut converged = cols < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha: f64 = columns[p].iter().map(|x| x * x).sum();
                let beta: f64 = columns[q].iter().map(|x| x * x).sum();
                let gamma: f64 = columns[p].iter().zip(&columns[q]).map(|(x, y)| x * y).sum();
                if gamma == 0.0 || gamma.abs() <= OFF_DIAGONAL_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (head, tail) = columns.split_at_mut(q);
                for (xp, xq) in head[p].iter_mut().zip(tail[0].iter_mut()) {
                    let (u, v) = (*xp, *xq);
                    *xp = c * u - s * v;
                    *xq = s * u + c * v;
                }
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NonConvergence { sweeps: MAX_SWEEPS });
    }
    let mut values: Vec<f64> = columns.iter().map(|col| col.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Clamp values into `[0, 1]`, rejecting anything further than [`CLAMP_TOL`] outside.
pub fn clamp_unit_interval(values: &[f64]) -> Result<Vec<f64>> {
    values
        .iter()
        .map(|&v| {
            if !(-CLAMP_TOL..=1.0 + CLAMP_TOL).contains(&v) {
                Err(Error::ClampViolation { value: v })
            } else {
                Ok(v.clamp(0.0, 1.0))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: Vec<Vec<f64>>) -> Matrix<f64> {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(svd_singular_values(&m(vec![vec![1.0, 0.0], vec![0.0, 1.0]])).unwrap(), vec![1.0, 1.0]);
        assert_eq!(svd_singular_values(&m(vec![vec![0.0, 0.0], vec![0.0, 0.0]])).unwrap(), vec![0.0, 0.0]);
        assert_eq!(svd_singular_values(&m(vec![vec![1.0, 0.0], vec![0.0, 0.5]])).unwrap(), vec![1.0, 0.5]);
    }

    #[test]
    fn rotation_times_diagonal() {
        let (c, s) = (0.6, 0.8);
        let a = m(vec![vec![3.0 * c, -2.0 * s], vec![3.0 * s, 2.0 * c]]);
        let sv = svd_singular_values(&a).unwrap();
        assert!((sv[0] - 3.0).abs() < 1e-14 && (sv[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn wide_and_tall_agree() {
        let a = m(vec![vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]]);
        let s1 = svd_singular_values(&a).unwrap();
        let s2 = svd_singular_values(&a.transpose()).unwrap();
        for (x, y) in s1.iter().zip(&s2) {
            assert!((x - y).abs() < 1e-12);
        }
        // sum of squares equals squared Frobenius norm
        let fro: f64 = a.as_slice().iter().map(|x| x * x).sum();
        assert!((s1.iter().map(|x| x * x).sum::<f64>() - fro).abs() < 1e-10);
    }

    #[test]
    fn clamping() {
        assert_eq!(clamp_unit_interval(&[1.0 + 1e-12, -1e-12, 0.5]).unwrap(), vec![1.0, 0.0, 0.5]);
        assert!(clamp_unit_interval(&[1.0 + 1e-6]).is_err());
        assert!(clamp_unit_interval(&[-1e-6]).is_err());
    }

    #[test]
    fn rejects_nan() {
        assert!(svd_singular_values(&m(vec![vec![f64::NAN]])).is_err());
    }

    proptest! {
        #[test]
        fn row_permutation_invariance(entries in proptest::collection::vec(-5.0f64..5.0, 12), shift in 1usize..4) {
            let a = Matrix::from_vec(4, 3, entries).unwrap();
            let rows = a.to_rows();
            let permuted: Vec<Vec<f64>> = (0..4).map(|i| rows[(i + shift) % 4].clone()).collect();
            let b = Matrix::from_rows(permuted).unwrap();
            let sa = svd_singular_values(&a).unwrap();
            let sb = svd_singular_values(&b).unwrap();
            for (x, y) in sa.iter().zip(&sb) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }
    }
}
