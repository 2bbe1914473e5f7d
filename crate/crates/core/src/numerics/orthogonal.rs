use super::matrix::{dot, norm2, Matrix};
use super::rational::Rational;
use crate::error::{Error, Result};

const RANK_TOL: f64 = 1e-10;

/// Modified Gram–Schmidt with one reorthogonalization pass.
pub fn gram_schmidt(vectors: &[Vec<f64>]) -> Result<Matrix<f64>> {
    let d = vectors.first().ok_or(Error::Empty("no vectors"))?.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    for (index, v) in vectors.iter().enumerate() {
        if v.len() != d {
            return Err(Error::DimensionMismatch("vectors of unequal length".into()));
        }
        let scale = norm2(v).sqrt();
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&w, b);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let n = norm2(&w).sqrt();
        if scale == 0.0 || n <= RANK_TOL * scale {
            return Err(Error::RankDeficient { index });
        }
        w.iter_mut().for_each(|x| *x /= n);
        basis.push(w);
    }
    Matrix::from_columns(&basis)
}

/// Exact Gram–Schmidt without normalization: mutually orthogonal vectors
/// spanning the same flag as the input.
pub fn orthogonalize_exact(vectors: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let d = vectors.first().ok_or(Error::Empty("no vectors"))?.len();
    let mut out: Vec<(Vec<Rational>, Rational)> = Vec::with_capacity(vectors.len());
    for (index, v) in vectors.iter().enumerate() {
        if v.len() != d {
            return Err(Error::DimensionMismatch("vectors of unequal length".into()));
        }
        let mut w = v.clone();
        for (b, bn2) in &out {
            let c = &dot(v, b) / bn2;
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= &(&c * bi);
            }
        }
        let n2 = norm2(&w);
        if n2.is_zero() {
            return Err(Error::RankDeficient { index });
        }
        out.push((w, n2));
    }
    Ok(out.into_iter().map(|(w, _)| w).collect())
}

/// Exact orthonormal basis; fails unless every orthogonalized vector has a
/// rational norm.
pub fn gram_schmidt_exact(vectors: &[Vec<Rational>]) -> Result<Matrix<Rational>> {
    let orth = orthogonalize_exact(vectors)?;
    let mut cols = Vec::with_capacity(orth.len());
    for (index, w) in orth.into_iter().enumerate() {
        let n = norm2(&w).sqrt_exact().ok_or(Error::IrrationalNorm { index })?;
        cols.push(w.iter().map(|x| x / &n).collect::<Vec<_>>());
    }
    Matrix::from_columns(&cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::q;

    fn e(d: usize, i: usize) -> Vec<f64> {
        let mut v = vec![0.0; d];
        v[i] = 1.0;
        v
    }

    #[test]
    fn already_orthonormal() {
        let m = gram_schmidt(&[e(4, 0), e(4, 1)]).unwrap();
        assert_eq!(m.column(0), e(4, 0));
        assert_eq!(m.column(1), e(4, 1));
    }

    #[test]
    fn hand_example() {
        let v2: Vec<f64> = e(4, 0).iter().zip(e(4, 1)).map(|(a, b)| a + b).collect();
        let m = gram_schmidt(&[e(4, 0), v2]).unwrap();
        for (x, y) in m.column(1).iter().zip(e(4, 1)) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn dependent_input() {
        let twice: Vec<f64> = e(4, 0).iter().map(|x| 2.0 * x).collect();
        assert_eq!(gram_schmidt(&[e(4, 0), twice]), Err(Error::RankDeficient { index: 1 }));
    }

    #[test]
    fn orthonormal_to_tolerance() {
        let vs = vec![vec![1.0, 2.0, 3.0, 4.0], vec![-1.0, 0.5, 2.0, 0.0], vec![0.3, 0.3, -7.0, 1.0]];
        let m = gram_schmidt(&vs).unwrap();
        let g = m.transpose().matmul(&m).unwrap();
        assert!(g.max_abs_diff(&Matrix::identity(3)) < 1e-12);
    }

    #[test]
    fn exact_variants() {
        let vs = vec![vec![q(1, 1), q(0, 1), q(0, 1)], vec![q(1, 1), q(1, 1), q(0, 1)]];
        let m = gram_schmidt_exact(&vs).unwrap();
        assert_eq!(m.column(1), vec![q(0, 1), q(1, 1), q(0, 1)]);
        let irr = vec![vec![q(1, 1), q(1, 1), q(0, 1)]];
        assert_eq!(gram_schmidt_exact(&irr), Err(Error::IrrationalNorm { index: 0 }));
        let orth = orthogonalize_exact(&irr).unwrap();
        assert_eq!(orth[0], irr[0]);
        let dep = vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]];
        assert_eq!(orthogonalize_exact(&dep), Err(Error::RankDeficient { index: 1 }));
    }
}
