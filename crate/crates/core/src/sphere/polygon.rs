use std::f64::consts::TAU;

use super::checks::check_pairwise_in_dimension;
use super::pointset::WeightedPointSet;
use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::numerics::{dot, norm2};

/// Orthonormal pair `(u, v)` spanning a plane in `R^d`.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PlaneBasis {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl PlaneBasis {
    pub fn new(u: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch("plane basis vectors differ in length".into()));
        }
        let ok = (norm2(&u) - 1.0).abs() <= 1e-12 && (norm2(&v) - 1.0).abs() <= 1e-12 && dot(&u, &v).abs() <= 1e-12;
        if !ok {
            return Err(Error::InvalidArgument("plane basis is not orthonormal".into()));
        }
        Ok(PlaneBasis { u, v })
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    /// `cos(θ) u + sin(θ) v`.
    pub fn point_at(&self, angle: f64) -> Vec<f64> {
        let (s, c) = angle.sin_cos();
        self.u.iter().zip(&self.v).map(|(a, b)| c * a + s * b).collect()
    }
}

/// Vertices `cos(2πj/n + phase) u + sin(2πj/n + phase) v`, `j = 0..n`, equal weights.
pub fn regular_polygon(plane: &PlaneBasis, n: usize, phase: f64) -> Result<WeightedPointSet<f64>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("polygon needs at least 2 vertices, got {n}")));
    }
    let points = (0..n).map(|j| plane.point_at(TAU * j as f64 / n as f64 + phase)).collect();
    WeightedPointSet::equal_weight(plane.dim(), points)
}

/// Pairwise certificate of a polygon as an `(n-1)`-design on the circle of its plane.
pub fn certify_polygon(polygon: &WeightedPointSet<f64>, strength: u32) -> Result<Certificate> {
    check_pairwise_in_dimension(polygon, strength, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(d: usize, i: usize) -> Vec<f64> {
        let mut v = vec![0.0; d];
        v[i] = 1.0;
        v
    }

    #[test]
    fn digon_and_square() {
        let plane = PlaneBasis::new(e(4, 0), e(4, 1)).unwrap();
        let two = regular_polygon(&plane, 2, 0.0).unwrap();
        assert_eq!(two.points()[0], e(4, 0));
        assert!((two.points()[1][0] + 1.0).abs() < 1e-15 && two.points()[1][1].abs() < 1e-15);
        let four = regular_polygon(&plane, 4, 0.0).unwrap();
        assert!((four.points()[1][1] - 1.0).abs() < 1e-15);
        assert!(regular_polygon(&plane, 1, 0.0).is_err());
    }

    #[test]
    fn hexagon_in_oblique_plane() {
        let s = 0.5f64.sqrt();
        let plane = PlaneBasis::new(vec![s, s, 0.0, 0.0], vec![0.0, 0.0, 0.6, 0.8]).unwrap();
        let hex = regular_polygon(&plane, 6, 0.37).unwrap();
        assert!(certify_polygon(&hex, 5).unwrap().passed());
    }

    #[test]
    fn polygon_strength_is_sharp() {
        let plane = PlaneBasis::new(e(3, 0), e(3, 2)).unwrap();
        for n in 2..=12 {
            let p = regular_polygon(&plane, n, 0.1).unwrap();
            assert!(certify_polygon(&p, n as u32 - 1).unwrap().passed(), "n = {n}");
            assert!(!certify_polygon(&p, n as u32).unwrap().passed(), "n = {n}");
        }
    }
}
