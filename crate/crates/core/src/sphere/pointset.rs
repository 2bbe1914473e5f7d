use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{norm2, Mode, Rational, Scalar};

/// Unit-norm slack for float point sets.
pub const UNIT_TOL: f64 = 1e-12;

/// Multiset of unit vectors on `S^{d-1}` with positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPointSet<T> {
    d: usize,
    points: Vec<Vec<T>>,
    weights: Vec<T>,
}

impl<T: Scalar> WeightedPointSet<T> {
    pub fn new(d: usize, points: Vec<Vec<T>>, weights: Vec<T>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty("point set"));
        }
        if points.len() != weights.len() {
            return Err(Error::DimensionMismatch(format!("{} points but {} weights", points.len(), weights.len())));
        }
        for (index, p) in points.iter().enumerate() {
            if p.len() != d {
                return Err(Error::DimensionMismatch(format!("point {index} has length {}", p.len())));
            }
            let n2 = norm2(p);
            if !(n2.clone() - T::one()).is_negligible(UNIT_TOL) {
                return Err(Error::NonUnitPoint { index, norm2: format!("{n2:?}") });
            }
        }
        if let Some(i) = weights.iter().position(|w| w.to_f64() <= 0.0 || w.is_zero_exact()) {
            return Err(Error::InvalidArgument(format!("weight {i} is not positive")));
        }
        Ok(WeightedPointSet { d, points, weights })
    }

    pub fn equal_weight(d: usize, points: Vec<Vec<T>>) -> Result<Self> {
        let weights = vec![T::one(); points.len()];
        Self::new(d, points, weights)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn total_weight(&self) -> T {
        self.weights.iter().fold(T::zero(), |acc, w| acc + w.clone())
    }

    /// All weights equal (exactly, or to a relative 1e-12 in float mode).
    pub fn has_equal_weights(&self) -> bool {
        let w0 = self.weights[0].to_f64();
        match T::MODE {
            Mode::Exact => self.weights.iter().all(|w| *w == self.weights[0]),
            Mode::Float => self.weights.iter().all(|w| (w.to_f64() - w0).abs() <= 1e-12 * w0.abs()),
        }
    }

    /// Concatenate two multisets in the same dimension.
    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch("point sets in different dimensions".into()));
        }
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        let mut weights = self.weights.clone();
        weights.extend(other.weights.iter().cloned());
        Ok(WeightedPointSet { d: self.d, points, weights })
    }

    pub fn scale_weights(&self, s: &T) -> Self {
        WeightedPointSet {
            d: self.d,
            points: self.points.clone(),
            weights: self.weights.iter().map(|w| w.clone() * s.clone()).collect(),
        }
    }

    /// Apply a linear map given row-major as `d × d`.
    pub fn transform(&self, rows: &[Vec<T>]) -> Result<Self> {
        let points = self.points.iter().map(|p| rows.iter().map(|r| crate::numerics::dot(r, p)).collect()).collect();
        Self::new(self.d, points, self.weights.clone())
    }

    pub fn to_f64(&self) -> WeightedPointSet<f64> {
        WeightedPointSet {
            d: self.d,
            points: self.points.iter().map(|p| p.iter().map(Scalar::to_f64).collect()).collect(),
            weights: self.weights.iter().map(Scalar::to_f64).collect(),
        }
    }
}

/// JSON form of a point set in either arithmetic mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum PointSetJson {
    Exact { d: usize, points: Vec<Vec<Rational>>, weights: Vec<Rational> },
    Float { d: usize, points: Vec<Vec<f64>>, weights: Vec<f64> },
}

/// A point set of either mode, as read from or written to JSON.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyPointSet {
    Exact(WeightedPointSet<Rational>),
    Float(WeightedPointSet<f64>),
}

impl AnyPointSet {
    pub fn to_json(&self) -> PointSetJson {
        match self {
            AnyPointSet::Exact(s) => {
                PointSetJson::Exact { d: s.d, points: s.points.clone(), weights: s.weights.clone() }
            }
            AnyPointSet::Float(s) => {
                PointSetJson::Float { d: s.d, points: s.points.clone(), weights: s.weights.clone() }
            }
        }
    }

    pub fn from_json(json: PointSetJson) -> Result<Self> {
        Ok(match json {
            PointSetJson::Exact { d, points, weights } => {
                AnyPointSet::Exact(WeightedPointSet::new(d, points, weights)?)
            }
            PointSetJson::Float { d, points, weights } => {
                AnyPointSet::Float(WeightedPointSet::new(d, points, weights)?)
            }
        })
    }

    pub fn mode(&self) -> Mode {
        match self {
            AnyPointSet::Exact(_) => Mode::Exact,
            AnyPointSet::Float(_) => Mode::Float,
        }
    }
}

impl From<WeightedPointSet<f64>> for AnyPointSet {
    fn from(s: WeightedPointSet<f64>) -> Self {
        AnyPointSet::Float(s)
    }
}

impl From<WeightedPointSet<Rational>> for AnyPointSet {
    fn from(s: WeightedPointSet<Rational>) -> Self {
        AnyPointSet::Exact(s)
    }
}
