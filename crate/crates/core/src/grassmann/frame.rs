//! Weighted subspace families and the zonal double-sum checks.

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::angles::{exact_power_sums, float_power_sums, PowerSums};
use super::subspace::{IntegerSpan, Subspace, SubspaceJson};
use super::zonal::{Zonal, ZonalForm};
use crate::certificate::{Certificate, Residual, Value};
use crate::error::{Error, Result};
use crate::numerics::{tree_sum, Mode, Rational, Scalar};

pub const TFF_CRITERION: &str = "tight-fusion-frame";
pub const DESIGN4_CRITERION: &str = "grassmann-4-design";

/// Subspaces of a common `G(k, d)` with positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameConfig {
    subspaces: Vec<Subspace>,
    weights: Vec<Rational>,
}

impl FrameConfig {
    pub fn new(subspaces: Vec<Subspace>, weights: Vec<Rational>) -> Result<Self> {
        let first = subspaces.first().ok_or(Error::Empty("frame"))?;
        let (d, k) = (first.ambient_dim(), first.dim());
        if subspaces.iter().any(|s| s.ambient_dim() != d || s.dim() != k) {
            return Err(Error::DimensionMismatch("frame subspaces lie in different Grassmannians".into()));
        }
        if weights.len() != subspaces.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} subspaces but {} weights",
                subspaces.len(),
                weights.len()
            )));
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::InvalidArgument("frame weights must be positive".into()));
        }
        Ok(FrameConfig { subspaces, weights })
    }

    pub fn equal_weight(subspaces: Vec<Subspace>) -> Result<Self> {
        let n = subspaces.len();
        Self::new(subspaces, vec![Rational::one(); n])
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.subspaces[0].ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.subspaces[0].dim()
    }

    pub fn total_weight(&self) -> Rational {
        self.weights.iter().sum()
    }

    pub fn has_equal_weights(&self) -> bool {
        self.weights.iter().all(|w| *w == self.weights[0])
    }

    /// Exact when every subspace carries an exact projector.
    pub fn mode(&self) -> Mode {
        if self.subspaces.iter().all(Subspace::is_exact) {
            Mode::Exact
        } else {
            Mode::Float
        }
    }

    pub fn scale_weights(&self, s: &Rational) -> Self {
        FrameConfig { subspaces: self.subspaces.clone(), weights: self.weights.iter().map(|w| w * s).collect() }
    }

    pub fn union(&self, other: &FrameConfig) -> Result<Self> {
        let mut subspaces = self.subspaces.clone();
        subspaces.extend(other.subspaces.iter().cloned());
        let mut weights = self.weights.clone();
        weights.extend(other.weights.iter().cloned());
        FrameConfig::new(subspaces, weights)
    }
}

/// JSON form: `{"subspaces": [...], "weights": ["p/q", ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameJson {
    pub subspaces: Vec<SubspaceJson>,
    pub weights: Vec<Rational>,
}

impl From<&FrameConfig> for FrameJson {
    fn from(f: &FrameConfig) -> Self {
        FrameJson { subspaces: f.subspaces.iter().map(SubspaceJson::from).collect(), weights: f.weights.clone() }
    }
}

impl TryFrom<FrameJson> for FrameConfig {
    type Error = Error;

    fn try_from(j: FrameJson) -> Result<Self> {
        let subspaces = j.subspaces.into_iter().map(Subspace::try_from).collect::<Result<Vec<_>>>()?;
        FrameConfig::new(subspaces, j.weights)
    }
}

/// Weighted pair moments `Σ_{V,W} ω_V ω_W (1, p₁, p₁², p₂)` over all ordered
/// pairs, diagonal included.
#[derive(Debug, Clone, PartialEq)]
pub struct PairMoments<T> {
    pub s0: T,
    pub s1: T,
    pub s11: T,
    pub s2: T,
}

impl<T: Scalar> PairMoments<T> {
    fn zero() -> Self {
        PairMoments { s0: T::zero(), s1: T::zero(), s11: T::zero(), s2: T::zero() }
    }

    fn accumulate(&mut self, w: &T, sums: &PowerSums<T>) {
        self.s0 = self.s0.clone() + w.clone();
        self.s1 = self.s1.clone() + w.clone() * sums.p1.clone();
        self.s11 = self.s11.clone() + w.clone() * sums.p1.clone() * sums.p1.clone();
        self.s2 = self.s2.clone() + w.clone() * sums.p2.clone();
    }

    fn scaled(self, s: &T) -> Self {
        PairMoments {
            s0: self.s0 * s.clone(),
            s1: self.s1 * s.clone(),
            s11: self.s11 * s.clone(),
            s2: self.s2 * s.clone(),
        }
    }

    /// `Σ ω_V ω_W P(V, W)` for a zonal polynomial.
    pub fn zonal_sum(&self, form: &ZonalForm) -> T {
        form.eval_aggregate(&self.s0, &self.s1, &self.s11, &self.s2)
    }
}

fn tree_moments<T: Scalar>(parts: Vec<PairMoments<T>>) -> PairMoments<T> {
    let pick = |f: fn(&PairMoments<T>) -> &T| tree_sum(&parts.iter().map(|p| f(p).clone()).collect::<Vec<_>>());
    PairMoments { s0: pick(|p| &p.s0), s1: pick(|p| &p.s1), s11: pick(|p| &p.s11), s2: pick(|p| &p.s2) }
}

fn moments_with<T: Scalar>(
    frame: &FrameConfig,
    pair: impl Fn(&Subspace, &Subspace) -> Result<PowerSums<T>> + Sync,
) -> Result<PairMoments<T>> {
    let subs = &frame.subspaces;
    let weights: Vec<T> = frame.weights.iter().map(T::from_rational).collect();
    let equal = frame.has_equal_weights();
    let k = T::from_i64(frame.dim() as i64);
    let n = subs.len();
    let rows: Vec<PairMoments<T>> = (0..n)
        .into_par_iter()
        .map(|i| -> Result<PairMoments<T>> {
            let mut row = PairMoments::zero();
            for j in i + 1..n {
                let sums = pair(&subs[i], &subs[j])?;
                let w = if equal { T::one() } else { weights[j].clone() };
                row.accumulate(&w, &sums);
            }
            // off-diagonal pairs count twice; the diagonal has p₁ = p₂ = k
            let mut row = row.scaled(&T::from_i64(2));
            let diag_w = if equal { T::one() } else { weights[i].clone() };
            row.accumulate(&diag_w, &PowerSums { p1: k.clone(), p2: k.clone() });
            Ok(if equal { row } else { row.scaled(&weights[i]) })
        })
        .collect::<Result<_>>()?;
    let total = tree_moments(rows);
    Ok(if equal {
        let w0 = weights[0].clone();
        total.scaled(&(w0.clone() * w0))
    } else {
        total
    })
}

/// Exact pair moments; fails if some subspace lacks an exact projector.
pub fn exact_moments(frame: &FrameConfig) -> Result<PairMoments<Rational>> {
    if let Some(m) = integer_moments(frame) {
        return Ok(m);
    }
    moments_with(frame, |v, w| {
        exact_power_sums(v, w)?.ok_or_else(|| Error::InvalidArgument("subspace without exact projector".into()))
    })
}

/// Scaled power sums `(p₁ L², p₂ L⁴)` for integer spans, where `L` is a
/// common multiple of every squared norm. `None` on overflow.
fn scaled_span_sums(a: &IntegerSpan, b: &IntegerSpan, l: i128) -> Option<(i128, i128)> {
    let gram: Vec<Vec<i128>> = a
        .vectors
        .iter()
        .map(|u| b.vectors.iter().map(|w| u.iter().zip(w).map(|(&x, &y)| x as i128 * y as i128).sum()).collect())
        .collect();
    let ca: Vec<i128> = a.norms2.iter().map(|&n| l / n as i128).collect();
    let cb: Vec<i128> = b.norms2.iter().map(|&n| l / n as i128).collect();
    let mut p1 = 0i128;
    for (row, &ci) in gram.iter().zip(&ca) {
        for (&g, &cj) in row.iter().zip(&cb) {
            p1 = p1.checked_add(g.checked_mul(g)?.checked_mul(ci)?.checked_mul(cj)?)?;
        }
    }
    let mut p2 = 0i128;
    for (i, ri) in gram.iter().enumerate() {
        for (m, rm) in gram.iter().enumerate() {
            let mut h = 0i128;
            for ((&x, &y), &cj) in ri.iter().zip(rm).zip(&cb) {
                h = h.checked_add(x.checked_mul(y)?.checked_mul(cj)?)?;
            }
            p2 = p2.checked_add(h.checked_mul(h)?.checked_mul(ca[i])?.checked_mul(ca[m])?)?;
        }
    }
    Some((p1, p2))
}

/// Equal-weight moments of a frame of integer spans, accumulated in `i128`
/// over the common denominator `L⁴`. `None` when not applicable or on
/// overflow, in which case the caller falls back to rational arithmetic.
fn integer_moments(frame: &FrameConfig) -> Option<PairMoments<Rational>> {
    if !frame.has_equal_weights() {
        return None;
    }
    let spans: Vec<&IntegerSpan> = frame.subspaces.iter().map(Subspace::integer_span).collect::<Option<_>>()?;
    let l = spans
        .iter()
        .flat_map(|s| s.norms2.iter())
        .try_fold(1i128, |acc, &n| acc.checked_mul(n as i128 / acc.gcd(&(n as i128))))?;
    let n = spans.len();
    let rows: Vec<(i128, i128, i128)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let (mut s1, mut s11, mut s2) = (0i128, 0i128, 0i128);
            for j in i + 1..n {
                let (p1, p2) = scaled_span_sums(spans[i], spans[j], l)?;
                s1 = s1.checked_add(p1)?;
                s11 = s11.checked_add(p1.checked_mul(p1)?)?;
                s2 = s2.checked_add(p2)?;
            }
            Some((s1, s11, s2))
        })
        .collect::<Option<_>>()?;
    let (mut s1, mut s11, mut s2) = (0i128, 0i128, 0i128);
    for (a, b, c) in rows {
        s1 = s1.checked_add(a)?;
        s11 = s11.checked_add(b)?;
        s2 = s2.checked_add(c)?;
    }
    let l2 = Rational::from(BigInt::from(l)).pow(2);
    let l4 = l2.pow(2);
    let two = Rational::from(2);
    let k = Rational::from(frame.dim());
    let nn = Rational::from(n);
    let off = PairMoments {
        s0: Rational::from(n * (n - 1)),
        s1: &two * Rational::from(BigInt::from(s1)) / &l2,
        s11: &two * Rational::from(BigInt::from(s11)) / &l4,
        s2: &two * Rational::from(BigInt::from(s2)) / &l4,
    };
    let w0 = &frame.weights[0];
    let w2 = w0 * w0;
    Some(PairMoments {
        s0: (off.s0 + &nn) * &w2,
        s1: (off.s1 + &nn * &k) * &w2,
        s11: (off.s11 + &nn * &k * &k) * &w2,
        s2: (off.s2 + &nn * &k) * &w2,
    })
}

/// Exact moments through the generic rational route, bypassing the integer
/// fast path. Used to cross-check it.
pub fn exact_moments_generic(frame: &FrameConfig) -> Result<PairMoments<Rational>> {
    moments_with(frame, |v, w| {
        exact_power_sums(v, w)?.ok_or_else(|| Error::InvalidArgument("subspace without exact projector".into()))
    })
}

pub fn float_moments(frame: &FrameConfig) -> Result<PairMoments<f64>> {
    moments_with(frame, float_power_sums)
}

fn zonal_certificate<T: Scalar>(
    criterion: &str,
    moments: &PairMoments<T>,
    zonals: &[Zonal],
    k: usize,
    d: usize,
    float_scale: f64,
) -> Result<Certificate> {
    let residuals = zonals
        .iter()
        .map(|&z| {
            let form = ZonalForm::new(z, k, d)?;
            Ok(Residual::labelled(z.degree(), z.label(), Value::from_scalar(&moments.zonal_sum(&form))))
        })
        .collect::<Result<Vec<_>>>()?;
    let tolerance = match T::MODE {
        Mode::Exact => 0.0,
        Mode::Float => 1e-9 * float_scale,
    };
    Ok(Certificate::from_residuals(criterion, T::MODE, tolerance, residuals))
}

/// Tight `t`-fusion frame test: `Σ ω_V ω_W P_(2ℓ)(V, W) = 0` for `ℓ = 1..=t`.
///
/// Supported for `k ∈ {1, 2}` and `t ∈ {1, 2}`. Exact when every subspace
/// has an exact projector; otherwise float with tolerance `1e-9 · Ω²`.
pub fn check_tff(frame: &FrameConfig, t: u32) -> Result<Certificate> {
    let (k, d) = (frame.dim(), frame.ambient_dim());
    if !(1..=2).contains(&k) || !(1..=2).contains(&t) || k >= d {
        return Err(Error::Unsupported(format!("tight fusion frame check for k = {k}, t = {t}, d = {d}")));
    }
    let zonals: &[Zonal] = if t == 1 { &[Zonal::P2] } else { &[Zonal::P2, Zonal::P4] };
    let omega = frame.total_weight().to_f64();
    match frame.mode() {
        Mode::Exact => zonal_certificate(TFF_CRITERION, &exact_moments(frame)?, zonals, k, d, omega * omega),
        Mode::Float => zonal_certificate(TFF_CRITERION, &float_moments(frame)?, zonals, k, d, omega * omega),
    }
}

/// Grassmann 4-design test on `G(2, d)`: every explicit zonal double sum over
/// the (unweighted) set vanishes.
pub fn check_grassmann_design_4(subspaces: &[Subspace]) -> Result<Certificate> {
    let frame = FrameConfig::equal_weight(subspaces.to_vec())?;
    let (k, d) = (frame.dim(), frame.ambient_dim());
    if k != 2 || d < 4 {
        return Err(Error::Unsupported(format!("Grassmann 4-design check for k = {k}, d = {d}")));
    }
    let n = frame.len() as f64;
    let zonals = [Zonal::P2, Zonal::P4, Zonal::P22];
    match frame.mode() {
        Mode::Exact => zonal_certificate(DESIGN4_CRITERION, &exact_moments(&frame)?, &zonals, k, d, n * n),
        Mode::Float => zonal_certificate(DESIGN4_CRITERION, &float_moments(&frame)?, &zonals, k, d, n * n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::subspace::coordinate_subspace;

    #[test]
    fn complementary_pair_is_tff1() {
        let v = coordinate_subspace(4, &[0, 1]);
        let w = v.orthogonal_complement().unwrap();
        let f = FrameConfig::equal_weight(vec![v, w]).unwrap();
        let c = check_tff(&f, 1).unwrap();
        assert!(c.passed());
        assert_eq!(c.mode, Mode::Exact);
    }

    #[test]
    fn singleton_is_not_a_design() {
        let c = check_grassmann_design_4(&[coordinate_subspace(5, &[0, 1])]).unwrap();
        assert!(!c.passed());
        for r in &c.residuals {
            assert_eq!(r.value, Value::Exact(Rational::one()));
        }
    }

    #[test]
    fn float_and_exact_routes_agree() {
        let subs: Vec<Subspace> =
            [[0, 1], [1, 2], [0, 3], [2, 4]].iter().map(|ix| coordinate_subspace(5, ix)).collect();
        let weights = vec![Rational::new(1, 2), Rational::one(), Rational::new(3, 1), Rational::new(2, 3)];
        let f = FrameConfig::new(subs, weights).unwrap();
        let e = exact_moments(&f).unwrap();
        let x = float_moments(&f).unwrap();
        for (a, b) in [(&e.s0, x.s0), (&e.s1, x.s1), (&e.s11, x.s11), (&e.s2, x.s2)] {
            assert!((a.to_f64() - b).abs() < 1e-12);
        }
    }

    #[test]
    fn integer_fast_path_matches_generic_route() {
        use crate::numerics::q;
        let spans = [
            vec![vec![1, 1, 0, 0, 0], vec![0, 0, 1, -1, 1]],
            vec![vec![1, 0, 1, 0, 0], vec![0, 2, 0, 1, -1]],
            vec![vec![0, 0, 0, 1, 1], vec![3, 1, 0, 0, 0]],
        ];
        let subs: Vec<Subspace> =
            spans.iter().map(|v| Subspace::from_integer_span(IntegerSpan::new(v.clone()).unwrap()).unwrap()).collect();
        let f = FrameConfig::new(subs, vec![q(2, 3); 3]).unwrap();
        assert_eq!(integer_moments(&f).unwrap(), exact_moments_generic(&f).unwrap());
    }

    #[test]
    fn unsupported_shapes() {
        let f = FrameConfig::equal_weight(vec![coordinate_subspace(5, &[0, 1, 2])]).unwrap();
        assert!(matches!(check_tff(&f, 1), Err(Error::Unsupported(_))));
        let g = FrameConfig::equal_weight(vec![coordinate_subspace(5, &[0, 1])]).unwrap();
        assert!(matches!(check_tff(&g, 3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn frame_validation() {
        assert!(FrameConfig::equal_weight(vec![]).is_err());
        let mixed = vec![coordinate_subspace(4, &[0, 1]), coordinate_subspace(4, &[0])];
        assert!(FrameConfig::equal_weight(mixed).is_err());
        let v = vec![coordinate_subspace(4, &[0, 1])];
        assert!(FrameConfig::new(v, vec![Rational::zero()]).is_err());
    }
}
