//! The explicit zonal polynomials `P_(2)`, `P_(4)`, `P_(2,2)` on `G(k, d)`.
//!
//! Three evaluation routes are provided:
//!
//! * [`zonal_p2`], [`zonal_p4`], [`zonal_p22`] evaluate the defining formulas
//!   in the squared cosines `y₁..y_k` directly (via `c₂`, `c₄`, `c₂₂`);
//! * [`k2`] holds the plane (`k = 2`) closed forms in `e₁ = y₁ + y₂`,
//!   `e₂ = y₁ y₂`;
//! * [`ZonalForm`] writes each polynomial as a linear form in
//!   `(1, p₁, p₁², p₂)` with `pᵢ` the power sums, which lets frame checks sum
//!   pair moments first and evaluate once.

use crate::error::{Error, Result};
use crate::numerics::{Rational, Scalar};

use super::angles::PowerSums;

fn check_kd(k: usize, d: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("empty angle sequence".into()));
    }
    if k >= d {
        return Err(Error::Degenerate(format!("zonal polynomials need k < d (k = {k}, d = {d})")));
    }
    Ok(())
}

fn ratio<T: Scalar>(p: i64, q: i64) -> T {
    T::from_ratio(p, q)
}

fn sum<T: Scalar>(y: &[T]) -> T {
    y.iter().fold(T::zero(), |a, x| a + x.clone())
}

fn sum_sq<T: Scalar>(y: &[T]) -> T {
    y.iter().fold(T::zero(), |a, x| a + x.clone() * x.clone())
}

fn sum_pairs<T: Scalar>(y: &[T]) -> T {
    let mut acc = T::zero();
    for i in 0..y.len() {
        for j in i + 1..y.len() {
            acc = acc + y[i].clone() * y[j].clone();
        }
    }
    acc
}

/// `P_(2) = k/(k-d) - d/(k-d) · c₂`, `c₂ = (1/k) Σ yᵢ`.
pub fn zonal_p2<T: Scalar>(y: &[T], d: usize) -> Result<T> {
    let k = y.len();
    check_kd(k, d)?;
    let (k, d) = (k as i64, d as i64);
    let c2 = sum(y) / T::from_i64(k);
    Ok(ratio::<T>(k, k - d) - ratio::<T>(d, k - d) * c2)
}

fn p4_unnormalized<T: Scalar>(y: &[T], d: i64) -> T {
    let k = y.len() as i64;
    let c2 = sum(y) / T::from_i64(k);
    let c4 = ratio::<T>(3, k * (k + 2)) * (sum_sq(y) + ratio::<T>(2, 3) * sum_pairs(y));
    T::one() - ratio::<T>(2 * (d + 2), k) * c2 + ratio::<T>((d + 2) * (d + 4), k * (k + 2)) * c4
}

/// `P_(4) = P'_(4) / P'_(4)(1,…,1)` with
/// `P'_(4) = 1 - 2(d+2)/k · c₂ + (d+2)(d+4)/(k(k+2)) · c₄`,
/// `c₄ = 3/(k(k+2)) · (Σ yᵢ² + ⅔ Σ_{i<j} yᵢ yⱼ)`.
pub fn zonal_p4<T: Scalar>(y: &[T], d: usize) -> Result<T> {
    let k = y.len();
    check_kd(k, d)?;
    let norm = p4_unnormalized(&vec![T::one(); k], d as i64);
    if norm.is_zero_exact() || norm.to_f64() == 0.0 {
        return Err(Error::Degenerate(format!("P(4) normalization vanishes for k = {k}, d = {d}")));
    }
    Ok(p4_unnormalized(y, d as i64) / norm)
}

fn p22_unnormalized<T: Scalar>(y: &[T], d: i64) -> T {
    let k = y.len() as i64;
    let c2 = sum(y) / T::from_i64(k);
    let c22 = ratio::<T>(2, k * (k - 1)) * sum_pairs(y);
    T::one() - ratio::<T>(2 * (d - 1), k) * c2 + ratio::<T>((d - 1) * (d - 2), k * (k - 1)) * c22
}

/// `P_(2,2) = P'_(2,2) / P'_(2,2)(1,…,1)` with
/// `P'_(2,2) = 1 - 2(d-1)/k · c₂ + (d-1)(d-2)/(k(k-1)) · c₂₂`,
/// `c₂₂ = 2/(k(k-1)) Σ_{i<j} yᵢ yⱼ`. Needs `k ≥ 2`; `(k, d) = (2, 3)` is degenerate.
pub fn zonal_p22<T: Scalar>(y: &[T], d: usize) -> Result<T> {
    let k = y.len();
    check_kd(k, d)?;
    if k < 2 {
        return Err(Error::Unsupported("P(2,2) needs k >= 2".into()));
    }
    let norm = p22_unnormalized(&vec![T::one(); k], d as i64);
    if norm.is_zero_exact() || norm.to_f64() == 0.0 {
        return Err(Error::Degenerate(format!("P(2,2) normalization vanishes for k = {k}, d = {d}")));
    }
    Ok(p22_unnormalized(y, d as i64) / norm)
}

/// Plane closed forms in `(e₁, e₂)`.
pub mod k2 {
    use super::*;

    fn check(d: usize, min: usize) -> Result<()> {
        if d < min {
            return Err(Error::Degenerate(format!("closed form needs d >= {min}, got {d}")));
        }
        Ok(())
    }

    /// `(4 - d e₁) / (2(2 - d))`.
    pub fn p2<T: Scalar>(e1: &T, d: usize) -> Result<T> {
        check(d, 3)?;
        let d = d as i64;
        Ok((T::from_i64(4) - T::from_i64(d) * e1.clone()) / T::from_i64(2 * (2 - d)))
    }

    /// `1 - (d+2)/2 e₁ + 3(d+2)(d+4)/64 e₁² - (d+2)(d+4)/16 e₂`.
    pub fn p4_unnormalized<T: Scalar>(e1: &T, e2: &T, d: usize) -> T {
        let d = d as i64;
        T::one() - ratio::<T>(d + 2, 2) * e1.clone() + ratio::<T>(3 * (d + 2) * (d + 4), 64) * e1.clone() * e1.clone()
            - ratio::<T>((d + 2) * (d + 4), 16) * e2.clone()
    }

    /// `8/(d(d-2)) · P'_(4)(e₁, e₂)`.
    pub fn p4<T: Scalar>(e1: &T, e2: &T, d: usize) -> Result<T> {
        check(d, 3)?;
        let di = d as i64;
        Ok(ratio::<T>(8, di * (di - 2)) * p4_unnormalized(e1, e2, d))
    }

    /// `1 - (d-1)/2 e₁ + (d-2)(d-1)/2 e₂`.
    pub fn p22_unnormalized<T: Scalar>(e1: &T, e2: &T, d: usize) -> T {
        let d = d as i64;
        T::one() - ratio::<T>(d - 1, 2) * e1.clone() + ratio::<T>((d - 2) * (d - 1), 2) * e2.clone()
    }

    /// `2/((d-2)(d-3)) · P'_(2,2)(e₁, e₂)`; rejects `d ≤ 3`.
    pub fn p22<T: Scalar>(e1: &T, e2: &T, d: usize) -> Result<T> {
        check(d, 4)?;
        let di = d as i64;
        Ok(ratio::<T>(2, (di - 2) * (di - 3)) * p22_unnormalized(e1, e2, d))
    }
}

/// Which explicit zonal polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Zonal {
    P2,
    P4,
    P22,
}

impl Zonal {
    pub fn label(self) -> &'static str {
        match self {
            Zonal::P2 => "P(2)",
            Zonal::P4 => "P(4)",
            Zonal::P22 => "P(2,2)",
        }
    }

    /// Total degree of the partition `2μ`.
    pub fn degree(self) -> u32 {
        match self {
            Zonal::P2 => 2,
            Zonal::P4 | Zonal::P22 => 4,
        }
    }
}

/// A zonal polynomial as `a + b p₁ + c p₁² + e p₂` in the power sums.
#[derive(Debug, Clone, PartialEq)]
pub struct ZonalForm {
    pub constant: Rational,
    pub p1: Rational,
    pub p1_sq: Rational,
    pub p2: Rational,
}

impl ZonalForm {
    pub fn new(which: Zonal, k: usize, d: usize) -> Result<Self> {
        check_kd(k, d)?;
        let (ki, di) = (k as i64, d as i64);
        let r = |p: i64, q: i64| Rational::new(p, q);
        let raw = match which {
            Zonal::P2 => ZonalForm {
                constant: r(ki, ki - di),
                p1: -r(di, ki * (ki - di)),
                p1_sq: Rational::zero(),
                p2: Rational::zero(),
            },
            Zonal::P4 => {
                // c₄ = (p₁² + 2 p₂) / (k(k+2))
                let outer = r((di + 2) * (di + 4), ki * ki * (ki + 2) * (ki + 2));
                ZonalForm {
                    constant: Rational::one(),
                    p1: -r(2 * (di + 2), ki * ki),
                    p1_sq: outer.clone(),
                    p2: outer * Rational::from(2),
                }
            }
            Zonal::P22 => {
                if k < 2 {
                    return Err(Error::Unsupported("P(2,2) needs k >= 2".into()));
                }
                // c₂₂ = (p₁² - p₂) / (k(k-1))
                let outer = r((di - 1) * (di - 2), ki * ki * (ki - 1) * (ki - 1));
                ZonalForm { constant: Rational::one(), p1: -r(2 * (di - 1), ki * ki), p1_sq: outer.clone(), p2: -outer }
            }
        };
        let kr = Rational::from(ki);
        let at_identity = raw.eval(&PowerSums { p1: kr.clone(), p2: kr });
        if at_identity.is_zero() {
            return Err(Error::Degenerate(format!("{} normalization vanishes for k = {k}, d = {d}", which.label())));
        }
        let s = at_identity.recip();
        Ok(ZonalForm { constant: &raw.constant * &s, p1: &raw.p1 * &s, p1_sq: &raw.p1_sq * &s, p2: &raw.p2 * &s })
    }

    pub fn eval<T: Scalar>(&self, sums: &PowerSums<T>) -> T {
        self.eval_aggregate(&T::one(), &sums.p1, &(sums.p1.clone() * sums.p1.clone()), &sums.p2)
    }

    /// Evaluate on aggregated moments `(Σ w, Σ w p₁, Σ w p₁², Σ w p₂)`.
    pub fn eval_aggregate<T: Scalar>(&self, s0: &T, s1: &T, s11: &T, s2: &T) -> T {
        T::from_rational(&self.constant) * s0.clone()
            + T::from_rational(&self.p1) * s1.clone()
            + T::from_rational(&self.p1_sq) * s11.clone()
            + T::from_rational(&self.p2) * s2.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::q;

    #[test]
    fn normalization() {
        for d in 4..9 {
            for k in 2..d.min(5) {
                let ones = vec![Rational::one(); k];
                assert_eq!(zonal_p2(&ones, d).unwrap(), Rational::one());
                assert_eq!(zonal_p4(&ones, d).unwrap(), Rational::one());
                if d - k >= 2 {
                    assert_eq!(zonal_p22(&ones, d).unwrap(), Rational::one());
                } else {
                    // G(d-1, d) is G(1, d) and carries no (2,2) component
                    assert!(zonal_p22(&ones, d).is_err());
                }
            }
        }
        assert_eq!(k2::p4(&q(2, 1), &q(1, 1), 7).unwrap(), Rational::one());
        assert_eq!(k2::p22(&q(2, 1), &q(1, 1), 7).unwrap(), Rational::one());
    }

    #[test]
    fn plane_examples_in_r4() {
        assert_eq!(zonal_p2(&[q(1, 1), q(0, 1)], 4).unwrap(), q(0, 1));
        assert_eq!(zonal_p2(&[q(0, 1), q(0, 1)], 4).unwrap(), q(-1, 1));
        assert_eq!(zonal_p4(&[q(0, 1), q(0, 1)], 4).unwrap(), q(1, 1));
        assert_eq!(k2::p2(&q(1, 1), 4).unwrap(), q(0, 1));
    }

    #[test]
    fn line_case_matches_gegenbauer() {
        use crate::sphere::gegenbauer_eval;
        for d in 2..8 {
            let x = q(2, 7);
            let y = [&x * &x];
            assert_eq!(zonal_p2(&y, d).unwrap(), gegenbauer_eval(d, 2, &x));
            assert_eq!(zonal_p4(&y, d).unwrap(), gegenbauer_eval(d, 4, &x));
        }
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(zonal_p2(&[q(1, 1), q(1, 1)], 2), Err(Error::Degenerate(_))));
        assert!(matches!(zonal_p22(&[q(1, 2), q(1, 3)], 3), Err(Error::Degenerate(_))));
        assert!(matches!(zonal_p22(&[q(1, 2)], 3), Err(Error::Unsupported(_))));
        assert!(k2::p22(&q(1, 2), &q(0, 1), 3).is_err());
        assert!(ZonalForm::new(Zonal::P22, 2, 3).is_err());
        assert!(ZonalForm::new(Zonal::P22, 3, 4).is_err());
    }

    #[test]
    fn linear_form_matches_literal_route() {
        let ys = [[q(1, 2), q(1, 3), q(1, 7)], [q(0, 1), q(5, 6), q(1, 1)]];
        for y in &ys {
            for d in 5..10 {
                let s = PowerSums::from_cosines(y);
                assert_eq!(ZonalForm::new(Zonal::P2, 3, d).unwrap().eval(&s), zonal_p2(y, d).unwrap());
                assert_eq!(ZonalForm::new(Zonal::P4, 3, d).unwrap().eval(&s), zonal_p4(y, d).unwrap());
                assert_eq!(ZonalForm::new(Zonal::P22, 3, d).unwrap().eval(&s), zonal_p22(y, d).unwrap());
            }
        }
    }
}
