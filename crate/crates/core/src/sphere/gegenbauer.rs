use crate::numerics::Scalar;

/// Gegenbauer polynomials `Q_ℓ^{(d)}` normalized so that `Q_ℓ(1) = 1`.
///
/// Evaluated by the three-term recurrence
/// `(ℓ+d-2) Q_{ℓ+1}(x) = (2ℓ+d-2) x Q_ℓ(x) - ℓ Q_{ℓ-1}(x)` starting from
/// `Q_0 = 1`, `Q_1 = x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GegenbauerEvaluator {
    dim: usize,
    max_degree: u32,
}

impl GegenbauerEvaluator {
    pub fn new(dim: usize, max_degree: u32) -> Self {
        assert!(dim >= 2, "Gegenbauer polynomials need d >= 2");
        GegenbauerEvaluator { dim, max_degree }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// `[Q_0(x), ..., Q_t(x)]`.
    pub fn eval_all<T: Scalar>(&self, x: &T) -> Vec<T> {
        let t = self.max_degree as usize;
        let mut out = Vec::with_capacity(t + 1);
        out.push(T::one());
        if t == 0 {
            return out;
        }
        out.push(x.clone());
        let d = self.dim as i64;
        for l in 1..t {
            let li = l as i64;
            let next = (T::from_i64(2 * li + d - 2) * x.clone() * out[l].clone()
                - T::from_i64(li) * out[l - 1].clone())
                / T::from_i64(li + d - 2);
            out.push(next);
        }
        out
    }

    pub fn eval<T: Scalar>(&self, degree: u32, x: &T) -> T {
        assert!(degree <= self.max_degree);
        self.eval_all(x).swap_remove(degree as usize)
    }
}

/// `Q_ℓ^{(d)}(x)`.
pub fn gegenbauer_eval<T: Scalar>(d: usize, degree: u32, x: &T) -> T {
    GegenbauerEvaluator::new(d, degree).eval(degree, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{q, Rational};

    #[test]
    fn normalization_and_low_degrees() {
        for d in 2..10 {
            for l in 0..12 {
                assert_eq!(gegenbauer_eval(d, l, &Rational::one()), Rational::one());
            }
            assert_eq!(gegenbauer_eval(d, 1, &q(2, 7)), q(2, 7));
        }
    }

    #[test]
    fn degree_two_closed_form() {
        for d0 in 2..20i64 {
            let x = q(3, 5);
            let expected = (Rational::from(d0) * &x * &x - Rational::one()) / Rational::from(d0 - 1);
            assert_eq!(gegenbauer_eval(d0 as usize, 2, &x), expected);
        }
    }

    #[test]
    fn circle_case_is_chebyshev() {
        let theta = 0.7_f64;
        for l in 0..10 {
            let v = gegenbauer_eval(2, l, &theta.cos());
            assert!((v - (l as f64 * theta).cos()).abs() < 1e-13);
        }
    }

    #[test]
    fn three_dimensional_case_is_legendre() {
        // P_3(x) = (5x^3 - 3x)/2
        let x = q(1, 3);
        let expected = (q(5, 1) * x.pow(3) - q(3, 1) * &x) / q(2, 1);
        assert_eq!(gegenbauer_eval(3, 3, &x), expected);
    }
}
