#![allow(dead_code)]

use fusion_core::grassmann::Subspace;
use fusion_core::numerics::{binom, pochhammer, Rational};
use fusion_core::orbits::{enumerate_orbit, OrbitParams};
use fusion_core::FrameConfig;
use num_bigint::BigInt;
use rand::Rng;

/// Rational in `[0, 1]` with a denominator below 1000.
pub fn unit_rational<R: Rng>(rng: &mut R) -> Rational {
    let den: i64 = rng.gen_range(1..1000);
    Rational::new(rng.gen_range(0..=den), den)
}

/// Rational in `[-1, 1]`.
pub fn signed_rational<R: Rng>(rng: &mut R) -> Rational {
    let den: i64 = rng.gen_range(1..1000);
    Rational::new(rng.gen_range(-den..=den), den)
}

pub fn random_plane<R: Rng>(rng: &mut R, d: usize) -> Subspace {
    let mut v = || (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<f64>>();
    let (a, b) = (v(), v());
    Subspace::from_float_vectors(&[a, b]).expect("random vectors are independent")
}

pub fn orbit_frame(d: usize, a: usize, b: usize) -> FrameConfig {
    let p = OrbitParams::new(d, a, b).unwrap();
    FrameConfig::equal_weight(enumerate_orbit(p).unwrap()).unwrap()
}

fn factorial(n: u32) -> Rational {
    Rational::from(BigInt::from((1..=n as u64).product::<u64>()))
}

/// `C_ℓ^{(λ)}(x) / C_ℓ^{(λ)}(1)` with `λ = (d-2)/2`, from the explicit sum
/// `C_ℓ^{(λ)}(x) = Σ_m (-1)^m (λ)_{ℓ-m} / (m! (ℓ-2m)!) (2x)^{ℓ-2m}`. Needs `d ≥ 3`.
pub fn gegenbauer_explicit(d: usize, l: u32, x: &Rational) -> Rational {
    let lambda = Rational::new(d as i64 - 2, 2);
    let c = |x: &Rational| -> Rational {
        (0..=l / 2)
            .map(|m| {
                let sign = if m % 2 == 0 { Rational::one() } else { -Rational::one() };
                let two_x = x * &Rational::from(2);
                sign * pochhammer(&lambda, l - m) / (factorial(m) * factorial(l - 2 * m)) * two_x.pow(l - 2 * m)
            })
            .sum()
    };
    c(x) / c(&Rational::one())
}

/// `binom(d+1, 2) - 1`.
pub fn chs_dim(d: usize) -> Rational {
    Rational::from(binom(d as i64 + 1, 2)) - Rational::one()
}
