//! Tags `(A, B, ε, δ)` and enumeration of orbits by canonical tags.
//!
//! Indices are 0-based. A tag stands for the plane spanned by
//! `ũ = Σ_{i∈A} εᵢ eᵢ` and `ṽ = Σ_{j∈B} δⱼ eⱼ`. Flipping all of `ε`, all of
//! `δ`, or (when `a = b`) swapping the roles of `(A, ε)` and `(B, δ)` leaves
//! the plane unchanged. The canonical representative has `ε = +` at `min A`,
//! `δ = +` at `min B`, and `min A < min B` when `a = b`.

use std::collections::HashMap;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::params::{orbit_size, OrbitParams};
use crate::error::{Error, Result};
use crate::grassmann::{IntegerSpan, Subspace};
use crate::numerics::{Matrix, Rational};

/// Default bound on the number of subspaces [`enumerate_orbit`] will build.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitTag {
    pub d: usize,
    #[serde(rename = "A")]
    pub a_set: Vec<usize>,
    #[serde(rename = "B")]
    pub b_set: Vec<usize>,
    #[serde(rename = "eps")]
    pub eps: Vec<i8>,
    #[serde(rename = "delta")]
    pub delta: Vec<i8>,
}

fn sort_with_signs(idx: Vec<usize>, signs: Vec<i8>) -> (Vec<usize>, Vec<i8>) {
    let mut pairs: Vec<(usize, i8)> = idx.into_iter().zip(signs).collect();
    pairs.sort_unstable();
    pairs.into_iter().unzip()
}

impl OrbitTag {
    pub fn new(d: usize, a_set: Vec<usize>, b_set: Vec<usize>, eps: Vec<i8>, delta: Vec<i8>) -> Result<Self> {
        if a_set.len() != eps.len() || b_set.len() != delta.len() {
            return Err(Error::InvalidArgument("sign vector length differs from index set".into()));
        }
        if eps.iter().chain(&delta).any(|s| s.abs() != 1) {
            return Err(Error::InvalidArgument("signs must be +1 or -1".into()));
        }
        let (a_set, eps) = sort_with_signs(a_set, eps);
        let (b_set, delta) = sort_with_signs(b_set, delta);
        let mut seen = vec![false; d];
        for &i in a_set.iter().chain(&b_set) {
            if i >= d || seen[i] {
                return Err(Error::InvalidArgument(format!("index {i} out of range or repeated")));
            }
            seen[i] = true;
        }
        if a_set.is_empty() || b_set.is_empty() {
            return Err(Error::InvalidArgument("index sets must be nonempty".into()));
        }
        Ok(OrbitTag { d, a_set, b_set, eps, delta })
    }

    /// Orbit parameters, with `(a, b)` ordered so that `a ≤ b`.
    pub fn params(&self) -> OrbitParams {
        let (a, b) = (self.a_set.len(), self.b_set.len());
        OrbitParams { d: self.d, a: a.min(b), b: a.max(b) }
    }

    pub fn canonical(&self) -> OrbitTag {
        let mut t = self.clone();
        if t.a_set.len() > t.b_set.len() || (t.a_set.len() == t.b_set.len() && t.b_set[0] < t.a_set[0]) {
            std::mem::swap(&mut t.a_set, &mut t.b_set);
            std::mem::swap(&mut t.eps, &mut t.delta);
        }
        if t.eps[0] < 0 {
            t.eps.iter_mut().for_each(|s| *s = -*s);
        }
        if t.delta[0] < 0 {
            t.delta.iter_mut().for_each(|s| *s = -*s);
        }
        t
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    /// `(ũ, ṽ)` as integer vectors.
    pub fn span_vectors(&self) -> (Vec<i64>, Vec<i64>) {
        let mut u = vec![0i64; self.d];
        let mut v = vec![0i64; self.d];
        for (&i, &s) in self.a_set.iter().zip(&self.eps) {
            u[i] = s as i64;
        }
        for (&j, &s) in self.b_set.iter().zip(&self.delta) {
            v[j] = s as i64;
        }
        (u, v)
    }

    pub fn integer_span(&self) -> IntegerSpan {
        let (u, v) = self.span_vectors();
        IntegerSpan::new(vec![u, v]).expect("disjoint supports are orthogonal")
    }

    pub fn subspace(&self) -> Result<Subspace> {
        Subspace::from_integer_span(self.integer_span())
    }

    /// Entries of `ab · P`, which are integers and determine the plane.
    pub fn projector_key(&self) -> Vec<i64> {
        let (a, b) = (self.a_set.len() as i64, self.b_set.len() as i64);
        let (u, v) = self.span_vectors();
        let mut key = vec![0i64; self.d * self.d];
        for i in 0..self.d {
            for j in 0..self.d {
                key[i * self.d + j] = b * u[i] * u[j] + a * v[i] * v[j];
            }
        }
        key
    }

    /// Image under a signed permutation, in canonical form.
    pub fn apply(&self, g: &SignedPermutation) -> OrbitTag {
        let map = |idx: &[usize], signs: &[i8]| -> (Vec<usize>, Vec<i8>) {
            sort_with_signs(
                idx.iter().map(|&i| g.perm[i]).collect(),
                idx.iter().zip(signs).map(|(&i, &s)| s * g.signs[i]).collect(),
            )
        };
        let (a_set, eps) = map(&self.a_set, &self.eps);
        let (b_set, delta) = map(&self.b_set, &self.delta);
        OrbitTag { d: self.d, a_set, b_set, eps, delta }.canonical()
    }
}

/// A signed permutation `g eᵢ = signsᵢ e_{perm(i)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let d = perm.len();
        let mut seen = vec![false; d];
        for &p in &perm {
            if p >= d || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
        }
        if signs.len() != d || signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::InvalidArgument("signs must be d entries of +1 or -1".into()));
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn identity(d: usize) -> Self {
        SignedPermutation { perm: (0..d).collect(), signs: vec![1; d] }
    }

    pub fn random<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Self {
        let mut perm: Vec<usize> = (0..d).collect();
        perm.shuffle(rng);
        let signs = (0..d).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect();
        SignedPermutation { perm, signs }
    }

    /// Generators of `B_d`: adjacent transpositions and the sign change of the
    /// first coordinate.
    pub fn generators(d: usize) -> Vec<SignedPermutation> {
        let mut gens: Vec<SignedPermutation> = (0..d.saturating_sub(1))
            .map(|i| {
                let mut g = SignedPermutation::identity(d);
                g.perm.swap(i, i + 1);
                g
            })
            .collect();
        let mut flip = SignedPermutation::identity(d);
        flip.signs[0] = -1;
        gens.push(flip);
        gens
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn matrix(&self) -> Matrix<Rational> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for i in 0..d {
            m[(self.perm[i], i)] = Rational::from(self.signs[i] as i64);
        }
        m
    }
}

fn sign_patterns(n: usize, fix_first: bool) -> Vec<Vec<i8>> {
    let free = if fix_first { n - 1 } else { n };
    (0..1u64 << free)
        .map(|mask| {
            let mut s = Vec::with_capacity(n);
            if fix_first {
                s.push(1);
            }
            s.extend((0..free).map(|bit| if mask >> bit & 1 == 1 { -1 } else { 1 }));
            s
        })
        .collect()
}

fn tags_with(p: OrbitParams, canonical_only: bool) -> Vec<OrbitTag> {
    let OrbitParams { d, a, b } = p;
    let eps = sign_patterns(a, canonical_only);
    let dlt = sign_patterns(b, canonical_only);
    let mut out = Vec::new();
    let mut push = |a_set: &Vec<usize>, b_set: &Vec<usize>| {
        for e in &eps {
            for s in &dlt {
                out.push(OrbitTag { d, a_set: a_set.clone(), b_set: b_set.clone(), eps: e.clone(), delta: s.clone() });
            }
        }
    };
    for a_set in (0..d).combinations(a) {
        let rest: Vec<usize> = (0..d).filter(|i| !a_set.contains(i)).collect();
        for b_set in rest.into_iter().combinations(b) {
            if canonical_only && a == b && b_set[0] < a_set[0] {
                continue;
            }
            push(&a_set, &b_set);
        }
    }
    out
}

/// Canonical tags of the orbit, one per plane, in lexicographic order of
/// `(A, B)` and then signs.
pub fn canonical_tags(p: OrbitParams) -> Vec<OrbitTag> {
    tags_with(p, true)
}

/// Every tag with `|A| = a`, `|B| = b`, with no identification applied.
pub fn raw_tags(p: OrbitParams) -> Vec<OrbitTag> {
    tags_with(p, false)
}

fn check_cap(p: OrbitParams, cap: usize) -> Result<()> {
    let n = orbit_size(p);
    if n > cap.into() {
        return Err(Error::CapExceeded { requested: n.to_string(), cap });
    }
    Ok(())
}

/// The orbit's planes with exact projectors, ordered as [`canonical_tags`].
pub fn enumerate_orbit(p: OrbitParams) -> Result<Vec<Subspace>> {
    enumerate_orbit_with_cap(p, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_orbit_with_cap(p: OrbitParams, cap: usize) -> Result<Vec<Subspace>> {
    check_cap(p, cap)?;
    canonical_tags(p).par_iter().map(OrbitTag::subspace).collect()
}

/// How raw tags collapse onto planes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberCensus {
    pub raw: usize,
    pub distinct: usize,
    /// Common fiber size, or `None` if fibers have different sizes.
    pub fiber: Option<usize>,
}

/// Group all raw tags by projector and report the fiber sizes.
pub fn fiber_census(p: OrbitParams) -> Result<FiberCensus> {
    check_cap(p, DEFAULT_ENUMERATION_CAP)?;
    let raw = raw_tags(p);
    let mut counts: HashMap<Vec<i64>, usize> = HashMap::new();
    for t in &raw {
        *counts.entry(t.projector_key()).or_default() += 1;
    }
    let first = *counts.values().next().expect("nonempty orbit");
    let fiber = counts.values().all(|&c| c == first).then_some(first);
    Ok(FiberCensus { raw: raw.len(), distinct: counts.len(), fiber })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::q;
    use num_bigint::BigInt;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn op(d: usize, a: usize, b: usize) -> OrbitParams {
        OrbitParams::new(d, a, b).unwrap()
    }

    #[test]
    fn canonical_count_matches_formula() {
        for d in 2..=7 {
            for p in OrbitParams::all(d) {
                assert_eq!(BigInt::from(canonical_tags(p).len()), orbit_size(p), "{p}");
            }
        }
    }

    #[test]
    fn small_orbit_is_distinct_and_exact() {
        let planes = enumerate_orbit(op(4, 1, 3)).unwrap();
        assert_eq!(planes.len(), 16);
        let keys: HashSet<_> = canonical_tags(op(4, 1, 3)).iter().map(OrbitTag::projector_key).collect();
        assert_eq!(keys.len(), 16);
        for w in &planes {
            assert_eq!(w.projector().unwrap().trace(), q(2, 1));
        }
    }

    #[test]
    fn fibers() {
        assert_eq!(fiber_census(op(5, 1, 3)).unwrap().fiber, Some(4));
        assert_eq!(fiber_census(op(5, 2, 2)).unwrap().fiber, Some(8));
        assert_eq!(fiber_census(op(4, 2, 2)).unwrap().distinct, 12);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(enumerate_orbit_with_cap(op(6, 2, 3), 10), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn tag_validation_and_canonical_form() {
        assert!(OrbitTag::new(4, vec![0], vec![0, 1], vec![1], vec![1, 1]).is_err());
        assert!(OrbitTag::new(4, vec![0], vec![1], vec![2], vec![1]).is_err());
        let t = OrbitTag::new(4, vec![3, 1], vec![0, 2], vec![-1, 1], vec![-1, -1]).unwrap();
        assert_eq!(t.a_set, vec![1, 3]);
        assert_eq!(t.eps, vec![1, -1]);
        let c = t.canonical();
        assert_eq!(c.a_set, vec![0, 2]);
        assert_eq!(c.eps, vec![1, 1]);
        assert_eq!(c.projector_key(), t.projector_key());
        assert!(c.is_canonical());
    }

    #[test]
    fn signed_permutations_permute_canonical_tags() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = op(6, 2, 3);
        let tags: HashSet<OrbitTag> = canonical_tags(p).into_iter().collect();
        for _ in 0..10 {
            let g = SignedPermutation::random(6, &mut rng);
            let image: HashSet<OrbitTag> = tags.iter().map(|t| t.apply(&g)).collect();
            assert_eq!(image, tags);
        }
    }

    #[test]
    fn tag_action_matches_matrix_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = op(5, 1, 2);
        for t in canonical_tags(p).iter().take(8) {
            let g = SignedPermutation::random(5, &mut rng);
            let moved = t.subspace().unwrap().transform_exact(&g.matrix()).unwrap();
            assert_eq!(moved.projector(), t.apply(&g).subspace().unwrap().projector());
        }
    }
}
