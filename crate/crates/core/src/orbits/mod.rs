//! Orbits of the hyperoctahedral group `B_d` on planes of `R^d`.
//!
//! The orbit `O(d; a, b)` is the `B_d`-orbit of the plane spanned by the
//! normalized indicators of `{1..a}` and `{a+1..a+b}`. Closed forms live in
//! [`params`] and enumeration in [`tags`].

pub mod functional;
pub mod params;
pub mod search;
pub mod tags;
pub mod union;

pub use functional::{
    brute_force_f, is_hyperoctahedral_invariant, probe_functional, two_point_test_frame, TwoPointResult,
    TWO_POINT_CRITERION,
};
pub use params::{delta, f_value, orbit_size, weighted_delta, OrbitParams, Probe};
pub use search::{scaling_family, search_range, search_two_orbit, solve_single_orbit, SolutionClass, TwoOrbitSolution};
pub use tags::{
    canonical_tags, enumerate_orbit, enumerate_orbit_with_cap, fiber_census, raw_tags, FiberCensus, OrbitTag,
    SignedPermutation, DEFAULT_ENUMERATION_CAP,
};
pub use union::{two_point_test, union_condition, OrbitUnion, UnionCondition};
