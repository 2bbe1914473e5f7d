//! Fixed workloads shared by the benchmarks.

use fusion_core::lifting::lift;
use fusion_core::orbits::enumerate_orbit;
use fusion_core::{FrameConfig, LiftSpec, OrbitParams, OrbitUnion, WeightedPointSet};

/// The equal-weight frame of one enumerated orbit.
pub fn orbit_frame(d: usize, a: usize, b: usize) -> FrameConfig {
    let p = OrbitParams::new(d, a, b).expect("valid orbit parameters");
    FrameConfig::equal_weight(enumerate_orbit(p).expect("orbit below the cap")).expect("nonempty orbit")
}

/// The two-orbit tight 2-fusion frame in dimension 7, 1680 planes.
pub fn seven_dim_union() -> FrameConfig {
    OrbitUnion::new(7, vec![(1, 3), (3, 3)]).and_then(|u| u.to_frame()).expect("valid union")
}

/// Hexagons on the 16 planes of `O(4; 1, 3)`: 96 points on `S^3`.
pub fn hexagon_design() -> WeightedPointSet<f64> {
    lift(&LiftSpec::new(orbit_frame(4, 1, 3), 2, 5, 1)).expect("orbit is a tight 2-fusion frame").result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_sizes() {
        assert_eq!(orbit_frame(4, 1, 3).len(), 16);
        assert_eq!(seven_dim_union().len(), 1680);
        assert_eq!(hexagon_design().len(), 96);
    }
}
