//! Spherical design checks built on Gegenbauer kernels.
//!
//! Regular polygons, the circle designs used as lifting inputs, live in [`polygon`].

pub mod checks;
pub mod gegenbauer;
pub mod pointset;
pub mod polygon;

pub use checks::{
    check_pairwise_in_dimension, check_spherical_design_pairwise, check_weighted_design_moments,
    check_weighted_design_moments_with, default_probes, gegenbauer_double_sums, pairwise_tolerance, sphere_moment,
};
pub use gegenbauer::{gegenbauer_eval, GegenbauerEvaluator};
pub use pointset::{AnyPointSet, PointSetJson, WeightedPointSet};
pub use polygon::{certify_polygon, regular_polygon, PlaneBasis};
