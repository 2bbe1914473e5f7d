//! Subspaces of `R^d` and the zonal polynomials that compare them.

pub mod angles;
pub mod frame;
pub mod packing;
pub mod subspace;
pub mod zonal;

pub use angles::{
    angle_pair, chordal_distance, exact_power_sums, float_power_sums, principal_angles, AnglePair, PowerSums,
};
pub use frame::{
    check_grassmann_design_4, check_tff, exact_moments, float_moments, FrameConfig, FrameJson, PairMoments,
};
pub use packing::{
    check_simplex_bound, chs_embed, chs_inner_exact, chs_matrix, embedding_dim, is_equichordal, is_equiisoclinic,
    simplex_bound, EquiReport, SimplexReport,
};
pub use subspace::{coordinate_subspace, IntegerSpan, Subspace, SubspaceJson};
pub use zonal::{zonal_p2, zonal_p22, zonal_p4, Zonal, ZonalForm};
