//! Tight fusion frames of planes built from hyperoctahedral orbits, and their
//! lifts to spherical designs.
//!
//! Identity-level checks run in exact rational arithmetic whenever the input
//! carries exact data; otherwise they fall back to `f64` with documented
//! tolerances. Every check returns a [`Certificate`].

pub mod bounds;
pub mod certificate;
pub mod error;
pub mod grassmann;
pub mod lifting;
pub mod numerics;
pub mod orbits;
pub mod sphere;

pub use bounds::{EctffClass, EctffReport, SicSystem};
pub use certificate::{Certificate, Residual, Value, Verdict};
pub use error::{Error, Result};
pub use grassmann::{FrameConfig, Subspace};
pub use lifting::{LiftSpec, LiftedDesign, PhasePolicy};
pub use numerics::{Mode, Rational};
pub use orbits::{OrbitParams, OrbitTag, OrbitUnion};
pub use sphere::WeightedPointSet;

/// Version string embedded in emitted artifacts.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
