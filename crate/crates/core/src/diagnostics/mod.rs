//! Invariant monitors, inequality checkers, circle fitting and singular-limit
//! classification over run artifacts.

mod circle_fit;
mod invariants;
mod singularity;

pub use circle_fit::{circle_fit, CircleFit};
pub use invariants::{dissipation_residual, invariant_report, CheckRecord, InvariantReport};
pub use singularity::{classify_singularity, count_self_intersections, SingularityClass, SingularityReport};
