//! Inter-point distance laws and the exceptional first-service law derived
//! from them.

mod capacity;
mod distance;
mod exceptional;
mod series;

pub use capacity::CapacitySpec;
pub use distance::{h2_from_cv, lst, sample, DistanceDistribution, DistanceKind, DistanceSpec};
pub use exceptional::{exceptional, ExceptionalDistribution};
