//! Allocation policies on the half-line and busy-cycle analysis.

mod assignment;
mod gale_shapley;
mod greedy;
mod instance;
mod io;
mod optimal;
mod profile;
pub mod reference;
mod worst_case;

pub use assignment::{Assignment, Policy};
pub use gale_shapley::gale_shapley;
pub use greedy::{mtr, ugs};
pub use instance::SpatialInstance;
pub use io::{read_instance, write_assignment, write_instance};
pub use optimal::{brute_force_optimal, optimal_by_flow, optimal_dp};
pub use profile::{load_profile, LoadProfile};
pub use worst_case::gs_worst_case;

use crate::error::Result;

/// Runs `policy` on `inst`.
pub fn allocate(policy: Policy, inst: &SpatialInstance) -> Result<Assignment> {
    match policy {
        Policy::Mtr => Ok(mtr(inst)),
        Policy::Ugs => Ok(ugs(inst)),
        Policy::GaleShapley => Ok(gale_shapley(inst)),
        Policy::Optimal => optimal_dp(inst),
        Policy::BruteForce => brute_force_optimal(inst),
    }
}
