//! Closed-form expected request distance for the queueing models of the
//! allocation process.

mod bulk;
mod grps;
mod hetcap;
mod limits;
mod prgs;
mod result;
mod ugs;

pub use bulk::{bulk_mm1_expected_distance, BulkMM1Model};
pub use grps::{grps_expected_distance, GrpsModel, GrpsSolution};
pub use hetcap::{hetcap_expected_distance, HetCapModel, HetCapSolution};
pub use limits::{heavy_traffic_estimate, uncapacitated_expected_distance, Side};
pub use prgs::{prgs_expected_distance, prgs_queue_pgf, prgs_solve, PrgsModel, PrgsSolution};
pub use result::{predict, AnalyticDetail, AnalyticResult, ModelKind};
pub use ugs::{ugs_distance_cdf, ugs_distance_density};

use crate::error::{Error, Result};

const STABILITY_MARGIN: f64 = 1e-9;

fn check_stable(load: f64, capacity: f64) -> Result<()> {
    if load < capacity - STABILITY_MARGIN {
        Ok(())
    } else {
        Err(Error::Unstable { load, capacity })
    }
}

fn check_rate(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(crate::error::invalid(format!("{name} must be positive and finite, got {v}")))
    }
}
