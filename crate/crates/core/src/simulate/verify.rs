use rayon::prelude::*;
use serde::Serialize;

use super::{generate_instance, run_trial, SimConfig};
use crate::error::Result;
use crate::policies::{load_profile, mtr, ugs, write_instance, Policy, SpatialInstance};

/// Restriction of `inst` to the users MTR matches.
fn matched_part(inst: &SpatialInstance) -> SpatialInstance {
    inst.restrict_users(&mtr(inst).matched_users())
}

/// Whether MTR and UGS produce identical load profiles on the users MTR
/// matches.
pub fn profiles_agree(inst: &SpatialInstance) -> Result<bool> {
    let sub = matched_part(inst);
    let pm = load_profile(&sub, &mtr(&sub))?;
    let pu = load_profile(&sub, &ugs(&sub))?;
    Ok(pm == pu)
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileMismatch {
    pub trial: usize,
    /// The offending instance in the `role,position,capacity` format.
    pub instance_csv: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileReport {
    pub instances: usize,
    pub mismatches: Vec<ProfileMismatch>,
}

impl ProfileReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares MTR and UGS load profiles breakpoint by breakpoint on
/// `instances` random instances drawn from `cfg` (trial indices
/// `0..instances`).
pub fn verify_theorem1(cfg: &SimConfig, instances: usize) -> Result<ProfileReport> {
    cfg.validate()?;
    let found = (0..instances)
        .into_par_iter()
        .map(|t| -> Result<Option<ProfileMismatch>> {
            let inst = generate_instance(cfg, t)?;
            if profiles_agree(&inst)? {
                return Ok(None);
            }
            let mut buf = Vec::new();
            write_instance(&mut buf, &inst)?;
            let instance_csv = String::from_utf8(buf).expect("csv output is utf-8");
            Ok(Some(ProfileMismatch { trial: t, instance_csv }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProfileReport { instances, mismatches: found.into_iter().flatten().collect() })
}

/// Population variances of the request distances under MTR and UGS on the
/// users MTR matches.
pub fn variance_pair(inst: &SpatialInstance) -> (f64, f64) {
    let sub = matched_part(inst);
    (mtr(&sub).distance_variance(), ugs(&sub).distance_variance())
}

#[derive(Debug, Clone, Serialize)]
pub struct VarianceReport {
    pub trials: usize,
    /// Trials with `Var(MTR) ≤ Var(UGS)`.
    pub mtr_not_above: usize,
    /// `(Var(MTR), Var(UGS))` per trial.
    pub per_trial: Vec<(f64, f64)>,
}

impl VarianceReport {
    pub fn fraction(&self) -> f64 {
        self.mtr_not_above as f64 / self.trials as f64
    }
}

/// Runs MTR and UGS on the same instances and compares the spread of their
/// request distances.
pub fn variance_comparison(cfg: &SimConfig) -> Result<VarianceReport> {
    let cfg = cfg.clone().with_policies(&[Policy::Mtr, Policy::Ugs]);
    cfg.validate()?;
    let per_trial = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let o = run_trial(&cfg, t)?;
            Ok((o.policies[0].distance_variance, o.policies[1].distance_variance))
        })
        .collect::<Result<Vec<_>>>()?;
    let mtr_not_above = per_trial.iter().filter(|(m, u)| m <= u).count();
    Ok(VarianceReport { trials: cfg.trials, mtr_not_above, per_trial })
}
