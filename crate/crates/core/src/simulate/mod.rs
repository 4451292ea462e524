//! Monte Carlo engine: random instances, policy runs and aggregated
//! request-distance statistics.

mod figures;
mod sweep;
mod verify;

pub use figures::{run_figure, Figure, FigureOptions, FigureSweep};
pub use sweep::{sweep, Estimate, SweepAxis, SweepRow, SweepTable};
pub use verify::{
    profiles_agree, variance_comparison, variance_pair, verify_theorem1, ProfileMismatch, ProfileReport, VarianceReport,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{CapacitySpec, DistanceDistribution};
use crate::error::{invalid, Error, Result};
use crate::policies::{allocate, load_profile, mtr, Policy, SpatialInstance};

pub const DEFAULT_SEED: u64 = 0x5eed_2019;
pub const DEFAULT_TRIALS: usize = 50;

/// Below this matched fraction a run is flagged as suspect.
const LOW_MATCH: f64 = 0.5;

fn default_trials() -> usize {
    DEFAULT_TRIALS
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_policies() -> Vec<Policy> {
    vec![Policy::Mtr]
}

/// One Monte Carlo experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n_users: usize,
    /// Gap law between consecutive users.
    pub users: DistanceDistribution,
    /// Gap law between consecutive servers.
    pub servers: DistanceDistribution,
    pub capacity: CapacitySpec,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_policies")]
    pub policies: Vec<Policy>,
    /// Fixed number of servers. When absent, servers are drawn until MTR
    /// matches every user, up to `10 n + 10⁴`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub server_count: Option<usize>,
}

impl SimConfig {
    pub fn new(
        n_users: usize,
        users: DistanceDistribution,
        servers: DistanceDistribution,
        capacity: CapacitySpec,
    ) -> Self {
        Self {
            n_users,
            users,
            servers,
            capacity,
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            policies: default_policies(),
            server_count: None,
        }
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_policies(mut self, policies: &[Policy]) -> Self {
        self.policies = policies.to_vec();
        self
    }

    /// `ρ = λ / (μ c̄)`
    pub fn load(&self) -> f64 {
        self.servers.mean() / (self.users.mean() * self.capacity.mean())
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_users == 0 {
            return Err(invalid("at least one user is required"));
        }
        if self.trials == 0 {
            return Err(invalid("at least one trial is required"));
        }
        self.capacity.validate()?;
        if self.policies.is_empty() {
            return Err(invalid("no policies to run"));
        }
        if self.policies.contains(&Policy::BruteForce) {
            return Err(invalid("exhaustive search is not available in simulations"));
        }
        if self.server_count == Some(0) {
            return Err(invalid("server count must be positive"));
        }
        let load = self.load();
        if load >= 1.0 - 1e-9 {
            return Err(Error::Unstable { load, capacity: 1.0 });
        }
        Ok(())
    }

    fn server_cap(&self) -> usize {
        self.server_count.unwrap_or(10 * self.n_users + 10_000)
    }
}

#[derive(Clone, Copy)]
enum Stream {
    Users = 0,
    Servers = 1,
    Capacities = 2,
}

/// Independent generator for one role within one trial.
fn stream(seed: u64, trial: usize, role: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((trial as u64) << 2) | role as u64);
    rng
}

/// Cumulative renewal positions for trial `trial`. Servers are drawn until
/// MTR would match every user (or the server cap is reached).
pub fn generate_instance(cfg: &SimConfig, trial: usize) -> Result<SpatialInstance> {
    cfg.validate()?;
    let mut urng = stream(cfg.seed, trial, Stream::Users);
    let mut srng = stream(cfg.seed, trial, Stream::Servers);
    let mut crng = stream(cfg.seed, trial, Stream::Capacities);

    let mut users = Vec::with_capacity(cfg.n_users);
    let mut x = 0.0;
    for _ in 0..cfg.n_users {
        x += cfg.users.sample(&mut urng);
        users.push(x);
    }

    let cap = cfg.server_cap();
    let mut servers = Vec::new();
    let mut capacities = Vec::new();
    let (mut s, mut next_user, mut waiting) = (0.0, 0usize, 0u64);
    while servers.len() < cap {
        if cfg.server_count.is_none() && next_user == users.len() && waiting == 0 {
            break;
        }
        s += cfg.servers.sample(&mut srng);
        let c = cfg.capacity.sample(&mut crng);
        while next_user < users.len() && users[next_user] <= s {
            waiting += 1;
            next_user += 1;
        }
        waiting -= waiting.min(c as u64);
        servers.push(s);
        capacities.push(c);
    }
    SpatialInstance::new(users, servers, capacities)
}

/// Statistics of one policy in one trial, over the counted users.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolicyTrial {
    pub policy: Policy,
    pub mean_distance: f64,
    /// Population variance of the request distances.
    pub distance_variance: f64,
    pub total_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialOutcome {
    pub trial: usize,
    pub users: usize,
    pub servers: usize,
    /// Users matched by MTR.
    pub matched: usize,
    /// Matched users that enter the statistics.
    pub counted: usize,
    pub policies: Vec<PolicyTrial>,
}

impl TrialOutcome {
    pub fn matched_fraction(&self) -> f64 {
        self.matched as f64 / self.users as f64
    }

    pub fn get(&self, policy: Policy) -> Option<&PolicyTrial> {
        self.policies.iter().find(|p| p.policy == policy)
    }
}

/// Runs one trial: MTR on the full instance, then every configured policy on
/// the MTR-matched users against all servers. When MTR leaves users
/// unmatched, users in its last busy cycle are left out of the statistics.
pub fn run_trial(cfg: &SimConfig, trial: usize) -> Result<TrialOutcome> {
    let inst = generate_instance(cfg, trial)?;
    let first = mtr(&inst);
    let kept = first.matched_users();
    let sub = inst.restrict_users(&kept);

    let mut counted = kept.len();
    if kept.len() < inst.users().len() {
        let profile = load_profile(&inst, &first)?;
        if let Some(&(start, _)) = profile.busy_cycles.last() {
            counted = sub.users().partition_point(|&r| r < start);
        }
    }

    let mut policies = Vec::with_capacity(cfg.policies.len());
    for &policy in &cfg.policies {
        let a = allocate(policy, &sub)?;
        let d: Vec<f64> = a.distances[..counted].iter().map(|d| d.unwrap_or(f64::NAN)).collect();
        if d.iter().any(|x| x.is_nan()) {
            return Err(Error::Numeric(format!("{policy} left an MTR-matched user unmatched")));
        }
        let total: f64 = d.iter().sum();
        let (mean, var) = mean_and_variance(&d);
        policies.push(PolicyTrial { policy, mean_distance: mean, distance_variance: var, total_distance: total });
    }
    Ok(TrialOutcome {
        trial,
        users: inst.users().len(),
        servers: inst.servers().len(),
        matched: kept.len(),
        counted,
        policies,
    })
}

/// Mean and population variance; zeros for an empty slice.
fn mean_and_variance(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var)
}

/// Across-trial summary of one policy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolicySummary {
    pub policy: Policy,
    /// Mean over trials of the per-trial mean request distance.
    pub mean_distance: f64,
    /// Sample standard deviation of the per-trial means over `√trials`; NaN
    /// for a single trial.
    pub stderr: f64,
    /// Mean over trials of the per-trial request-distance variance.
    pub distance_variance: f64,
    pub per_trial: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimResult {
    pub load: f64,
    /// Mean over trials of `|R_M| / |R|`.
    pub matched_fraction: f64,
    /// Set when the matched fraction is below one half.
    pub low_match: bool,
    pub policies: Vec<PolicySummary>,
    pub trials: Vec<TrialOutcome>,
}

impl SimResult {
    pub fn get(&self, policy: Policy) -> Option<&PolicySummary> {
        self.policies.iter().find(|p| p.policy == policy)
    }

    fn from_trials(cfg: &SimConfig, trials: Vec<TrialOutcome>) -> Self {
        let t = trials.len() as f64;
        let matched_fraction = trials.iter().map(TrialOutcome::matched_fraction).sum::<f64>() / t;
        let policies = cfg
            .policies
            .iter()
            .enumerate()
            .map(|(k, &policy)| {
                let per_trial: Vec<f64> = trials.iter().map(|o| o.policies[k].mean_distance).collect();
                let mean = per_trial.iter().sum::<f64>() / t;
                let stderr = if trials.len() < 2 {
                    f64::NAN
                } else {
                    let ss = per_trial.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
                    (ss / (t - 1.0)).sqrt() / t.sqrt()
                };
                let distance_variance = trials.iter().map(|o| o.policies[k].distance_variance).sum::<f64>() / t;
                PolicySummary { policy, mean_distance: mean, stderr, distance_variance, per_trial }
            })
            .collect();
        SimResult { load: cfg.load(), matched_fraction, low_match: matched_fraction < LOW_MATCH, policies, trials }
    }
}

/// Runs all trials in parallel; aggregation is ordered by trial index, so
/// the result depends only on the configuration.
pub fn run(cfg: &SimConfig) -> Result<SimResult> {
    cfg.validate()?;
    let trials = (0..cfg.trials).into_par_iter().map(|t| run_trial(cfg, t)).collect::<Result<Vec<_>>>()?;
    Ok(SimResult::from_trials(cfg, trials))
}

/// Runs `f` on a pool of `jobs` threads, or on the global pool for `None`.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(invalid("--jobs must be at least 1")),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Numeric(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp(rate: f64) -> DistanceDistribution {
        DistanceDistribution::exponential(rate).unwrap()
    }

    #[test]
    fn validation() {
        let ok = SimConfig::new(10, exp(0.5), exp(1.0), CapacitySpec::Fixed(1));
        assert!(ok.validate().is_ok());
        assert!((ok.load() - 0.5).abs() < 1e-12);
        let unstable = SimConfig::new(10, exp(1.0), exp(1.0), CapacitySpec::Fixed(1));
        assert!(matches!(unstable.validate(), Err(Error::Unstable { .. })));
        assert!(SimConfig::new(0, exp(0.5), exp(1.0), CapacitySpec::Fixed(1)).validate().is_err());
        assert!(ok.clone().with_trials(0).validate().is_err());
        assert!(ok.with_policies(&[Policy::BruteForce]).validate().is_err());
    }

    #[test]
    fn streamed_servers_match_everyone() {
        let cfg = SimConfig::new(500, exp(0.8), exp(1.0), CapacitySpec::Fixed(1));
        let inst = generate_instance(&cfg, 3).unwrap();
        assert_eq!(inst.users().len(), 500);
        assert_eq!(mtr(&inst).matched_count(), 500);
        // the last server is the one that completes the matching
        let fewer = SpatialInstance::new(
            inst.users().to_vec(),
            inst.servers()[..inst.servers().len() - 1].to_vec(),
            inst.capacities()[..inst.servers().len() - 1].to_vec(),
        )
        .unwrap();
        assert!(mtr(&fewer).matched_count() < 500);
    }

    #[test]
    fn fixed_server_count_and_dropped_cycle() {
        let mut cfg = SimConfig::new(1000, exp(0.5), exp(1.0), CapacitySpec::Fixed(1));
        cfg.server_count = Some(1000);
        let inst = generate_instance(&cfg, 0).unwrap();
        assert_eq!(inst.servers().len(), 1000);
        let o = run_trial(&cfg, 0).unwrap();
        assert!(o.matched < 1000 && o.matched > 300);
        assert!(o.counted <= o.matched);
    }

    #[test]
    fn trials_are_reproducible_and_distinct() {
        let cfg = SimConfig::new(200, exp(0.5), exp(1.0), CapacitySpec::Fixed(2)).with_trials(4);
        let a = run(&cfg).unwrap();
        let b = with_jobs(Some(1), || run(&cfg)).unwrap().unwrap();
        assert_eq!(a, b);
        assert_ne!(a.trials[0].policies[0].mean_distance, a.trials[1].policies[0].mean_distance);
        let other = run(&cfg.clone().with_seed(7)).unwrap();
        assert_ne!(a.policies[0].mean_distance, other.policies[0].mean_distance);
    }

    #[test]
    fn unidirectional_policies_agree_per_trial() {
        let cfg =
            SimConfig::new(2000, exp(0.8), exp(1.0), CapacitySpec::Fixed(1)).with_policies(&[Policy::Mtr, Policy::Ugs]);
        let o = run_trial(&cfg, 1).unwrap();
        let (m, u) = (o.get(Policy::Mtr).unwrap(), o.get(Policy::Ugs).unwrap());
        assert!((m.total_distance - u.total_distance).abs() < 1e-9 * m.total_distance.max(1.0));
    }

    #[test]
    fn light_load_deterministic_servers() {
        let cfg = SimConfig::new(
            20_000,
            exp(0.01),
            DistanceDistribution::deterministic(1.0).unwrap(),
            CapacitySpec::Fixed(1),
        )
        .with_trials(4);
        let r = run(&cfg).unwrap();
        assert!((r.policies[0].mean_distance - 0.5).abs() < 0.02, "{}", r.policies[0].mean_distance);
    }

    #[test]
    fn stderr_and_single_trial() {
        let cfg = SimConfig::new(100, exp(0.5), exp(1.0), CapacitySpec::Fixed(1)).with_trials(1);
        let r = run(&cfg).unwrap();
        assert!(r.policies[0].stderr.is_nan());
        assert_eq!(r.policies[0].per_trial.len(), 1);
        assert!(r.matched_fraction > 0.0 && r.matched_fraction <= 1.0);
    }
}
