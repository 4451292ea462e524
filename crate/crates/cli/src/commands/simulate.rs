use std::io::Write;

use linealloc::analytic::{heavy_traffic_estimate, predict};
use linealloc::simulate::{run as simulate, sweep, with_jobs, Estimate, SimConfig, DEFAULT_SEED, DEFAULT_TRIALS};

use super::open_output;
use crate::args::SimulateArgs;
use crate::config::{ExperimentSpec, Mode};
use crate::error::{usage, CliResult};

pub const DEFAULT_USERS: usize = 100_000;

/// Simulates one configuration, or a sweep of it, and writes CSV. With
/// `compare` each policy row also carries the analytic value, the ratio
/// analytic/simulated and the z-score of the gap.
pub fn run(args: SimulateArgs, compare: bool, stdout: &mut dyn Write) -> CliResult<()> {
    let mode = if compare { Mode::Compare } else { Mode::Simulate };
    let spec = ExperimentSpec::load(args.config.as_deref(), mode)?;
    let p = args.params.overlay(&spec)?;
    let mut cfg =
        SimConfig::new(args.n_users.or(spec.n_users).unwrap_or(DEFAULT_USERS), p.users()?, p.servers()?, p.capacity())
            .with_trials(args.trials.or(spec.trials).unwrap_or(DEFAULT_TRIALS))
            .with_seed(args.seed.or(spec.seed).unwrap_or(DEFAULT_SEED));
    let policies = if args.policies.is_empty() { spec.policies.clone().unwrap_or_default() } else { args.policies };
    if !policies.is_empty() {
        cfg = cfg.with_policies(&policies);
    }
    cfg.server_count = args.server_count.or(spec.server_count);
    let sweep_axis = match (args.sweep, &spec.sweep) {
        (Some(axis), _) => {
            let values = if args.values.is_empty() {
                spec.sweep.as_ref().map(|s| s.values.clone()).unwrap_or_default()
            } else {
                args.values
            };
            Some((axis, values))
        }
        (None, Some(s)) if args.values.is_empty() => Some((s.axis, s.values.clone())),
        (None, Some(s)) => Some((s.axis, args.values)),
        (None, None) if !args.values.is_empty() => return Err(usage("--values needs --sweep")),
        (None, None) => None,
    };
    let estimate = args.estimate.or(spec.estimate).unwrap_or_default();
    let jobs = args.jobs.or(spec.jobs);
    let mut out = open_output(args.output.or(spec.output.clone()).as_deref(), stdout)?;

    if let Some((axis, values)) = sweep_axis {
        if values.is_empty() {
            return Err(usage("--sweep needs --values"));
        }
        let mut table = with_jobs(jobs, || sweep(&cfg, axis, &values, estimate))?;
        if let Some(name) = &spec.name {
            table.header.insert(0, ("name".to_string(), name.clone()));
        }
        table.write_csv(&mut out)?;
        for (x, why) in &table.failures {
            eprintln!("warning: {axis} = {x} skipped: {why}");
        }
        return Ok(());
    }

    cfg.validate()?;
    let analytic = if compare {
        Some(match estimate {
            Estimate::Exact => {
                let r = predict(&cfg.users, &cfg.servers, &cfg.capacity)?;
                (r.expected_distance, format!("{} {}", r.model, r.summary()))
            }
            Estimate::HeavyTraffic => (heavy_traffic_estimate(&cfg.users, &cfg.servers)?, "heavy-traffic".to_string()),
        })
    } else {
        None
    };
    let sim = with_jobs(jobs, || simulate(&cfg))??;
    if sim.low_match {
        eprintln!("warning: only {:.1}% of users were matched by MTR", 100.0 * sim.matched_fraction);
    }

    let mut header = vec![
        ("users", cfg.users.to_string()),
        ("servers", cfg.servers.to_string()),
        ("capacity", cfg.capacity.to_string()),
        ("load", cfg.load().to_string()),
        ("n_users", cfg.n_users.to_string()),
        ("trials", cfg.trials.to_string()),
        ("seed", cfg.seed.to_string()),
    ];
    if let Some(name) = &spec.name {
        header.insert(0, ("name", name.clone()));
    }
    if let Some((_, model)) = &analytic {
        header.push(("analytic", model.clone()));
    }
    for (k, v) in header {
        writeln!(out, "# {k}: {v}")?;
    }
    let mut w = csv::Writer::from_writer(out);
    let mut columns = vec!["policy", "mean_distance", "stderr", "variance", "matched_fraction"];
    if compare {
        columns.extend(["analytic_value", "ratio", "z"]);
    }
    w.write_record(&columns).map_err(linealloc::Error::from)?;
    for s in &sim.policies {
        let mut row = vec![
            s.policy.to_string(),
            s.mean_distance.to_string(),
            s.stderr.to_string(),
            s.distance_variance.to_string(),
            sim.matched_fraction.to_string(),
        ];
        if let Some((a, _)) = &analytic {
            row.push(a.to_string());
            row.push((a / s.mean_distance).to_string());
            row.push(((a - s.mean_distance) / s.stderr).to_string());
        }
        w.write_record(&row).map_err(linealloc::Error::from)?;
    }
    w.flush()?;
    Ok(())
}
