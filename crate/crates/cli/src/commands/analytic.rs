use std::io::Write;

use linealloc::analytic::{
    predict, ugs_distance_cdf, ugs_distance_density, AnalyticResult, BulkMM1Model, GrpsModel, HetCapModel, PrgsModel,
};
use linealloc::distributions::{CapacitySpec, DistanceDistribution};
use serde::Serialize;

use crate::args::{AnalyticArgs, ModelName};
use crate::config::{ExperimentSpec, Mode};
use crate::error::{usage, CliResult};

#[derive(Serialize)]
struct DensityPoint {
    x: f64,
    density: f64,
    cdf: f64,
}

#[derive(Serialize)]
struct DensityReport {
    lambda: f64,
    mu: f64,
    expected_distance: f64,
    points: Vec<DensityPoint>,
}

/// Prints `E[D] = value` and the solver details as JSON.
pub fn run(args: AnalyticArgs, out: &mut dyn Write) -> CliResult<()> {
    let spec = ExperimentSpec::load(args.config.as_deref(), Mode::Analytic)?;
    let model = args.model.or(spec.model).unwrap_or(ModelName::Auto);
    let p = args.params.overlay(&spec)?;
    if let Some(name) = &spec.name {
        writeln!(out, "# name: {name}")?;
    }
    if model == ModelName::Density {
        let x = if args.x.is_empty() { spec.x.clone().unwrap_or_default() } else { args.x };
        let lambda = rate("density", "users", &p.users()?)?;
        let mu = rate("density", "servers", &p.servers()?)?;
        unit_capacity("density", &p.capacity())?;
        return density(lambda, mu, &x, out);
    }
    let result = match model {
        ModelName::Auto => predict(&p.users()?, &p.servers()?, &p.capacity())?,
        ModelName::Bulk => {
            let lambda = rate("bulk", "users", &p.users()?)?;
            let mu = rate("bulk", "servers", &p.servers()?)?;
            AnalyticResult::bulk(&BulkMM1Model::new(lambda, mu, fixed("bulk", &p.capacity())?)?)?
        }
        ModelName::Grps => {
            let mu = rate("grps", "servers", &p.servers()?)?;
            AnalyticResult::grps(&GrpsModel::new(p.users()?, mu, fixed("grps", &p.capacity())?)?)?
        }
        ModelName::Prgs => {
            let lambda = rate("prgs", "users", &p.users()?)?;
            AnalyticResult::prgs(&PrgsModel::new(lambda, p.servers()?, fixed("prgs", &p.capacity())?)?)?
        }
        ModelName::Hetcap => {
            let lambda = rate("hetcap", "users", &p.users()?)?;
            AnalyticResult::hetcap(&HetCapModel::from_spec(lambda, p.servers()?, &p.capacity())?)?
        }
        ModelName::Heavy => {
            unit_capacity("heavy", &p.capacity())?;
            AnalyticResult::heavy(&p.users()?, &p.servers()?)?
        }
        ModelName::Limit => {
            let side = args.side.or(spec.side).ok_or_else(|| usage("limit needs --side grps or --side prgs"))?;
            AnalyticResult::limit(side, &p.servers()?)
        }
        ModelName::Density => unreachable!("handled above"),
    };
    writeln!(out, "E[D] = {}", result.expected_distance)?;
    let json = serde_json::to_string_pretty(&result).map_err(linealloc::Error::from)?;
    writeln!(out, "{json}")?;
    Ok(())
}

fn density(lambda: f64, mu: f64, x: &[f64], out: &mut dyn Write) -> CliResult<()> {
    if x.is_empty() {
        return Err(usage("density needs --x with at least one distance"));
    }
    let expected_distance = BulkMM1Model::new(lambda, mu, 1)?.expected_distance()?;
    let points = x
        .iter()
        .map(|&x| {
            Ok(DensityPoint { x, density: ugs_distance_density(lambda, mu, x), cdf: ugs_distance_cdf(lambda, mu, x)? })
        })
        .collect::<linealloc::Result<Vec<_>>>()?;
    writeln!(out, "E[D] = {expected_distance}")?;
    let report = DensityReport { lambda, mu, expected_distance, points };
    let json = serde_json::to_string_pretty(&report).map_err(linealloc::Error::from)?;
    writeln!(out, "{json}")?;
    Ok(())
}

fn rate(model: &str, side: &str, law: &DistanceDistribution) -> CliResult<f64> {
    if law.is_exponential() {
        Ok(law.rate())
    } else {
        Err(usage(format!("{model} needs Poisson {side}, got {law}")))
    }
}

fn fixed(model: &str, capacity: &CapacitySpec) -> CliResult<u32> {
    match capacity {
        CapacitySpec::Fixed(c) => Ok(*c),
        CapacitySpec::Pmf(_) => Err(usage(format!("{model} needs a fixed capacity; use hetcap for a pmf"))),
    }
}

fn unit_capacity(model: &str, capacity: &CapacitySpec) -> CliResult<()> {
    match capacity {
        CapacitySpec::Fixed(1) => Ok(()),
        other => Err(usage(format!("{model} is defined for unit capacity, got {other}"))),
    }
}
