use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use linealloc::analytic::Side;
use linealloc::distributions::{CapacitySpec, DistanceDistribution};
use linealloc::policies::Policy;
use linealloc::simulate::{Estimate, SweepAxis};
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(name = "linealloc", version, about = "Allocation of users to capacitated servers on a line")]
#[command(after_help = "Exit codes: 0 success, 1 bad input or output file, 2 model error \
(unstable, infeasible, solver failure), 64 bad command line or configuration.")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expected request distance from a closed-form model, with solver details as JSON
    Analytic(AnalyticArgs),
    /// Monte Carlo estimate of the request distance per policy
    Simulate(SimulateArgs),
    /// Simulation next to the analytic prediction
    Compare(SimulateArgs),
    /// Writes the sweep CSVs of a figure preset
    Figure(FigureArgs),
    /// Runs a policy on an instance file and prints the assignment
    Match(MatchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelName {
    /// Pick the model from the laws
    Auto,
    /// Poisson users and servers, fixed capacity
    Bulk,
    /// Renewal users, Poisson servers
    Grps,
    /// Poisson users, renewal servers
    Prgs,
    /// Poisson users, random capacities
    Hetcap,
    /// Heavy-traffic estimate at unit capacity
    Heavy,
    /// Uncapacitated limit
    Limit,
    /// UGS request-distance density at unit capacity
    Density,
}

/// Laws and capacity shared by the analytic and simulation commands.
#[derive(Debug, Clone, Default, Args)]
pub struct ModelArgs {
    /// Density of Poisson users (users become exp:LAMBDA)
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Density of Poisson servers (servers become exp:MU)
    #[arg(long)]
    pub mu: Option<f64>,
    /// Capacity: C, unif:MAX or a pmf p1,p2,... [default: 1]
    #[arg(long = "c", visible_alias = "capacity")]
    pub capacity: Option<CapacitySpec>,
    /// Gap law between users: exp:RATE, det:VALUE, unif:MAX or h2:CV2[:MEAN]
    #[arg(long, visible_alias = "user")]
    pub users: Option<DistanceDistribution>,
    /// Gap law between servers, same forms as --users
    #[arg(long, visible_alias = "server")]
    pub servers: Option<DistanceDistribution>,
}

#[derive(Debug, Args)]
pub struct AnalyticArgs {
    pub model: Option<ModelName>,
    #[command(flatten)]
    pub params: ModelArgs,
    /// Renewal side for `limit`: grps or prgs
    #[arg(long)]
    pub side: Option<Side>,
    /// Distances at which `density` is evaluated
    #[arg(long, value_delimiter = ',')]
    pub x: Vec<f64>,
    /// JSON experiment file; flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub params: ModelArgs,
    /// Users per trial [default: 100000]
    #[arg(long)]
    pub n_users: Option<usize>,
    /// Independent trials [default: 50]
    #[arg(long)]
    pub trials: Option<usize>,
    /// RNG seed; the value used is printed in the output header
    #[arg(long)]
    pub seed: Option<u64>,
    /// Policies to compare, comma-separated: mtr, ugs, gs, optimal [default: mtr]
    #[arg(long, visible_alias = "policy", value_delimiter = ',')]
    pub policies: Vec<Policy>,
    /// Fixed number of servers per trial instead of drawing until all users are matched
    #[arg(long)]
    pub server_count: Option<usize>,
    /// Sweep this axis: load, capacity, uniform-capacity, server-cv2 or user-cv2
    #[arg(long)]
    pub sweep: Option<SweepAxis>,
    /// Axis values for --sweep
    #[arg(long, value_delimiter = ',')]
    pub values: Vec<f64>,
    /// Analytic column of a sweep: exact or heavy-traffic [default: exact]
    #[arg(long, value_parser = parse_estimate)]
    pub estimate: Option<Estimate>,
    /// Output CSV file [default: stdout]
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Worker threads [default: all cores]
    #[arg(long)]
    pub jobs: Option<usize>,
    /// JSON experiment file; flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Figure id: 3, 5, 6, 7, 8 or 9 (9a, 9b)
    pub id: Option<String>,
    /// Panel of figure 9: a or b [default: both]
    #[arg(long)]
    pub part: Option<String>,
    /// Multiplier on the 100000 users per trial
    #[arg(long)]
    pub scale: Option<f64>,
    /// RNG seed; the value used is printed in every header
    #[arg(long)]
    pub seed: Option<u64>,
    /// Independent trials per point [default: 50]
    #[arg(long)]
    pub trials: Option<usize>,
    /// Directory for the CSV files [default: .]
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Worker threads [default: all cores]
    #[arg(long)]
    pub jobs: Option<usize>,
    /// JSON experiment file; flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MatchArgs {
    /// CSV with columns role,position,capacity
    pub instance: PathBuf,
    /// mtr, ugs, gs, optimal or brute
    #[arg(long, default_value = "optimal")]
    pub policy: Policy,
    /// Assignment CSV file [default: stdout]
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

fn parse_estimate(s: &str) -> Result<Estimate, String> {
    match s {
        "exact" => Ok(Estimate::Exact),
        "heavy-traffic" | "heavy" => Ok(Estimate::HeavyTraffic),
        other => Err(format!("unknown estimate {other:?}; expected exact or heavy-traffic")),
    }
}
