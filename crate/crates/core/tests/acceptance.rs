//! Acceptance checks. Each test prints one `PASS`/`FAIL` line and then
//! asserts; run with `--nocapture` to see the report.

use std::time::{Duration, Instant};

use linealloc::analytic::{
    heavy_traffic_estimate, predict, prgs_solve, ugs_distance_density, uncapacitated_expected_distance, BulkMM1Model,
    GrpsModel, HetCapModel, PrgsModel, Side,
};
use linealloc::distributions::{h2_from_cv, CapacitySpec, DistanceDistribution};
use linealloc::numerics::{integrate, integrate_to_infinity};
use linealloc::policies::{brute_force_optimal, gale_shapley, gs_worst_case, optimal_dp, ugs, Policy, SpatialInstance};
use linealloc::simulate::{
    generate_instance, profiles_agree, run, sweep, variance_comparison, verify_theorem1, Estimate, Figure,
    FigureOptions, SimConfig, SweepAxis,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: u32, title: &str, pass: bool, detail: String) {
    println!("AC{id} {} {title}: {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "AC{id} {title}: {detail}");
}

fn exp(rate: f64) -> DistanceDistribution {
    DistanceDistribution::exponential(rate).unwrap()
}

fn det(value: f64) -> DistanceDistribution {
    DistanceDistribution::deterministic(value).unwrap()
}

fn unif_mean(mean: f64) -> DistanceDistribution {
    DistanceDistribution::uniform(2.0 * mean).unwrap()
}

fn h2(mean: f64) -> DistanceDistribution {
    h2_from_cv(4.0, mean).unwrap()
}

fn four_laws() -> Vec<DistanceDistribution> {
    vec![exp(1.0), det(1.0), unif_mean(1.0), h2(1.0)]
}

#[test]
fn ac01_mm1_exactness() {
    let start = Instant::now();
    let cfg = SimConfig::new(1_000_000, exp(0.5), exp(1.0), CapacitySpec::Fixed(1)).with_trials(1);
    let mean = run(&cfg).unwrap().policies[0].mean_distance;
    let elapsed = start.elapsed();
    let rel = (mean - 2.0).abs() / 2.0;
    report(
        1,
        "M/M/1 exactness",
        rel < 0.01 && elapsed < Duration::from_secs(10),
        format!("MTR mean {mean:.5} vs 2.0 (rel {rel:.2e}), {elapsed:.2?}"),
    );
}

#[test]
fn ac02_bulk_service_match() {
    // μ r³ − (λ + μ) r + λ = (r − 1)(r² + r − 1/2) at λ = 1/2, μ = 1
    let r0 = (3f64.sqrt() - 1.0) / 2.0;
    let oracle = r0 / (0.5 * (1.0 - r0));
    let analytic = BulkMM1Model::new(0.5, 1.0, 2).unwrap().expected_distance().unwrap();
    let cfg = SimConfig::new(1_000_000, exp(0.5), exp(1.0), CapacitySpec::Fixed(2)).with_trials(1);
    let sim = run(&cfg).unwrap().policies[0].mean_distance;
    let rel = (sim - analytic).abs() / analytic;
    report(
        2,
        "bulk-service match",
        (analytic - oracle).abs() < 1e-12 && (analytic - 1.154701).abs() < 1e-6 && rel < 0.02,
        format!("analytic {analytic:.9} (oracle {oracle:.9}), simulated {sim:.5} (rel {rel:.2e})"),
    );
}

#[test]
fn ac03_reduction_lattice() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for lambda in [0.3, 0.5, 0.8] {
        for c in [1u32, 2, 4] {
            let bulk = BulkMM1Model::new(lambda, 1.0, c).unwrap().expected_distance().unwrap();
            let grps = GrpsModel::new(exp(lambda), 1.0, c).unwrap().solve().unwrap().expected_distance;
            let prgs = prgs_solve(&PrgsModel::new(lambda, exp(1.0), c).unwrap()).unwrap().expected_distance;
            let mut pmf = vec![0.0; c as usize];
            pmf[c as usize - 1] = 1.0;
            let het = HetCapModel::new(lambda, exp(1.0), pmf).unwrap().solve().unwrap().expected_distance;
            for v in [grps, prgs, het] {
                worst = worst.max((v - bulk).abs());
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        3,
        "reduction lattice",
        worst < 1e-8 && elapsed < Duration::from_secs(1),
        format!("max deviation {worst:.2e} over 9 points, {elapsed:.2?}"),
    );
}

#[test]
fn ac04_pollaczek_khinchine_reduction() {
    let lambda = 0.6;
    let mut worst: f64 = 0.0;
    for d in [det(1.0), unif_mean(1.0), h2(1.0)] {
        let rho = lambda * d.mean();
        // ordinary first service: empty probability 1 − ρ and the P-K mean
        let plain = prgs_solve(&PrgsModel::new(lambda, d.clone(), 1).unwrap().without_exceptional_first()).unwrap();
        worst = worst.max((plain.coefficients[0] / lambda - (1.0 - rho)).abs());
        let pk = rho + lambda * lambda * d.second_moment() / (2.0 * (1.0 - rho));
        worst = worst.max((plain.mean_in_system - pk).abs());
        // exceptional first service
        let s = prgs_solve(&PrgsModel::new(lambda, d.clone(), 1).unwrap()).unwrap();
        let rho_z = lambda * s.exceptional().mean();
        worst = worst.max((s.coefficients[0] / lambda - (1.0 - rho) / (1.0 - rho + rho_z)).abs());
    }
    let mm1 = prgs_solve(&PrgsModel::new(lambda, exp(1.0), 1).unwrap().without_exceptional_first()).unwrap();
    let mm1_err = (mm1.expected_distance - 1.0 / (1.0 - lambda)).abs();
    report(
        4,
        "Pollaczek-Khinchine reduction",
        worst < 1e-10 && mm1_err < 1e-10,
        format!("max deviation {worst:.2e} (det, unif, H2), exponential {mm1_err:.2e}"),
    );
}

#[test]
fn ac05_load_profiles_agree() {
    let tiny = SpatialInstance::with_capacity(vec![0.0, 0.1], vec![0.2, 0.3], 1).unwrap();
    let mut mismatches = usize::from(!profiles_agree(&tiny).unwrap());
    let mut lines = Vec::new();
    for cap in [CapacitySpec::Fixed(1), CapacitySpec::Fixed(3), CapacitySpec::uniform(3).unwrap()] {
        let cfg = SimConfig::new(200, exp(0.8 * cap.mean()), exp(1.0), cap.clone());
        let r = verify_theorem1(&cfg, 1000).unwrap();
        mismatches += r.mismatches.len();
        lines.push(format!("{cap}: {}/{}", r.instances - r.mismatches.len(), r.instances));
    }
    report(
        5,
        "UGS and MTR load profiles",
        mismatches == 0,
        format!("{} equal; {mismatches} mismatches", lines.join(", ")),
    );
}

#[test]
fn ac06_dp_optimality() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut checked, mut mismatches) = (0, 0);
    while checked < 500 {
        let n = rng.random_range(1..=6);
        let m = rng.random_range(1..=9);
        let mut users: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..10.0)).collect();
        let mut servers: Vec<f64> = (0..m).map(|_| rng.random_range(0.0..10.0)).collect();
        users.sort_by(f64::total_cmp);
        servers.sort_by(f64::total_cmp);
        let caps: Vec<u32> = (0..m).map(|_| rng.random_range(1..=3)).collect();
        let inst = SpatialInstance::new(users, servers, caps).unwrap();
        if inst.total_capacity() < n {
            continue;
        }
        checked += 1;
        let dp = optimal_dp(&inst).unwrap().total_cost;
        let bf = brute_force_optimal(&inst).unwrap().total_cost;
        if (dp - bf).abs() > 1e-9 {
            mismatches += 1;
        }
    }

    let mut x = 0.0;
    let users: Vec<f64> = (0..10_000)
        .map(|_| {
            x += rng.random_range(0.0..2.0);
            x
        })
        .collect();
    let span = x;
    let mut servers: Vec<f64> = (0..11_000).map(|_| rng.random_range(0.0..span)).collect();
    servers.sort_by(f64::total_cmp);
    let big = SpatialInstance::with_capacity(users, servers, 1).unwrap();
    let start = Instant::now();
    let a = optimal_dp(&big).unwrap();
    let elapsed = start.elapsed();
    report(
        6,
        "DP optimality",
        mismatches == 0 && a.matched_count() == 10_000 && elapsed < Duration::from_secs(1),
        format!("{checked} instances, {mismatches} mismatches; |R|=10^4, |S|=1.1·10^4 in {elapsed:.2?}"),
    );
}

#[test]
fn ac07_ugs_distance_density() {
    let (lambda, mu) = (0.5, 1.0);
    let f = |x: f64| ugs_distance_density(lambda, mu, x);
    let mass = integrate(&f, 0.0, 20.0, 1e-13).unwrap() + integrate_to_infinity(&f, 20.0, 20.0, 1e-13).unwrap();
    let g = |x: f64| x * ugs_distance_density(lambda, mu, x);
    let mean = integrate(&g, 0.0, 20.0, 1e-13).unwrap() + integrate_to_infinity(&g, 20.0, 20.0, 1e-13).unwrap();
    let mean_err = (mean - 1.0 / (mu - lambda)).abs();

    let cfg = SimConfig::new(1_000_000, exp(lambda), exp(mu), CapacitySpec::Fixed(1));
    let inst = generate_instance(&cfg, 0).unwrap();
    let mut d: Vec<f64> = ugs(&inst).matched_distances().collect();
    d.sort_by(f64::total_cmp);
    // tabulated CDF, linear within cells of width h
    let h = 0.002;
    let cells = (d[d.len() - 1] / h).ceil() as usize + 1;
    let mut table = vec![0.0; cells + 1];
    for k in 0..cells {
        table[k + 1] = table[k] + integrate(&f, k as f64 * h, (k + 1) as f64 * h, 1e-14).unwrap();
    }
    let cdf = |x: f64| {
        let k = ((x / h) as usize).min(cells - 1);
        let t = x / h - k as f64;
        table[k] + t * (table[k + 1] - table[k])
    };
    let n = d.len() as f64;
    let ks = d
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let c = cdf(x);
            (c - i as f64 / n).abs().max(((i + 1) as f64 / n - c).abs())
        })
        .fold(0.0, f64::max);
    report(
        7,
        "UGS distance density",
        (mass - 1.0).abs() < 1e-6 && mean_err < 1e-5 && ks < 0.01 && d.len() >= 1_000_000,
        format!("mass {mass:.9}, mean error {mean_err:.2e}, Kolmogorov distance {ks:.5} over {} samples", d.len()),
    );
}

#[test]
fn ac08_uncapacitated_limits() {
    let mut worst: f64 = 0.0;
    let mut lines = Vec::new();
    for law in four_laws() {
        let grps_law = law.rescaled(2.0).unwrap();
        let g = GrpsModel::new(grps_law, 1.0, 64).unwrap().solve().unwrap().expected_distance;
        let g_lim = uncapacitated_expected_distance(Side::Grps, &exp(1.0));
        let p = prgs_solve(&PrgsModel::new(0.5, law.clone(), 64).unwrap()).unwrap().expected_distance;
        let p_lim = uncapacitated_expected_distance(Side::Prgs, &law);
        let (eg, ep) = ((g - g_lim).abs() / g_lim, (p - p_lim).abs() / p_lim);
        worst = worst.max(eg).max(ep);
        lines.push(format!("{law}: grps {eg:.1e}, prgs {ep:.1e}"));
    }
    report(8, "uncapacitated limits", worst < 0.01, format!("relative errors at c=64: {}", lines.join("; ")));
}

#[test]
fn ac09_heavy_traffic_ratio() {
    let start = Instant::now();
    let opts = FigureOptions::default();
    let mut ok = true;
    let mut lines = Vec::new();
    for s in Figure::HeavyTraffic.sweeps(&opts).unwrap() {
        assert_eq!((s.template.n_users, s.template.trials), (100_000, 50));
        let table = sweep(&s.template, SweepAxis::Load, &[0.5, 0.98], Estimate::HeavyTraffic);
        let rows = table.series("mtr");
        assert_eq!(rows.len(), 2, "{:?}", table.failures);
        let (low, high) = (rows[0].ratio.unwrap(), rows[1].ratio.unwrap());
        ok &= (high - 1.0).abs() < 0.1 && (high - 1.0).abs() < (low - 1.0).abs();
        // the estimate against the exact steady-state model, for context
        let at = SweepAxis::Load.apply(&s.template, 0.98).unwrap();
        let exact = predict(&at.users, &at.servers, &at.capacity).unwrap().expected_distance;
        let estimate = heavy_traffic_estimate(&at.users, &at.servers).unwrap();
        lines.push(format!(
            "{}: ratio {low:.4} at 0.5, {high:.4} at 0.98 (estimate/exact model {:.4})",
            s.template.servers,
            estimate / exact
        ));
    }
    let elapsed = start.elapsed();
    report(
        9,
        "heavy-traffic ratio",
        ok && elapsed < Duration::from_secs(120),
        format!("{}; {elapsed:.2?}", lines.join("; ")),
    );
}

#[test]
fn ac10_figure_trends() {
    let mut failures = Vec::new();
    let loads = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

    // load ordering at c = 2, analytic and simulated
    let opts = FigureOptions { scale: 0.2, trials: 20, ..Default::default() };
    let fig5: Vec<_> = Figure::Load.sweeps(&opts).unwrap().iter().map(|s| s.run()).collect();
    let (e, d, h) = (fig5[0].series("mtr"), fig5[1].series("mtr"), fig5[2].series("mtr"));
    for k in 0..loads.len() {
        let a = |t: &linealloc::simulate::SweepRow| t.analytic_value.unwrap();
        if !(d[k].mean_distance < e[k].mean_distance && e[k].mean_distance < h[k].mean_distance) {
            failures.push(format!("fig5 simulated ordering at ρ={}", loads[k]));
        }
        if !(a(d[k]) < a(e[k]) && a(e[k]) < a(h[k])) {
            failures.push(format!("fig5 analytic ordering at ρ={}", loads[k]));
        }
    }

    // server variability hurts more than user variability
    for cv2 in [2.0, 4.0, 8.0] {
        let m_h2 = predict(&exp(1.0), &h2_from_cv(cv2, 1.0).unwrap(), &CapacitySpec::Fixed(2)).unwrap();
        let h2_m = predict(&h2_from_cv(cv2, 1.0).unwrap(), &exp(1.0), &CapacitySpec::Fixed(2)).unwrap();
        if m_h2.expected_distance < h2_m.expected_distance {
            failures.push(format!("fig6 at cv²={cv2}"));
        }
    }

    // capacity at fixed load
    for servers in [exp(1.0), det(1.0), h2(1.0)] {
        let values: Vec<f64> = (1..=16)
            .map(|c| predict(&exp(0.8 * c as f64), &servers, &CapacitySpec::Fixed(c)).unwrap().expected_distance)
            .collect();
        if values.windows(2).any(|w| w[1] > w[0] + 1e-12) {
            failures.push(format!("fig7 monotonicity for {servers}: {values:?}"));
        }
    }

    // policy ordering at c = 1
    let template =
        SimConfig::new(20_000, exp(0.5), exp(1.0), CapacitySpec::Fixed(1)).with_trials(10).with_policies(&Policy::ALL);
    let table = sweep(&template, SweepAxis::Load, &loads, Estimate::Exact);
    let (m, g, o) = (table.series("mtr"), table.series("gs"), table.series("optimal"));
    for k in 0..loads.len() {
        if !(o[k].mean_distance <= g[k].mean_distance && g[k].mean_distance <= m[k].mean_distance) {
            failures.push(format!("fig9a ordering at ρ={}", loads[k]));
        }
    }
    report(
        10,
        "figure trends",
        failures.is_empty(),
        if failures.is_empty() {
            "fig5 det<exp<H2 at 9 loads (analytic and simulated), fig6 M/H2≥H2/M, fig7 nonincreasing, fig9a optimal≤GS≤MTR".into()
        } else {
            failures.join("; ")
        },
    );
}

#[test]
fn ac11_heterogeneous_capacity() {
    let pmf = CapacitySpec::uniform(4).unwrap();
    let lambda = 0.8 * pmf.mean();
    let mut ok = true;
    let mut lines = Vec::new();
    for servers in [det(1.0), h2(1.0)] {
        let analytic = predict(&exp(lambda), &servers, &pmf).unwrap().expected_distance;
        let cfg = SimConfig::new(100_000, exp(lambda), servers.clone(), pmf.clone());
        let p = run(&cfg).unwrap().policies[0].clone();
        let z = (analytic - p.mean_distance) / p.stderr;
        ok &= z.abs() < 2.0;
        lines.push(format!(
            "{servers}: analytic {analytic:.5}, simulated {:.5} ± {:.5} (z {z:+.2})",
            p.mean_distance, p.stderr
        ));
    }
    report(11, "heterogeneous capacity", ok, lines.join("; "));
}

#[test]
fn ac12_fairness() {
    let cfg = SimConfig::new(10_000, exp(0.8), exp(1.0), CapacitySpec::Fixed(1)).with_trials(100);
    let r = variance_comparison(&cfg).unwrap();
    report(
        12,
        "fairness",
        r.fraction() >= 0.95,
        format!("Var(MTR) ≤ Var(UGS) in {}/{} trials", r.mtr_not_above, r.trials),
    );
}

#[test]
fn ac13_gs_worst_case() {
    let ratios: Vec<f64> = (3..=7)
        .map(|t| {
            let inst = gs_worst_case(t);
            gale_shapley(&inst).total_cost / optimal_dp(&inst).unwrap().total_cost
        })
        .collect();
    report(
        13,
        "GS worst case",
        ratios.windows(2).all(|w| w[1] > w[0]),
        format!("GS/optimal for t=3..7: {}", ratios.iter().map(|r| format!("{r:.4}")).collect::<Vec<_>>().join(", ")),
    );
}
