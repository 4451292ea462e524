use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use linealloc::simulate::{with_jobs, Figure, FigureOptions, DEFAULT_SEED, DEFAULT_TRIALS};

use crate::args::FigureArgs;
use crate::config::{ExperimentSpec, Mode};
use crate::error::{usage, CliError, CliResult};

/// Figures named by an id and an optional panel; `9` alone means both panels.
fn resolve(id: &str, part: Option<&str>) -> CliResult<Vec<Figure>> {
    let id = id.trim_start_matches("fig");
    let full = match (id, part) {
        ("9", None) => return Ok(vec![Figure::PoliciesByLoad, Figure::PoliciesByCapacity]),
        ("9", Some(p)) => format!("9{p}"),
        (id, None) => id.to_string(),
        (id, Some(_)) => return Err(usage(format!("figure {id} has no parts"))),
    };
    full.parse::<Figure>().map(|f| vec![f]).map_err(|e| usage(e.to_string()))
}

/// Writes one CSV per sweep into the output directory and lists them.
pub fn run(args: FigureArgs, out: &mut dyn Write) -> CliResult<()> {
    let spec = ExperimentSpec::load(args.config.as_deref(), Mode::Figure)?;
    let id = args.id.or(spec.figure.clone()).ok_or_else(|| usage("missing figure id"))?;
    let figures = resolve(&id, args.part.as_deref().or(spec.part.as_deref()))?;
    let opts = FigureOptions {
        scale: args.scale.or(spec.scale).unwrap_or(1.0),
        seed: args.seed.or(spec.seed).unwrap_or(DEFAULT_SEED),
        trials: args.trials.or(spec.trials).unwrap_or(DEFAULT_TRIALS),
    };
    if !(opts.scale > 0.0 && opts.scale.is_finite()) {
        return Err(usage(format!("--scale {} must be positive", opts.scale)));
    }
    if opts.trials == 0 {
        return Err(usage("--trials must be positive"));
    }
    let dir = args.output.or(spec.output.clone()).unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).map_err(|source| CliError::File { path: dir.clone(), source })?;
    let jobs = args.jobs.or(spec.jobs);

    writeln!(out, "# seed: {}", opts.seed)?;
    for figure in figures {
        for sweep in figure.sweeps(&opts)? {
            let path = dir.join(format!("{}.csv", sweep.name));
            let file = File::create(&path).map_err(|source| CliError::File { path: path.clone(), source })?;
            let mut table = with_jobs(jobs, || sweep.run())?;
            if let Some(name) = &spec.name {
                table.header.insert(0, ("name".to_string(), name.clone()));
            }
            let mut w = BufWriter::new(file);
            table.write_csv(&mut w)?;
            w.flush()?;
            for (x, why) in &table.failures {
                eprintln!("warning: {} at {} = {x} skipped: {why}", sweep.name, sweep.axis);
            }
            writeln!(out, "{} ({} rows)", path.display(), table.rows.len())?;
        }
    }
    Ok(())
}
