use std::fs::File;
use std::io::{BufReader, Write};

use linealloc::policies::{allocate, read_instance, write_assignment};

use super::open_output;
use crate::args::MatchArgs;
use crate::error::{CliError, CliResult};

/// Writes the assignment CSV, then a summary comment line.
pub fn run(args: MatchArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let file = File::open(&args.instance).map_err(|source| CliError::File { path: args.instance.clone(), source })?;
    let inst = read_instance(BufReader::new(file))?;
    let a = allocate(args.policy, &inst)?;
    let mut out = open_output(args.output.as_deref(), stdout)?;
    write_assignment(&mut out, &inst, &a)?;
    let matched = a.matched_count();
    let mean = if matched == 0 { 0.0 } else { a.total_cost / matched as f64 };
    let summary = format!(
        "# policy: {}, total_cost: {}, mean_distance: {mean}, matched: {matched}/{}",
        a.policy,
        a.total_cost,
        inst.users().len()
    );
    writeln!(out, "{summary}")?;
    drop(out);
    if args.output.is_some() {
        writeln!(stdout, "{summary}")?;
    }
    Ok(())
}
