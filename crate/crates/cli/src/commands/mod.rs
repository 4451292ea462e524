use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::args::Command;
use crate::error::{CliError, CliResult};

mod analytic;
mod figure;
mod matching;
mod simulate;

pub fn run(command: Command, stdout: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Analytic(a) => analytic::run(a, stdout),
        Command::Simulate(a) => simulate::run(a, false, stdout),
        Command::Compare(a) => simulate::run(a, true, stdout),
        Command::Figure(a) => figure::run(a, stdout),
        Command::Match(a) => matching::run(a, stdout),
    }
}

/// The file at `path`, created up front so an unwritable path fails before
/// any work is done, or `stdout`.
fn open_output<'a>(path: Option<&Path>, stdout: &'a mut dyn Write) -> CliResult<Box<dyn Write + 'a>> {
    match path {
        None => Ok(Box::new(stdout)),
        Some(p) => {
            let file = File::create(p).map_err(|source| CliError::File { path: p.to_path_buf(), source })?;
            Ok(Box::new(BufWriter::new(file)))
        }
    }
}
