use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use planar::Report;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::Result;

/// Every JSON artifact: the run configuration, the checks performed with
/// their tolerances, and the command's result.
#[derive(Debug, Serialize)]
pub struct Envelope<'a, T> {
    #[serde(flatten)]
    pub config: &'a RunConfig,
    pub pass: bool,
    pub checks: &'a [Report],
    pub result: T,
}

pub fn writer(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn write_json<T: Serialize + ?Sized>(out: Option<&Path>, value: &T) -> Result<()> {
    let mut w = writer(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// Names of the checks that failed.
pub fn failures(checks: &[Report]) -> Vec<String> {
    checks.iter().filter(|r| !r.pass).map(|r| r.check.clone()).collect()
}

pub fn emit<T: Serialize>(out: Option<&Path>, config: &RunConfig, checks: &[Report], result: T) -> Result<Vec<String>> {
    let env = Envelope {
        config,
        pass: checks.iter().all(|r| r.pass),
        checks,
        result,
    };
    write_json(out, &env)?;
    Ok(failures(checks))
}
