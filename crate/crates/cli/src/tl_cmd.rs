use std::path::Path;

use planar::Report;
use serde::Serialize;
use tloracle::{commute_residual, scan_conventions, ybe_residual, Cable, LabelMode, YbeConvention};

use crate::args::{Mode, TlCmd};
use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::output::emit;

pub const YBE_TOL: f64 = 1e-8;
pub const COMMUTE_TOL: f64 = 1e-8;

#[derive(Serialize)]
struct ScanEntry {
    convention: YbeConvention,
    /// `null` when the middle parameter hits a pole.
    residual: Option<f64>,
}

#[derive(Serialize)]
struct YbeOut {
    convention: YbeConvention,
    residual: f64,
    scan: Vec<ScanEntry>,
}

#[derive(Serialize)]
struct CommuteOut {
    mode: LabelMode,
    sites: usize,
    residual: f64,
}

pub fn cable(delta: f64) -> Result<Cable> {
    Cable::new(delta).map_err(|e| CliError::Flag(format!("delta = {delta}: {e}")))
}

pub fn label_mode(m: Mode) -> LabelMode {
    match m {
        Mode::Uniform => LabelMode::Uniform,
        Mode::Tree => LabelMode::Tree,
    }
}

pub fn run(cmd: &TlCmd, seed: u64, out: Option<&Path>) -> Result<Vec<String>> {
    match cmd {
        TlCmd::Ybe {
            delta,
            lambda,
            mu,
            scan,
        } => {
            let cab = cable(*delta)?;
            let cfg = RunConfig::new("tl ybe", seed)
                .param("delta", *delta)
                .complex("lambda", *lambda)
                .complex("mu", *mu);
            let conv = YbeConvention::DISCOVERED;
            let residual = ybe_residual(*lambda, *mu, &cab, conv)?;
            let checks = [Report::new("tl.ybe", 3, residual, YBE_TOL, seed)
                .with_complex("lambda", *lambda)
                .with_complex("mu", *mu)];
            let scan = if *scan {
                scan_conventions(*lambda, *mu, &cab)
                    .into_iter()
                    .map(|(convention, r)| ScanEntry {
                        convention,
                        residual: r.is_finite().then_some(r),
                    })
                    .collect()
            } else {
                Vec::new()
            };
            emit(
                out,
                &cfg,
                &checks,
                YbeOut {
                    convention: conv,
                    residual,
                    scan,
                },
            )
        }
        TlCmd::Commute {
            delta,
            lambda,
            mu,
            sites,
            mode,
        } => {
            let cab = cable(*delta)?;
            if !(2..=4).contains(sites) || (*mode == Mode::Tree && *sites == 3) {
                return Err(CliError::Flag(
                    "--sites must be 2 or 4 (or 3 with --mode uniform)".into(),
                ));
            }
            let cfg = RunConfig::new("tl commute", seed)
                .param("delta", *delta)
                .complex("lambda", *lambda)
                .complex("mu", *mu)
                .param("sites", *sites as f64);
            let mode = label_mode(*mode);
            let residual = commute_residual(*lambda, *mu, &cab, *sites, mode)?;
            let checks = [Report::new("tl.commute", *sites, residual, COMMUTE_TOL, seed)
                .with_complex("lambda", *lambda)
                .with_complex("mu", *mu)];
            emit(
                out,
                &cfg,
                &checks,
                CommuteOut {
                    mode,
                    sites: *sites,
                    residual,
                },
            )
        }
    }
}
