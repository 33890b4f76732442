use std::path::{Path, PathBuf};

use dynsys::{coalescence_scan, fixed_points, iterate, portrait, Attractor, FixedPointReport, SearchBox, Stability};
use num_complex::Complex64;
use planar::Report;
use q4core::{chart, rotate_b, ChartPoint, LoopParam, Q4Vec};
use serde::Serialize;

use crate::args::{DynCmd, Format};
use crate::config::{Loop, RunConfig};
use crate::error::{CliError, Result};
use crate::output::{emit, write_json, writer};

/// Residual bound for a located fixed point of `F^period`.
pub const FIXED_POINT_TOL: f64 = 1e-10;

/// One fixed point as written to JSON.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPointJson {
    pub d: f64,
    pub period: usize,
    pub chart: [f64; 2],
    pub eigs: [Complex64; 2],
    pub class: Stability,
    pub residual: f64,
    pub tolerance: f64,
}

impl FixedPointJson {
    pub fn new(d: f64, f: &FixedPointReport) -> Self {
        Self {
            d,
            period: f.period,
            chart: [f.location.u, f.location.v],
            eigs: f.jacobian_eigs,
            class: f.class,
            residual: f.residual,
            tolerance: FIXED_POINT_TOL,
        }
    }
}

/// The JSON sidecar of a portrait.
#[derive(Debug, Serialize)]
pub struct PortraitSidecar {
    pub d: f64,
    pub seed: u64,
    pub b1: ChartPoint,
    pub b4: Option<ChartPoint>,
    pub fixed_points: Vec<FixedPointJson>,
    pub period_two: Vec<FixedPointJson>,
    pub attractors: Vec<Attractor>,
}

#[derive(Serialize)]
struct PortraitOut {
    csv: String,
    sidecar: String,
    rows: usize,
    attractors: Vec<String>,
}

#[derive(Serialize)]
struct CoalesceOut {
    d: f64,
    d_min: f64,
    d_max: f64,
    tol: f64,
}

/// `b4 = 𝓕(b1)` in the chart, when it is finite.
pub fn b4_point(lp: &LoopParam<f64>) -> Option<ChartPoint> {
    rotate_b(&Q4Vec::b1(), lp).ok().and_then(|x| chart(&x).ok())
}

fn point_checks(fps: &[FixedPointReport], period: usize, seed: u64) -> Vec<Report> {
    fps.iter()
        .enumerate()
        .map(|(i, f)| {
            Report::new(
                format!("dynsys.fixed_point.p{period}.{i}"),
                0,
                f.residual,
                FIXED_POINT_TOL,
                seed,
            )
            .with_param("u", f.location.u)
            .with_param("v", f.location.v)
        })
        .collect()
}

fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

pub fn run(cmd: &DynCmd, seed: u64, out: Option<&Path>, format: Format) -> Result<Vec<String>> {
    match cmd {
        DynCmd::Orbit { lp, u, v, steps } => {
            let l = Loop::from_args(lp)?;
            let d = l.real()?;
            let cfg = RunConfig::new("dynsys orbit", seed)
                .with_loop(&l)
                .param("u", *u)
                .param("v", *v)
                .param("steps", *steps as f64);
            let orbit = iterate(ChartPoint::new(*u, *v), &LoopParam::new(d), *steps);
            match format {
                Format::Json => emit(out, &cfg, &[], orbit),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(writer(out)?);
                    w.write_record(["step", "u", "v"])?;
                    for (n, p) in orbit.points.iter().enumerate() {
                        w.write_record([n.to_string(), p.u.to_string(), p.v.to_string()])?;
                    }
                    w.flush()?;
                    Ok(Vec::new())
                }
            }
        }
        DynCmd::FixedPoints { lp, period, grid } => {
            let l = Loop::from_args(lp)?;
            let d = l.real()?;
            if *period == 0 {
                return Err(CliError::Flag("--period must be at least 1".into()));
            }
            let cfg = RunConfig::new("dynsys fixed-points", seed)
                .with_loop(&l)
                .param("period", *period as f64)
                .param("lo", grid.lo)
                .param("hi", grid.hi)
                .param("step", grid.step);
            let fps = fixed_points(&LoopParam::new(d), *period, SearchBox::new(grid.lo, grid.hi, grid.step));
            let checks = point_checks(&fps, *period, seed);
            let list: Vec<FixedPointJson> = fps.iter().map(|f| FixedPointJson::new(d, f)).collect();
            emit(out, &cfg, &checks, list)
        }
        DynCmd::Portrait {
            lp,
            lo,
            hi,
            step,
            steps,
        } => {
            let l = Loop::from_args(lp)?;
            let d = l.real()?;
            let Some(csv_path) = out else {
                return Err(CliError::Flag("`dynsys portrait` needs --out <file.csv>".into()));
            };
            let lpr = LoopParam::new(d);
            let grid = SearchBox::new(*lo, *hi, *step).points();
            let p = portrait(&lpr, &grid, *steps, b4_point(&lpr));
            p.write_csv(writer(Some(csv_path))?)?;
            let mut checks = point_checks(&p.fixed_points, 1, seed);
            checks.extend(point_checks(&p.period_two, 2, seed));
            let side = PortraitSidecar {
                d,
                seed,
                b1: p.b1,
                b4: p.b4,
                fixed_points: p.fixed_points.iter().map(|f| FixedPointJson::new(d, f)).collect(),
                period_two: p.period_two.iter().map(|f| FixedPointJson::new(d, f)).collect(),
                attractors: p.attractors.clone(),
            };
            let side_path = sidecar_path(csv_path);
            write_json(Some(&side_path), &side)?;
            let cfg = RunConfig::new("dynsys portrait", seed)
                .with_loop(&l)
                .param("lo", *lo)
                .param("hi", *hi)
                .param("step", *step)
                .param("steps", *steps as f64);
            let summary = PortraitOut {
                csv: csv_path.display().to_string(),
                sidecar: side_path.display().to_string(),
                rows: p.rows.len(),
                attractors: p.attractors.iter().map(|a| a.tag.clone()).collect(),
            };
            emit(None, &cfg, &checks, summary)
        }
        DynCmd::Coalesce { d_min, d_max, tol } => {
            let cfg = RunConfig::new("dynsys coalesce", seed)
                .param("d_min", *d_min)
                .param("d_max", *d_max)
                .param("tol", *tol);
            let d = coalescence_scan(*d_min, *d_max, *tol)?;
            emit(
                out,
                &cfg,
                &[],
                CoalesceOut {
                    d,
                    d_min: *d_min,
                    d_max: *d_max,
                    tol: *tol,
                },
            )
        }
    }
}
