use std::path::Path;

use num_complex::Complex64;
use planar::{
    correlation_sequence, density, eigen_residual, printed_s_matrix, random_state, real_spectrum, rng, s_eigenpairs,
    s_matrix, Report, SiteModel,
};
use q4core::ChartPoint;
use serde::Serialize;

use crate::args::{HamCmd, MomentaArgs};
use crate::config::{site_model, Loop, RunConfig};
use crate::error::{CliError, Result};
use crate::output::emit;

type C = Complex64;

/// Cauchy bound on the last step of each rescaled correlation subsequence.
pub const CAUCHY_TOL: f64 = 1e-6;
/// How well `𝓢(h)` lies in the span of `1, E, H`.
pub const FIT_TOL: f64 = 1e-10;

#[derive(Serialize)]
struct SMatrixOut {
    oracle: [[C; 3]; 3],
    closed_form: [[f64; 3]; 3],
    fit_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenEntry {
    pub eigenvalue: f64,
    pub closed_form: f64,
    pub vector: [f64; 3],
    /// Smallest and largest eigenvalue of the density built from `vector`.
    pub density_range: [f64; 2],
}

#[derive(Serialize)]
struct MomentaOut {
    even: Vec<C>,
    odd: Vec<C>,
    even_limit: C,
    odd_limit: C,
    limit_points: [ChartPoint; 2],
    last_steps: [f64; 2],
    limit_gap: f64,
}

/// `{2, (d−2)²/(d−1)², 1/(d−1)²}`.
pub fn closed_form_eigenvalues(d: f64) -> [f64; 3] {
    [2.0, (d - 2.0).powi(2) / (d - 1.0).powi(2), 1.0 / (d - 1.0).powi(2)]
}

/// Eigenpairs of the scale map (from its closed-form matrix) with checks
/// against the oracle matrix and the spectra of the eigen-densities.
pub fn eigen_checks(model: &SiteModel, d: f64, tol: f64, seed: u64) -> Result<(Vec<EigenEntry>, Vec<Report>)> {
    let printed = printed_s_matrix(d);
    let oracle = s_matrix(model).0.map(|z| z.re);
    let want = closed_form_eigenvalues(d);
    let mut entries = Vec::new();
    let mut checks = Vec::new();
    for (k, (l, v)) in s_eigenpairs(&printed).iter().enumerate() {
        checks.push(
            Report::new(
                format!("hamiltonian.eigenvalue.{k}"),
                0,
                (l - want[k]).abs(),
                1e-10,
                seed,
            )
            .with_param("d", d),
        );
        checks.push(
            Report::new(
                format!("hamiltonian.eigenvector.{k}"),
                0,
                eigen_residual(&oracle, *l, v),
                tol.max(1e-10),
                seed,
            )
            .with_param("d", d),
        );
        let spec = real_spectrum(&density(model, v), 1e-9)?;
        let range = [spec[0], spec[spec.len() - 1]];
        if k > 0 {
            // Indefinite: both ends strictly away from zero on opposite sides.
            checks.push(
                Report::above(
                    format!("hamiltonian.indefinite.{k}"),
                    0,
                    (-range[0]).min(range[1]),
                    0.0,
                    seed,
                )
                .with_param("d", d),
            );
        }
        entries.push(EigenEntry {
            eigenvalue: *l,
            closed_form: want[k],
            vector: [v[0], v[1], v[2]],
            density_range: range,
        });
    }
    Ok((entries, checks))
}

/// Entrywise distance between the oracle and closed-form scale matrices, and
/// the fit residual of the oracle.
pub fn s_matrix_checks(
    model: &SiteModel,
    d: f64,
    tol: f64,
    seed: u64,
) -> (Vec<Report>, [[C; 3]; 3], [[f64; 3]; 3], f64) {
    let (s, fit) = s_matrix(model);
    let p = printed_s_matrix(d);
    let mut worst: f64 = 0.0;
    let mut oracle = [[C::new(0.0, 0.0); 3]; 3];
    let mut closed = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            worst = worst.max((s[(i, j)] - C::new(p[(i, j)], 0.0)).norm());
            oracle[i][j] = s[(i, j)];
            closed[i][j] = p[(i, j)];
        }
    }
    let checks = vec![
        Report::new("hamiltonian.s_matrix", 0, worst, tol, seed).with_param("d", d),
        Report::new("hamiltonian.s_fit", 0, fit, FIT_TOL, seed).with_param("d", d),
    ];
    (checks, oracle, closed, fit)
}

pub fn run(cmd: &HamCmd, seed: u64, out: Option<&Path>) -> Result<Vec<String>> {
    match cmd {
        HamCmd::SMatrix { lp } => {
            let l = Loop::from_args(lp)?;
            let d = l.real()?;
            let (model, tol) = site_model(d)?;
            let cfg = RunConfig::new("hamiltonian s-matrix", seed).with_loop(&l);
            let (checks, oracle, closed_form, fit_residual) = s_matrix_checks(&model, d, tol, seed);
            emit(
                out,
                &cfg,
                &checks,
                SMatrixOut {
                    oracle,
                    closed_form,
                    fit_residual,
                },
            )
        }
        HamCmd::Eigs { lp } => {
            let l = Loop::from_args(lp)?;
            let d = l.real()?;
            let (model, tol) = site_model(d)?;
            let cfg = RunConfig::new("hamiltonian eigs", seed).with_loop(&l);
            let (entries, checks) = eigen_checks(&model, d, tol, seed)?;
            emit(out, &cfg, &checks, entries)
        }
    }
}

pub fn momenta(args: &MomentaArgs, seed: u64, out: Option<&Path>) -> Result<Vec<String>> {
    let l = Loop::from_args(&args.lp)?;
    let d = l.real()?;
    if args.sites == 0 || args.sites % 2 == 1 || args.sites > 6 {
        return Err(CliError::Flag("--sites must be 2, 4 or 6".into()));
    }
    let (model, _) = site_model(d)?;
    let cfg = RunConfig::new("momenta", seed)
        .with_loop(&l)
        .param("sites", args.sites as f64)
        .param("steps", args.steps as f64)
        .param("offset", args.offset as f64);
    let dim = model.n().pow(args.sites as u32);
    let mut r = rng(seed);
    let xi = random_state(&mut r, dim);
    let eta = random_state(&mut r, dim);
    let corr = correlation_sequence(&model, args.sites, &xi, &eta, args.steps, args.offset)?;
    let (de, dodd) = corr.last_steps();
    let checks = [
        Report::new("momenta.cauchy_even", args.sites, de, CAUCHY_TOL, seed),
        Report::new("momenta.cauchy_odd", args.sites, dodd, CAUCHY_TOL, seed),
    ];
    let result = MomentaOut {
        limit_gap: (corr.even_limit - corr.odd_limit).norm(),
        even: corr.even,
        odd: corr.odd,
        even_limit: corr.even_limit,
        odd_limit: corr.odd_limit,
        limit_points: corr.limit_points,
        last_steps: [de, dodd],
    };
    emit(out, &cfg, &checks, result)
}
