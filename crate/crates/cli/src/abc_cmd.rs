use std::path::Path;

use abc::{
    alpha_relation_residual, d3_scaling_predicate, d3_solutions, family_z, scales_predicate, solve_unique_family,
    spectrum_a, verify_abc_eqs, AbcError, AbcTriple, D3Branch, D3Report, SpectralParams,
};
use num_complex::Complex64;
use planar::Report;
use q4core::{LoopParam, Scalar};
use serde::Serialize;

use crate::args::{AbcCmd, Branch};
use crate::config::{Loop, RunConfig};
use crate::error::{CliError, Result};
use crate::output::emit;

type C = Complex64;

pub const ABC_TOL: f64 = 1e-10;
pub const ALPHA_TOL: f64 = 1e-9;

/// Largest equation residual relative to `1 + ‖triple‖²`.
pub fn relative_abc_residual<S: Scalar>(t: &AbcTriple<S>, lp: &LoopParam<S>) -> Result<f64> {
    let r = verify_abc_eqs(t, lp)?;
    let n = t.norm();
    Ok(r.iter().map(|x| x.modulus()).fold(0.0, f64::max) / (1.0 + n * n))
}

fn d3_guard(e: AbcError) -> CliError {
    match e {
        AbcError::UseD3Branch => {
            CliError::Flag("d = 3 has no unique family; use `abc d3 --s <s>` for the line-pair solutions".into())
        }
        e => e.into(),
    }
}

#[derive(Serialize)]
struct FamilyOut {
    triple: AbcTriple<C>,
    spectral: SpectralParams,
    spectrum: [C; 3],
    scales_predicate: bool,
}

#[derive(Serialize)]
struct D3Out {
    triple: AbcTriple<f64>,
    scaling: Option<D3Report>,
}

pub fn run(cmd: &AbcCmd, seed: u64, out: Option<&Path>) -> Result<Vec<String>> {
    match cmd {
        AbcCmd::Solve { lp, a } => {
            let lp = Loop::from_args(lp)?;
            let cfg = RunConfig::new("abc solve", seed).with_loop(&lp).complex("a", *a);
            if lp.is_d3() {
                return Err(d3_guard(AbcError::UseD3Branch));
            }
            let lpc = lp.complex();
            let t = solve_unique_family(a, &lpc).map_err(d3_guard)?;
            let res = relative_abc_residual(&t, &lpc)?;
            let checks = [Report::new("abc.equations", 0, res, ABC_TOL, seed)];
            emit(out, &cfg, &checks, t)
        }
        AbcCmd::Family { lp, z, nmax } => {
            let lp = Loop::from_args(lp)?;
            let cfg = RunConfig::new("abc family", seed)
                .with_loop(&lp)
                .complex("z", *z)
                .param("nmax", *nmax as f64);
            let lpc = lp.complex();
            let t = family_z(*z, &lpc).map_err(d3_guard)?;
            let spectral = SpectralParams::from_z(*z, &lpc)?;
            let checks = [
                Report::new("abc.equations", 0, relative_abc_residual(&t, &lpc)?, ABC_TOL, seed),
                Report::new(
                    "abc.alpha_relation",
                    0,
                    alpha_relation_residual(*z, &lpc)?,
                    ALPHA_TOL,
                    seed,
                ),
                Report::new(
                    "abc.spectral_params",
                    0,
                    spectral.invariant_residual(&lpc),
                    ABC_TOL,
                    seed,
                ),
            ];
            let result = FamilyOut {
                triple: t,
                spectral,
                spectrum: spectrum_a(*z, &lpc)?,
                scales_predicate: scales_predicate(*z, &lpc, *nmax),
            };
            emit(out, &cfg, &checks, result)
        }
        AbcCmd::D3 { s, branch, nmax } => {
            let cfg = RunConfig::new("abc d3", seed)
                .param("d", 3.0)
                .param("s", *s)
                .param("branch", if *branch == Branch::One { 1.0 } else { 2.0 })
                .param("nmax", *nmax as f64);
            let b = match branch {
                Branch::One => D3Branch::One,
                Branch::Two => D3Branch::Two,
            };
            let t = d3_solutions(b, s)?;
            let res = relative_abc_residual(&t, &LoopParam::new(3.0))?;
            let checks = [Report::new("abc.d3_equations", 0, res, ABC_TOL, seed)];
            let scaling = (b == D3Branch::One).then(|| d3_scaling_predicate(*s, *nmax));
            emit(out, &cfg, &checks, D3Out { triple: t, scaling })
        }
    }
}
