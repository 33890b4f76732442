use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::complex::parse_complex;

type C = Complex64;

fn complex_arg(s: &str) -> Result<C, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "renorm",
    version,
    about = "Solvers, renormalisation dynamics and verification suites for 4-box transfer matrices"
)]
pub struct Cli {
    /// Seed for all random draws; echoed in every output.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file (stdout when absent). For `dynsys portrait` this is the CSV
    /// path and a `.json` sidecar is written next to it.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Exactly one of `--d` and `--omega`; the other follows from
/// `d = ω + ω⁻¹ + 1`.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct LoopArgs {
    /// Loop value.
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub d: Option<C>,
    /// Deformation parameter.
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub omega: Option<C>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solutions of the ABC equation.
    #[command(subcommand)]
    Abc(AbcCmd),
    /// The renormalisation map on the chart `(q/p, r/p)`.
    #[command(subcommand)]
    Dynsys(DynCmd),
    /// Verification suites; exit 1 names the first failing check.
    Verify(VerifyArgs),
    /// The scale map on two-site Hamiltonian densities.
    #[command(subcommand)]
    Hamiltonian(HamCmd),
    /// Rescaled one-site rotation correlations along the orbit of `b1`.
    Momenta(MomentaArgs),
    /// Yang-Baxter and commuting transfers for the cabled Temperley-Lieb model.
    #[command(subcommand)]
    Tl(TlCmd),
}

#[derive(Debug, Subcommand)]
pub enum AbcCmd {
    /// The unique family member with `a₁ = a` (generic `d`).
    Solve {
        #[command(flatten)]
        lp: LoopArgs,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        a: C,
    },
    /// The triple `A(z), B(z), C(z)` with its spectral data.
    Family {
        #[command(flatten)]
        lp: LoopArgs,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        z: C,
        /// Orbit length for the scales predicate.
        #[arg(long, default_value_t = 20)]
        nmax: usize,
    },
    /// The line-pair solutions at `d = 3`.
    D3 {
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[arg(long, value_enum, default_value_t = Branch::One)]
        branch: Branch,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Branch {
    One,
    Two,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = -3.0, allow_hyphen_values = true)]
    pub lo: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    pub hi: f64,
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
}

#[derive(Debug, Subcommand)]
pub enum DynCmd {
    /// Iterates from `(u, v)`.
    Orbit {
        #[command(flatten)]
        lp: LoopArgs,
        #[arg(long, allow_hyphen_values = true)]
        u: f64,
        #[arg(long, allow_hyphen_values = true)]
        v: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
    /// Real fixed points of `F^period`, located by Newton from a seed grid.
    FixedPoints {
        #[command(flatten)]
        lp: LoopArgs,
        #[arg(long, default_value_t = 1)]
        period: usize,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Basin portrait: CSV `u,v,tag,steps` plus a JSON sidecar.
    Portrait {
        #[command(flatten)]
        lp: LoopArgs,
        #[arg(long, default_value_t = -3.0, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
        hi: f64,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
    },
    /// Loop value where the attracting 2-cycle collapses onto a fixed point.
    Coalesce {
        #[arg(long = "d-min", default_value_t = 3.4)]
        d_min: f64,
        #[arg(long = "d-max", default_value_t = 3.6)]
        d_max: f64,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    D3,
    Tl,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Temperley-Lieb loop parameter for the `tl` suite.
    #[arg(long, default_value_t = tloracle::DEFAULT_DELTA)]
    pub delta: f64,
}

#[derive(Debug, Subcommand)]
pub enum HamCmd {
    /// The matrix of the scale map in the basis `(1, E, H)`.
    SMatrix {
        #[command(flatten)]
        lp: LoopArgs,
    },
    /// Eigenpairs of the scale map and the spectra of their densities.
    Eigs {
        #[command(flatten)]
        lp: LoopArgs,
    },
}

#[derive(Debug, Args)]
pub struct MomentaArgs {
    #[command(flatten)]
    pub lp: LoopArgs,
    /// Even number of sites.
    #[arg(long, default_value_t = 4)]
    pub sites: usize,
    /// Length of each parity subsequence.
    #[arg(long, default_value_t = 40)]
    pub steps: usize,
    #[arg(long, default_value_t = 0)]
    pub offset: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Uniform,
    Tree,
}

#[derive(Debug, Subcommand)]
pub enum TlCmd {
    /// Three-site Yang-Baxter residual.
    Ybe {
        #[arg(long, default_value_t = tloracle::DEFAULT_DELTA)]
        delta: f64,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        lambda: C,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        mu: C,
        /// Also report every convention in the scan.
        #[arg(long)]
        scan: bool,
    },
    /// `‖[T^λ, T^μ]‖ / (‖T^λ‖‖T^μ‖)`.
    Commute {
        #[arg(long, default_value_t = tloracle::DEFAULT_DELTA)]
        delta: f64,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        lambda: C,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        mu: C,
        #[arg(long, default_value_t = 4)]
        sites: usize,
        #[arg(long, value_enum, default_value_t = Mode::Uniform)]
        mode: Mode,
    },
}
