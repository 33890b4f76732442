use num_complex::Complex64;
use q4core::Q4Error;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AbcError {
    #[error("denominator `{0}` vanishes")]
    Domain(&'static str),
    #[error("d = 3 is degenerate; use the line-pair branch")]
    UseD3Branch,
    #[error("spectral value {0} is on the excluded set ±ω^n")]
    Scales(Complex64),
    #[error("the empty word carries no label")]
    EmptyWord,
    #[error("inconsistent linear solve (residual {0:.3e})")]
    LinearSolve(f64),
    #[error("polynomial system degenerate: {0}")]
    Degenerate(&'static str),
    #[error(transparent)]
    Q4(#[from] Q4Error),
}

pub type Result<T> = std::result::Result<T, AbcError>;

pub(crate) fn nz<S: q4core::Scalar>(x: S, name: &'static str) -> Result<S> {
    if x.vanishes() {
        Err(AbcError::Domain(name))
    } else {
        Ok(x)
    }
}
