use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Q4Error {
    #[error("denominator `{0}` vanishes")]
    Domain(&'static str),
    #[error("point lies on the circle at infinity (p = 0)")]
    Infinity,
    #[error("fit residual {residual:.3e} exceeds tolerance {tolerance:.1e}")]
    Fit { residual: f64, tolerance: f64 },
}

pub type Result<T> = std::result::Result<T, Q4Error>;

/// Returns `Err(Domain(name))` if `value` vanishes.
pub fn nonzero<S: crate::Scalar>(value: S, name: &'static str) -> Result<S> {
    if value.vanishes() {
        Err(Q4Error::Domain(name))
    } else {
        Ok(value)
    }
}
