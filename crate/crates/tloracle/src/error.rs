use thiserror::Error;

#[derive(Debug, Error)]
pub enum TlError {
    #[error("cannot stack a diagram with {upper} bottom points on one with {lower} top points")]
    SizeMismatch { upper: usize, lower: usize },
    #[error("loop parameter mismatch: element has {element}, representation gives {rep}")]
    ParameterMismatch { element: f64, rep: f64 },
    #[error("invalid matching: {0}")]
    Matching(String),
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("compressed vertex vanishes (|Y*Y| = {0:e})")]
    DegenerateVertex(f64),
    #[error(transparent)]
    Planar(#[from] planar::PlanarError),
    #[error(transparent)]
    Abc(#[from] abc::AbcError),
    #[error(transparent)]
    Q4(#[from] q4core::Q4Error),
}

pub type Result<T> = std::result::Result<T, TlError>;
