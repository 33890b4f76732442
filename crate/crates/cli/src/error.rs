use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad or inconsistent flags; exit code 2.
    #[error("{0}")]
    Flag(String),
    #[error("{0}")]
    Compute(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Flag(_) => 2,
            _ => 1,
        }
    }
}

macro_rules! compute_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Compute(e.to_string())
            }
        })*
    };
}

compute_from!(
    abc::AbcError,
    dynsys::DynError,
    planar::PlanarError,
    tloracle::TlError,
    q4core::Q4Error
);

pub type Result<T> = std::result::Result<T, CliError>;
