use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// One verification outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub level: usize,
    /// Named numeric inputs of the check; complex values are split into
    /// `name.re` and `name.im`.
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seed: u64,
}

impl Report {
    pub fn new(check: impl Into<String>, level: usize, residual: f64, tolerance: f64, seed: u64) -> Self {
        Self {
            check: check.into(),
            level,
            params: BTreeMap::new(),
            residual,
            tolerance,
            pass: residual <= tolerance,
            seed,
        }
    }

    /// For checks that must exceed a threshold (negative controls).
    pub fn above(check: impl Into<String>, level: usize, residual: f64, threshold: f64, seed: u64) -> Self {
        Self {
            pass: residual > threshold,
            ..Self::new(check, level, residual, threshold, seed)
        }
    }

    pub fn with_param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn with_complex(self, name: &str, value: num_complex::Complex64) -> Self {
        self.with_param(&format!("{name}.re"), value.re)
            .with_param(&format!("{name}.im"), value.im)
    }
}
