use std::collections::BTreeMap;

use num_complex::Complex64;
use planar::SiteModel;
use q4core::LoopParam;
use serde::Serialize;
use tloracle::Cable;

use crate::args::LoopArgs;
use crate::error::{CliError, Result};

type C = Complex64;

/// Command name, seed and every numeric input, as echoed in the output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub seed: u64,
    pub params: BTreeMap<String, f64>,
}

impl RunConfig {
    pub fn new(command: &str, seed: u64) -> Self {
        Self {
            command: command.to_string(),
            seed,
            params: BTreeMap::new(),
        }
    }

    pub fn param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn complex(self, name: &str, value: C) -> Self {
        self.param(&format!("{name}.re"), value.re)
            .param(&format!("{name}.im"), value.im)
    }

    pub fn with_loop(self, lp: &Loop) -> Self {
        self.complex("d", lp.d).complex("omega", lp.omega)
    }
}

/// A resolved `(d, ω)` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Loop {
    pub d: C,
    pub omega: C,
}

/// The root of `ω² − (d−1)ω + 1` of modulus at least one; the one with
/// nonnegative imaginary part on the unit circle.
pub fn omega_of_d(d: C) -> C {
    if d.im == 0.0 {
        return LoopParam::<C>::from_d(d.re).omega();
    }
    let b = d - 1.0;
    let disc = (b * b - 4.0).sqrt();
    let (w1, w2) = ((b + disc) / 2.0, (b - disc) / 2.0);
    if w1.norm() >= w2.norm() {
        w1
    } else {
        w2
    }
}

impl Loop {
    pub fn from_args(a: &LoopArgs) -> Result<Self> {
        match (a.d, a.omega) {
            (Some(d), None) => Ok(Self {
                d,
                omega: omega_of_d(d),
            }),
            (None, Some(w)) if w.norm() == 0.0 => Err(CliError::Flag("--omega must be nonzero".into())),
            (None, Some(w)) => Ok(Self {
                d: w + 1.0 / w + 1.0,
                omega: w,
            }),
            _ => Err(CliError::Flag("give exactly one of --d and --omega".into())),
        }
    }

    pub fn complex(&self) -> LoopParam<C> {
        LoopParam {
            d: self.d,
            omega: Some(self.omega),
        }
    }

    /// The loop value as a real number; a unit-modulus ω gives a real `d` up
    /// to rounding.
    pub fn real(&self) -> Result<f64> {
        if self.d.im.abs() > 1e-12 * (1.0 + self.d.re.abs()) {
            return Err(CliError::Flag(format!(
                "this command needs a real loop value, got d = {}",
                self.d
            )));
        }
        Ok(self.d.re)
    }

    pub fn is_d3(&self) -> bool {
        (self.d - 3.0).norm() < 1e-12
    }
}

/// The concrete site model at a real loop value: the `ℂ³` oracle at `d = 3`
/// and the cabled Temperley-Lieb model with `δ = √(d+1)` otherwise, together
/// with the entrywise tolerance used for matrix identities.
pub fn site_model(d: f64) -> Result<(SiteModel, f64)> {
    if (d - 3.0).abs() < 1e-12 {
        return Ok((oracle3::model().clone(), 1e-12));
    }
    if d <= -1.0 {
        return Err(CliError::Flag(format!("no cabled model for d = {d} (needs d > -1)")));
    }
    let cab = Cable::new((d + 1.0).sqrt()).map_err(|e| CliError::Flag(format!("d = {d}: {e}")))?;
    Ok((cab.model, 1e-10))
}
