use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::{Mat, Vector, C};

/// Seeded generator used for every random state and operator.
pub type StateRng = ChaCha8Rng;

pub fn rng(seed: u64) -> StateRng {
    StateRng::seed_from_u64(seed)
}

fn gauss(rng: &mut StateRng) -> f64 {
    rng.sample(StandardNormal)
}

/// Unit vector with independent complex Gaussian entries.
pub fn random_state(rng: &mut StateRng, dim: usize) -> Vector {
    let v = Vector::from_fn(dim, |_, _| C::new(gauss(rng), gauss(rng)));
    let n = v.norm();
    v / C::new(n, 0.0)
}

/// Matrix with independent complex Gaussian entries.
pub fn random_op(rng: &mut StateRng, dim: usize) -> Mat {
    Mat::from_fn(dim, dim, |_, _| C::new(gauss(rng), gauss(rng)))
}
