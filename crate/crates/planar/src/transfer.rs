use q4core::Q4Vec;
use trees::{transfer_spec, BinaryTree, LabelSource};

use crate::{pow, Mat, PlanarError, Result, SiteModel, Vector, C};

/// Periodic row of 4-boxes, bonded `E → W`, acting `S → N` on `k` sites.
#[derive(Debug, Clone)]
pub struct Transfer {
    n: usize,
    tops: Vec<Vec<C>>,
}

impl Transfer {
    pub fn new(model: &SiteModel, labels: &[Mat]) -> Self {
        Self {
            n: model.n(),
            tops: labels.iter().map(|l| model.top(l)).collect(),
        }
    }

    pub fn sites(&self) -> usize {
        self.tops.len()
    }

    pub fn dim(&self) -> usize {
        pow(self.n, self.sites())
    }

    /// Matrix-free `T x`.
    pub fn apply(&self, x: &Vector) -> Vector {
        let n = self.n;
        let k = self.sites();
        let dim = self.dim();
        let mut out = Vector::zeros(dim);
        for f in 0..n {
            // z[b * dim + (n_1..n_i, s_{i+1}..s_k)]
            let mut z = vec![C::new(0.0, 0.0); n * dim];
            for (i, v) in x.iter().enumerate() {
                z[f * dim + i] = *v;
            }
            for (i, t) in self.tops.iter().enumerate() {
                let pre = pow(n, i);
                let post = pow(n, k - i - 1);
                let mut next = vec![C::new(0.0, 0.0); n * dim];
                for b in 0..n {
                    for p in 0..pre {
                        for s in 0..n {
                            let src = b * dim + (p * n + s) * post;
                            for nn in 0..n {
                                for e in 0..n {
                                    let tv = t[((nn * n + e) * n + b) * n + s];
                                    if tv == C::new(0.0, 0.0) {
                                        continue;
                                    }
                                    let dst = e * dim + (p * n + nn) * post;
                                    for q in 0..post {
                                        next[dst + q] += tv * z[src + q];
                                    }
                                }
                            }
                        }
                    }
                }
                z = next;
            }
            for i in 0..dim {
                out[i] += z[f * dim + i];
            }
        }
        out
    }

    pub fn dense(&self) -> Mat {
        let dim = self.dim();
        let mut m = Mat::zeros(dim, dim);
        for col in 0..dim {
            let mut e = Vector::zeros(dim);
            e[col] = C::new(1.0, 0.0);
            m.set_column(col, &self.apply(&e));
        }
        m
    }
}

/// Concrete labels of `t`'s leaves, left to right.
pub fn labels_for_tree<S>(model: &SiteModel, t: &BinaryTree, source: &S) -> Result<Vec<Mat>>
where
    S: LabelSource<Label = Q4Vec<C>>,
{
    let spec = transfer_spec(t, source).map_err(|e| PlanarError::MissingEntry(e.to_string()))?;
    Ok(spec.labels().map(|l| model.op(l)).collect())
}
