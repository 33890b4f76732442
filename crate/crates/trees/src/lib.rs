//! Planar rooted binary trees ordered by rooted inclusion, their `{0,1}` leaf
//! codes, elementary single-leaf doublings, and the cyclic label layout used
//! by periodic transfer matrices.

mod tree;
mod word;

pub use tree::{full_tree, leq, refinement_path, trees_with_leaves, BinaryTree, Doubling};
pub use word::LeafWord;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("trees are not comparable")]
    NotComparable,
    #[error("no label for leaf word {0}")]
    MissingEntry(LeafWord),
    #[error("bad tree syntax at byte {pos}: {msg}")]
    Parse { pos: usize, msg: &'static str },
    #[error("bad leaf word {0:?}")]
    BadWord(String),
    #[error("words do not form a complete prefix code")]
    NotPrefixCode,
}

pub type Result<T> = std::result::Result<T, TreeError>;

/// Anything that assigns a 4-box label to (some) leaf words.
pub trait LabelSource {
    type Label: Clone;

    fn label(&self, word: &LeafWord) -> Option<Self::Label>;
}

/// Labels around the annulus of a periodic transfer matrix, in leaf order.
/// The last entry is bonded back to the first.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferSpec<L> {
    pub entries: Vec<(usize, LeafWord, L)>,
}

impl<L> TransferSpec<L> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &L> {
        self.entries.iter().map(|e| &e.2)
    }

    /// Index of the right-hand neighbour of leaf `i` (periodic).
    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.entries.len()
    }
}

/// Reads the labels of `t`'s leaves, left to right, from `source`.
pub fn transfer_spec<S: LabelSource>(t: &BinaryTree, source: &S) -> Result<TransferSpec<S::Label>> {
    let entries = t
        .leaf_words()
        .into_iter()
        .enumerate()
        .map(|(i, w)| match source.label(&w) {
            Some(l) => Ok((i, w, l)),
            None => Err(TreeError::MissingEntry(w)),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TransferSpec { entries })
}
