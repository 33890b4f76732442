use std::fmt;
use std::str::FromStr;

use crate::TreeError;

/// Path from the root to a node: `0` = left child, `1` = right child.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LeafWord(pub Vec<u8>);

impl LeafWord {
    pub fn empty() -> Self {
        LeafWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, bit: u8) -> Self {
        let mut v = self.0.clone();
        v.push(bit);
        LeafWord(v)
    }

    pub fn parent(&self) -> Option<Self> {
        let (_, rest) = self.0.split_last()?;
        Some(LeafWord(rest.to_vec()))
    }

    pub fn first(&self) -> Option<u8> {
        self.0.first().copied()
    }

    pub fn is_prefix_of(&self, other: &LeafWord) -> bool {
        other.0.starts_with(&self.0)
    }

    /// All `2^n` words of length `n` in lexicographic order.
    pub fn all_of_length(n: usize) -> Vec<LeafWord> {
        (0..1usize << n)
            .map(|k| LeafWord((0..n).map(|i| ((k >> (n - 1 - i)) & 1) as u8).collect()))
            .collect()
    }
}

impl fmt::Display for LeafWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for LeafWord {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "ε" || s.is_empty() {
            return Ok(LeafWord::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(TreeError::BadWord(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(LeafWord)
    }
}
