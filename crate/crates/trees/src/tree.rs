use std::fmt;
use std::str::FromStr;

use crate::{LeafWord, Result, TreeError};

/// A planar rooted binary tree. Written as balanced parentheses: `.` is a
/// leaf and `(st)` the node with left subtree `s` and right subtree `t`, so
/// the depth-two full tree is `((..)(..))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BinaryTree {
    Leaf,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

/// One elementary refinement: the leaf at position `index` (left to right,
/// in the tree as it stands before this step) is split in two.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Doubling {
    pub index: usize,
    pub word: LeafWord,
}

impl BinaryTree {
    pub fn node(l: BinaryTree, r: BinaryTree) -> Self {
        BinaryTree::Node(Box::new(l), Box::new(r))
    }

    pub fn leaves(&self) -> usize {
        match self {
            BinaryTree::Leaf => 1,
            BinaryTree::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            BinaryTree::Leaf => 0,
            BinaryTree::Node(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Leaf words in left-to-right leaf order.
    pub fn leaf_words(&self) -> Vec<LeafWord> {
        let mut out = Vec::new();
        self.collect(&LeafWord::empty(), &mut out, true);
        out
    }

    /// Words of the internal nodes in preorder.
    pub fn internal_words(&self) -> Vec<LeafWord> {
        let mut out = Vec::new();
        self.collect(&LeafWord::empty(), &mut out, false);
        out
    }

    fn collect(&self, at: &LeafWord, out: &mut Vec<LeafWord>, leaves: bool) {
        match self {
            BinaryTree::Leaf => {
                if leaves {
                    out.push(at.clone())
                }
            }
            BinaryTree::Node(l, r) => {
                if !leaves {
                    out.push(at.clone());
                }
                l.collect(&at.child(0), out, leaves);
                r.collect(&at.child(1), out, leaves);
            }
        }
    }

    /// The subtree reached by following `word`, if it exists.
    pub fn subtree(&self, word: &LeafWord) -> Option<&BinaryTree> {
        let mut t = self;
        for &b in &word.0 {
            match t {
                BinaryTree::Leaf => return None,
                BinaryTree::Node(l, r) => t = if b == 0 { l } else { r },
            }
        }
        Some(t)
    }

    /// Rebuilds a tree from its leaf words, which must form a complete prefix
    /// code.
    pub fn from_words(words: &[LeafWord]) -> Result<Self> {
        fn build(words: &[&[u8]]) -> Result<BinaryTree> {
            match words {
                [] => Err(TreeError::NotPrefixCode),
                [w] if w.is_empty() => Ok(BinaryTree::Leaf),
                _ => {
                    if words.iter().any(|w| w.is_empty()) {
                        return Err(TreeError::NotPrefixCode);
                    }
                    let (l, r): (Vec<&[u8]>, Vec<&[u8]>) = words.iter().partition(|w| w[0] == 0);
                    let l: Vec<&[u8]> = l.into_iter().map(|w| &w[1..]).collect();
                    let r: Vec<&[u8]> = r.into_iter().map(|w| &w[1..]).collect();
                    Ok(BinaryTree::node(build(&l)?, build(&r)?))
                }
            }
        }
        let ws: Vec<&[u8]> = words.iter().map(|w| w.0.as_slice()).collect();
        let t = build(&ws)?;
        if t.leaves() != words.len() {
            return Err(TreeError::NotPrefixCode);
        }
        Ok(t)
    }

    /// Splits the leaf at position `index`.
    pub fn double_leaf(&self, index: usize) -> Option<BinaryTree> {
        fn go(t: &BinaryTree, index: &mut usize) -> Option<BinaryTree> {
            match t {
                BinaryTree::Leaf => {
                    if *index == 0 {
                        *index = usize::MAX;
                        Some(BinaryTree::node(BinaryTree::Leaf, BinaryTree::Leaf))
                    } else {
                        *index -= 1;
                        None
                    }
                }
                BinaryTree::Node(l, r) => {
                    if let Some(nl) = go(l, index) {
                        return Some(BinaryTree::node(nl, (**r).clone()));
                    }
                    go(r, index).map(|nr| BinaryTree::node((**l).clone(), nr))
                }
            }
        }
        let mut i = index;
        go(self, &mut i)
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinaryTree::Leaf => f.write_str("."),
            BinaryTree::Node(l, r) => write!(f, "({l}{r})"),
        }
    }
}

impl FromStr for BinaryTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self> {
        let bytes: Vec<(usize, u8)> = s
            .bytes()
            .enumerate()
            .filter(|(_, b)| !b.is_ascii_whitespace())
            .collect();
        let mut pos = 0;
        let t = parse(&bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(TreeError::Parse {
                pos: bytes[pos].0,
                msg: "trailing input",
            });
        }
        Ok(t)
    }
}

fn parse(bytes: &[(usize, u8)], pos: &mut usize) -> Result<BinaryTree> {
    let Some(&(at, b)) = bytes.get(*pos) else {
        return Err(TreeError::Parse {
            pos: bytes.last().map_or(0, |x| x.0 + 1),
            msg: "unexpected end",
        });
    };
    *pos += 1;
    match b {
        b'.' => Ok(BinaryTree::Leaf),
        b'(' => {
            let l = parse(bytes, pos)?;
            let r = parse(bytes, pos)?;
            match bytes.get(*pos) {
                Some(&(_, b')')) => {
                    *pos += 1;
                    Ok(BinaryTree::node(l, r))
                }
                Some(&(p, _)) => Err(TreeError::Parse {
                    pos: p,
                    msg: "expected ')'",
                }),
                None => Err(TreeError::Parse {
                    pos: at,
                    msg: "unclosed '('",
                }),
            }
        }
        _ => Err(TreeError::Parse {
            pos: at,
            msg: "expected '.' or '('",
        }),
    }
}

/// The tree with `2^n` leaves all at depth `n`.
pub fn full_tree(n: usize) -> BinaryTree {
    if n == 0 {
        BinaryTree::Leaf
    } else {
        let c = full_tree(n - 1);
        BinaryTree::node(c.clone(), c)
    }
}

/// `s ≤ t` iff `s` is a rooted subtree of `t`.
pub fn leq(s: &BinaryTree, t: &BinaryTree) -> bool {
    match (s, t) {
        (BinaryTree::Leaf, _) => true,
        (BinaryTree::Node(..), BinaryTree::Leaf) => false,
        (BinaryTree::Node(a, b), BinaryTree::Node(c, d)) => leq(a, c) && leq(b, d),
    }
}

/// Decomposes `s ≤ t` into single-leaf doublings. The canonical order always
/// splits the leftmost leaf that still has to be split, so the doubled words
/// come out in preorder.
pub fn refinement_path(s: &BinaryTree, t: &BinaryTree) -> Result<Vec<Doubling>> {
    if !leq(s, t) {
        return Err(TreeError::NotComparable);
    }
    let mut cur = s.clone();
    let mut path = Vec::new();
    loop {
        let next = cur
            .leaf_words()
            .into_iter()
            .enumerate()
            .find(|(_, w)| matches!(t.subtree(w), Some(BinaryTree::Node(..))));
        let Some((index, word)) = next else { break };
        cur = cur.double_leaf(index).expect("index is a leaf");
        path.push(Doubling { index, word });
    }
    Ok(path)
}

/// Every planar binary tree with exactly `n` leaves (Catalan many).
pub fn trees_with_leaves(n: usize) -> Vec<BinaryTree> {
    match n {
        0 => Vec::new(),
        1 => vec![BinaryTree::Leaf],
        _ => {
            let mut out = Vec::new();
            for k in 1..n {
                for l in trees_with_leaves(k) {
                    for r in trees_with_leaves(n - k) {
                        out.push(BinaryTree::node(l.clone(), r));
                    }
                }
            }
            out
        }
    }
}
