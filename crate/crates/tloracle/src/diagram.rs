use std::fmt;

use crate::error::{Result, TlError};

/// A noncrossing perfect matching between `bottom` points (indices
/// `0..bottom`, left to right) and `top` points (indices `bottom..bottom+top`,
/// left to right). Composition stacks diagrams vertically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TLDiagram {
    bottom: usize,
    top: usize,
    partner: Vec<usize>,
}

/// A boundary point of a diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Point {
    Bottom(usize),
    Top(usize),
}

impl TLDiagram {
    pub fn from_pairs(bottom: usize, top: usize, pairs: &[(Point, Point)]) -> Result<Self> {
        let total = bottom + top;
        let idx = |p: Point| match p {
            Point::Bottom(i) if i < bottom => Ok(i),
            Point::Top(j) if j < top => Ok(bottom + j),
            _ => Err(TlError::Matching(format!("{p:?} out of range"))),
        };
        let mut partner = vec![usize::MAX; total];
        for &(a, b) in pairs {
            let (a, b) = (idx(a)?, idx(b)?);
            if a == b || partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(TlError::Matching("point used twice".into()));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if partner.contains(&usize::MAX) {
            return Err(TlError::Matching("unmatched point".into()));
        }
        let d = Self { bottom, top, partner };
        if !d.is_planar() {
            return Err(TlError::Matching("arcs cross".into()));
        }
        Ok(d)
    }

    pub fn identity(n: usize) -> Self {
        let mut partner = vec![0; 2 * n];
        for i in 0..n {
            partner[i] = n + i;
            partner[n + i] = i;
        }
        Self {
            bottom: n,
            top: n,
            partner,
        }
    }

    /// The generator `eᵢ` on `n` strands, capping points `i, i+1`
    /// (zero-based).
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i + 1 >= n {
            return Err(TlError::Matching(format!("e_{i} needs at least {} strands", i + 2)));
        }
        let mut d = Self::identity(n);
        d.partner[i] = i + 1;
        d.partner[i + 1] = i;
        d.partner[n + i] = n + i + 1;
        d.partner[n + i + 1] = n + i;
        Ok(d)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn point(&self, i: usize) -> Point {
        if i < self.bottom {
            Point::Bottom(i)
        } else {
            Point::Top(i - self.bottom)
        }
    }

    pub fn partner_of(&self, p: Point) -> Point {
        let i = match p {
            Point::Bottom(i) => i,
            Point::Top(j) => self.bottom + j,
        };
        self.point(self.partner[i])
    }

    /// Arcs as `(i, j)` with `i < j` in the flat indexing.
    pub fn arcs(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.partner
            .iter()
            .enumerate()
            .filter(|(i, j)| i < j)
            .map(|(i, &j)| (self.point(i), self.point(j)))
    }

    /// Position of flat index `i` when the boundary is read around the
    /// rectangle: bottom left to right, then top right to left.
    fn circular(&self, i: usize) -> usize {
        if i < self.bottom {
            i
        } else {
            self.bottom + (self.top - 1 - (i - self.bottom))
        }
    }

    /// Nesting check on the circular order.
    pub fn is_planar(&self) -> bool {
        let total = self.bottom + self.top;
        let mut at = vec![0; total];
        for i in 0..total {
            at[self.circular(i)] = i;
        }
        let mut stack = Vec::new();
        for c in 0..total {
            let i = at[c];
            let pc = self.circular(self.partner[i]);
            if pc > c {
                stack.push(i);
            } else if stack.pop() != Some(self.partner[i]) {
                return false;
            }
        }
        stack.is_empty()
    }

    /// `self ∘ lower`: `lower` below, `self` on top. Returns the diagram and
    /// the number of closed loops removed.
    pub fn compose(&self, lower: &Self) -> Result<(Self, usize)> {
        if self.bottom != lower.top {
            return Err(TlError::SizeMismatch {
                upper: self.bottom,
                lower: lower.top,
            });
        }
        let (bottom, top, mid) = (lower.bottom, self.top, lower.top);
        let total = bottom + top;
        // Outer points: lower bottoms keep their index, upper tops shift to
        // `bottom + j`.
        let mut partner = vec![usize::MAX; total];
        let mut seen_mid = vec![false; mid];
        for start in 0..total {
            if partner[start] != usize::MAX {
                continue;
            }
            // (in_upper, flat index within that diagram)
            let (mut upper, mut i) = if start < bottom {
                (false, start)
            } else {
                (true, self.bottom + start - bottom)
            };
            let end = loop {
                let d = if upper { self } else { lower };
                let j = d.partner[i];
                match (upper, d.point(j)) {
                    (false, Point::Bottom(b)) => break b,
                    (true, Point::Top(t)) => break bottom + t,
                    (false, Point::Top(m)) => {
                        seen_mid[m] = true;
                        upper = true;
                        i = m;
                    }
                    (true, Point::Bottom(m)) => {
                        seen_mid[m] = true;
                        upper = false;
                        i = lower.bottom + m;
                    }
                }
            };
            partner[start] = end;
            partner[end] = start;
        }
        let mut loops = 0;
        for m0 in 0..mid {
            if seen_mid[m0] {
                continue;
            }
            loops += 1;
            let mut m = m0;
            loop {
                seen_mid[m] = true;
                // Across the upper diagram, then back through the lower.
                let Point::Bottom(m1) = self.partner_of(Point::Bottom(m)) else {
                    unreachable!("middle strand of a closed loop reaches the top")
                };
                seen_mid[m1] = true;
                let Point::Top(m2) = lower.partner_of(Point::Top(m1)) else {
                    unreachable!("middle strand of a closed loop reaches the bottom")
                };
                m = m2;
                if m == m0 {
                    break;
                }
            }
        }
        Ok((Self { bottom, top, partner }, loops))
    }

    /// Loops formed by joining top point `j` to bottom point `j` around the
    /// side (needs `bottom == top`).
    pub fn closure_loops(&self) -> Option<usize> {
        if self.bottom != self.top {
            return None;
        }
        let n = self.bottom;
        let closure = |i: usize| if i < n { i + n } else { i - n };
        let mut seen = vec![false; 2 * n];
        let mut loops = 0;
        for s in 0..2 * n {
            if seen[s] {
                continue;
            }
            loops += 1;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                let j = self.partner[i];
                seen[j] = true;
                i = closure(j);
            }
        }
        Some(loops)
    }

    /// All noncrossing perfect matchings with the given boundary.
    pub fn enumerate(bottom: usize, top: usize) -> Vec<Self> {
        let total = bottom + top;
        if total % 2 == 1 {
            return Vec::new();
        }
        let flat = |c: usize| {
            if c < bottom {
                c
            } else {
                bottom + (top - 1 - (c - bottom))
            }
        };
        let mut out = Vec::new();
        for m in circular_matchings(total) {
            let mut partner = vec![0; total];
            for (a, b) in m {
                partner[flat(a)] = flat(b);
                partner[flat(b)] = flat(a);
            }
            out.push(Self { bottom, top, partner });
        }
        out.sort();
        out
    }
}

/// Noncrossing matchings of `0..n` on a circle.
fn circular_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
        if lo >= hi {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for k in (lo + 1..hi).step_by(2) {
            for inner in rec(lo + 1, k) {
                for outer in rec(k + 1, hi) {
                    let mut m = vec![(lo, k)];
                    m.extend(inner.iter().copied());
                    m.extend(outer.iter().copied());
                    out.push(m);
                }
            }
        }
        out
    }
    rec(0, n)
}

impl fmt::Display for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |p: Point| match p {
            Point::Bottom(i) => format!("b{i}"),
            Point::Top(j) => format!("t{j}"),
        };
        let arcs: Vec<String> = self.arcs().map(|(a, b)| format!("{}-{}", name(a), name(b))).collect();
        write!(f, "[{}]", arcs.join(" "))
    }
}
