//! Basic tangles and words of them, with boundary bookkeeping.

use std::fmt;

use crate::complex::points::{reduce_deg, GradedPointSet};
use crate::error::{CyError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    /// Strands appear at positions `i, i+1`; the upper one (`i+1`) has the given degree.
    LeftCusp { i: usize, upper: i64 },
    /// Strands `i, i+1` merge.
    RightCusp { i: usize },
    /// Strands `k, k+1` cross.
    Crossing { k: usize },
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Letter::LeftCusp { i, upper } => write!(f, "L {i} {upper}"),
            Letter::RightCusp { i } => write!(f, "R {i}"),
            Letter::Crossing { k } => write!(f, "X {k}"),
        }
    }
}

/// A tangle with exactly one singularity together with both boundary sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasicTangle {
    pub kind: Letter,
    pub left: GradedPointSet,
    pub right: GradedPointSet,
}

impl BasicTangle {
    /// Applies `kind` to the boundary `left`, checking the grading rules.
    pub fn new(left: GradedPointSet, kind: Letter) -> Result<BasicTangle> {
        let n = left.len();
        let m = left.m;
        let mut degs = left.degrees.clone();
        match kind {
            Letter::LeftCusp { i, upper } => {
                if i == 0 || i > n + 1 {
                    return Err(CyError::Grading(format!("left cusp at {i} outside 1..={}", n + 1)));
                }
                degs.insert(i - 1, reduce_deg(m, upper));
                degs.insert(i - 1, reduce_deg(m, upper + 1));
            }
            Letter::RightCusp { i } => {
                if i == 0 || i + 1 > n {
                    return Err(CyError::Grading(format!("right cusp at strands {i},{} but only {n} strands", i + 1)));
                }
                if !left.can_pair(i, i + 1) {
                    return Err(CyError::Grading(format!(
                        "right cusp at strands {i},{}: degrees {} and {}, need deg({i}) = deg({}) + 1",
                        i + 1,
                        left.deg(i),
                        left.deg(i + 1),
                        i + 1
                    )));
                }
                degs.drain(i - 1..=i);
            }
            Letter::Crossing { k } => {
                if k == 0 || k + 1 > n {
                    return Err(CyError::Grading(format!("crossing at strands {k},{} but only {n} strands", k + 1)));
                }
                degs.swap(k - 1, k);
            }
        }
        Ok(BasicTangle { kind, right: GradedPointSet::new(m, degs), left })
    }

    /// For crossings, the gap `deg(k) - deg(k+1)` on the left boundary in a symmetric window.
    pub fn crossing_gap(&self) -> Option<i64> {
        match self.kind {
            Letter::Crossing { k } => Some(self.left.gap(k, k + 1)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TangleWord {
    pub m: u32,
    pub left: GradedPointSet,
    pub letters: Vec<BasicTangle>,
}

impl TangleWord {
    pub fn identity(left: GradedPointSet) -> TangleWord {
        TangleWord { m: left.m, left, letters: vec![] }
    }

    /// Builds and validates a word from its left boundary and letter kinds.
    pub fn build(left: GradedPointSet, kinds: &[Letter]) -> Result<TangleWord> {
        let mut w = TangleWord::identity(left);
        for &k in kinds {
            w.push(k)?;
        }
        Ok(w)
    }

    pub fn push(&mut self, kind: Letter) -> Result<()> {
        let t = BasicTangle::new(self.right().clone(), kind)?;
        self.letters.push(t);
        Ok(())
    }

    pub fn right(&self) -> &GradedPointSet {
        self.letters.last().map_or(&self.left, |t| &t.right)
    }

    pub fn is_closed(&self) -> bool {
        self.left.is_empty() && self.right().is_empty()
    }

    pub fn right_cusps(&self) -> usize {
        self.letters.iter().filter(|t| matches!(t.kind, Letter::RightCusp { .. })).count()
    }

    pub fn max_strands(&self) -> usize {
        std::iter::once(self.left.len()).chain(self.letters.iter().map(|t| t.right.len())).max().unwrap_or(0)
    }

    /// `self` followed by `other`; the boundaries must agree exactly.
    pub fn compose(&self, other: &TangleWord) -> Result<TangleWord> {
        if self.right() != &other.left {
            return Err(CyError::Shape(format!(
                "boundary mismatch on composition: {:?} vs {:?}",
                self.right().degrees,
                other.left.degrees
            )));
        }
        let mut w = self.clone();
        w.letters.extend(other.letters.iter().cloned());
        Ok(w)
    }

    /// The word as DSL text, parseable by [`super::parse_tangle`].
    pub fn to_dsl(&self) -> String {
        let mut s = format!("mod {}\nleft:", 2 * self.m);
        for d in &self.left.degrees {
            s.push_str(&format!(" {d}"));
        }
        s.push('\n');
        for t in &self.letters {
            s.push_str(&format!("{}\n", t.kind));
        }
        s
    }
}
