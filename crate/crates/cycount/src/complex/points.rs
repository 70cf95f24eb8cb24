//! Graded point sets and their rulings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CyError, Result};

/// Reduce a degree into `Z/2m`, or leave it alone when `m = 0`.
pub fn reduce_deg(m: u32, d: i64) -> i64 {
    if m == 0 {
        d
    } else {
        d.rem_euclid(2 * m as i64)
    }
}

/// `(-1)^k`, well defined on `Z/2m` because the modulus is even.
pub fn parity_sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Points ordered bottom to top, each carrying a degree in `Z/2m` (or `Z` when `m = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GradedPointSet {
    pub m: u32,
    pub degrees: Vec<i64>,
}

impl GradedPointSet {
    pub fn new(m: u32, degrees: Vec<i64>) -> Self {
        let degrees = degrees.into_iter().map(|d| reduce_deg(m, d)).collect();
        GradedPointSet { m, degrees }
    }

    pub fn empty(m: u32) -> Self {
        GradedPointSet { m, degrees: vec![] }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Degree of point `i` (1-based).
    pub fn deg(&self, i: usize) -> i64 {
        self.degrees[i - 1]
    }

    /// Whether points `s < t` (1-based) may be paired: `deg(s) = deg(t) + 1`.
    pub fn can_pair(&self, s: usize, t: usize) -> bool {
        s < t && reduce_deg(self.m, self.deg(t) + 1) == self.deg(s)
    }

    /// Degree difference reduced into a symmetric window, so `|l|` is meaningful mod `2m`.
    pub fn gap(&self, a: usize, b: usize) -> i64 {
        let l = self.deg(a) - self.deg(b);
        if self.m == 0 {
            return l;
        }
        let n = 2 * self.m as i64;
        let r = l.rem_euclid(n);
        if r > n / 2 {
            r - n
        } else {
            r
        }
    }
}

/// A perfect matching of `{1..n}` into pairs `(s, t)`, `s < t`, sorted by `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ruling {
    pairs: Vec<(usize, usize)>,
}

impl Ruling {
    pub fn empty() -> Self {
        Ruling { pairs: vec![] }
    }

    /// Normalizes orientation and order; does not check degrees.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut pairs: Vec<_> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort();
        Ruling { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn size(&self) -> usize {
        2 * self.pairs.len()
    }

    pub fn partner(&self, i: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(s, t)| {
            if s == i {
                Some(t)
            } else if t == i {
                Some(s)
            } else {
                None
            }
        })
    }

    pub fn pairs_together(&self, a: usize, b: usize) -> bool {
        self.partner(a) == Some(b)
    }

    /// Checks this is a ruling of `s`: a perfect matching with `deg(s) = deg(t) + 1`.
    pub fn validate(&self, set: &GradedPointSet) -> Result<()> {
        let n = set.len();
        let mut seen = vec![false; n + 1];
        for &(s, t) in &self.pairs {
            if s == 0 || t > n || s >= t {
                return Err(CyError::InvalidRuling(format!("pair ({s},{t}) out of range for {n} points")));
            }
            if seen[s] || seen[t] {
                return Err(CyError::InvalidRuling(format!("point used twice in ({s},{t})")));
            }
            seen[s] = true;
            seen[t] = true;
            if !set.can_pair(s, t) {
                return Err(CyError::InvalidRuling(format!(
                    "pair ({s},{t}) has degrees {} and {}, need deg(s) = deg(t) + 1",
                    set.deg(s),
                    set.deg(t)
                )));
            }
        }
        if seen[1..].iter().any(|&b| !b) {
            return Err(CyError::InvalidRuling("not a perfect matching".into()));
        }
        Ok(())
    }

    pub fn is_valid_for(&self, set: &GradedPointSet) -> bool {
        self.validate(set).is_ok()
    }

    /// Apply a relabeling of points `i -> sigma(i)` (1-based).
    pub fn relabel(&self, sigma: impl Fn(usize) -> usize) -> Ruling {
        Ruling::from_pairs(self.pairs.iter().map(|&(s, t)| (sigma(s), sigma(t))))
    }

    /// Swap the labels `k` and `k+1`.
    pub fn transpose(&self, k: usize) -> Ruling {
        self.relabel(|i| {
            if i == k {
                k + 1
            } else if i == k + 1 {
                k
            } else {
                i
            }
        })
    }

    /// Remove the pair `{i, i+1}` and close the gap. Returns `None` if it is not a pair.
    pub fn remove_adjacent_pair(&self, i: usize) -> Option<Ruling> {
        if !self.pairs_together(i, i + 1) {
            return None;
        }
        let rest = self.pairs.iter().filter(|&&(s, _)| s != i);
        Some(Ruling::from_pairs(rest.map(|&(s, t)| (close(s, i), close(t, i)))))
    }

    /// Open a gap at positions `i, i+1` and pair them.
    pub fn insert_adjacent_pair(&self, i: usize) -> Ruling {
        let open = |p: usize| if p >= i { p + 2 } else { p };
        let mut pairs: Vec<_> = self.pairs.iter().map(|&(s, t)| (open(s), open(t))).collect();
        pairs.push((i, i + 1));
        Ruling::from_pairs(pairs)
    }

    /// Whether the pairs through `k` and `k+1` are disjoint or nested (not interlaced).
    pub fn normal_at(&self, k: usize) -> bool {
        let (Some(p), Some(r)) = (self.partner(k), self.partner(k + 1)) else {
            return false;
        };
        let a = (k.min(p), k.max(p));
        let b = ((k + 1).min(r), (k + 1).max(r));
        let disjoint = a.1 < b.0 || b.1 < a.0;
        let nested = (a.0 < b.0 && b.1 < a.1) || (b.0 < a.0 && a.1 < b.1);
        disjoint || nested
    }
}

fn close(p: usize, i: usize) -> usize {
    if p > i + 1 {
        p - 2
    } else {
        p
    }
}

impl fmt::Display for Ruling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (s, t)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({s},{t})")?;
        }
        write!(f, "}}")
    }
}

/// All rulings of `set`, in lexicographic order of their sorted pair lists.
pub fn enumerate_set_rulings(set: &GradedPointSet) -> Vec<Ruling> {
    let n = set.len();
    let mut out = Vec::new();
    if n % 2 == 1 {
        return out;
    }
    let mut used = vec![false; n + 1];
    let mut pairs = Vec::new();
    extend(set, &mut used, &mut pairs, &mut out);
    out.sort();
    out
}

fn extend(set: &GradedPointSet, used: &mut Vec<bool>, pairs: &mut Vec<(usize, usize)>, out: &mut Vec<Ruling>) {
    let n = set.len();
    let Some(s) = (1..=n).find(|&i| !used[i]) else {
        out.push(Ruling::from_pairs(pairs.iter().copied()));
        return;
    };
    used[s] = true;
    for t in s + 1..=n {
        if !used[t] && set.can_pair(s, t) {
            used[t] = true;
            pairs.push((s, t));
            extend(set, used, pairs, out);
            pairs.pop();
            used[t] = false;
        }
    }
    used[s] = false;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sets() {
        assert_eq!(enumerate_set_rulings(&GradedPointSet::empty(0)), vec![Ruling::empty()]);
        let s = GradedPointSet::new(0, vec![0, -1]);
        assert_eq!(enumerate_set_rulings(&s), vec![Ruling::from_pairs([(1, 2)])]);
        assert!(enumerate_set_rulings(&GradedPointSet::new(0, vec![-1, 0])).is_empty());
    }

    #[test]
    fn four_points_alternating() {
        // (2,3) would need deg 2 = deg 3 + 1, i.e. -1 = 1; only (1,2),(3,4) and (1,4),(3,?) remain
        let s = GradedPointSet::new(0, vec![0, -1, 0, -1]);
        let r = enumerate_set_rulings(&s);
        assert_eq!(r, vec![Ruling::from_pairs([(1, 2), (3, 4)])]);
    }

    #[test]
    fn normality() {
        let r = Ruling::from_pairs([(1, 4), (2, 3)]);
        assert!(r.normal_at(1));
        assert!(r.normal_at(3));
        let r = Ruling::from_pairs([(1, 3), (2, 4)]);
        assert!(!r.normal_at(2));
        let r = Ruling::from_pairs([(1, 2), (3, 4)]);
        assert!(r.normal_at(2));
        let r = Ruling::from_pairs([(1, 4), (2, 5), (3, 6)]);
        assert!(!r.normal_at(2));
    }
}
