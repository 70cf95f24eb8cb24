//! The exhaustive family of basic tangles used to check the main identity letter by letter.

use std::collections::{BTreeSet, HashSet};

use crate::complex::GradedPointSet;
use crate::tangle::{BasicTangle, Letter};

/// Bounds for [`basic_tangles`].
#[derive(Clone, Debug)]
pub struct BatteryBounds {
    /// Largest boundary size on either side.
    pub max_strands: usize,
    /// Degrees are drawn from `0..=max_degree`; crossings with `|l|` above this are skipped.
    pub max_degree: i64,
    pub moduli: Vec<u32>,
}

impl Default for BatteryBounds {
    fn default() -> Self {
        BatteryBounds { max_strands: 6, max_degree: 3, moduli: vec![0, 1, 2] }
    }
}

fn degree_vectors(n: usize, top: i64, m: u32) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    let mut v = vec![0i64; n];
    loop {
        out.insert(GradedPointSet::new(m, v.clone()).degrees);
        let mut i = 0;
        while i < n && v[i] == top {
            v[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        v[i] += 1;
    }
    out
}

/// Every basic tangle (left cusp, right cusp, crossing) with even boundaries of at most
/// `max_strands` points and degrees in the given window, deduplicated per modulus.
pub fn basic_tangles(b: &BatteryBounds) -> Vec<BasicTangle> {
    let mut out = Vec::new();
    for &m in &b.moduli {
        let mut seen = HashSet::new();
        for n in (0..=b.max_strands).step_by(2) {
            for degs in degree_vectors(n, b.max_degree, m) {
                let left = GradedPointSet { m, degrees: degs };
                let mut kinds = Vec::new();
                if n + 2 <= b.max_strands {
                    for i in 1..=n + 1 {
                        for a in 0..=b.max_degree {
                            kinds.push(Letter::LeftCusp { i, upper: a });
                        }
                    }
                }
                for i in 1..n {
                    kinds.push(Letter::RightCusp { i });
                }
                for k in 1..n {
                    kinds.push(Letter::Crossing { k });
                }
                for kind in kinds {
                    let Ok(t) = BasicTangle::new(left.clone(), kind) else { continue };
                    if t.crossing_gap().is_some_and(|l| l.abs() > b.max_degree) {
                        continue;
                    }
                    if seen.insert((t.left.clone(), t.right.clone(), t.kind)) {
                        out.push(t);
                    }
                }
            }
        }
    }
    out
}
