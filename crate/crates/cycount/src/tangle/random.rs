//! Seeded random tangle words for property tests and the verification corpus.

use rand::seq::SliceRandom;
use rand::Rng;

use super::word::{Letter, TangleWord};
use crate::complex::points::GradedPointSet;

/// A valid word with at most `max_len` letters and `max_strands` strands at any slice.
///
/// Degrees are drawn from a narrow window so that equal-degree crossings are common.
pub fn random_word<R: Rng>(rng: &mut R, m: u32, max_len: usize, max_strands: usize) -> TangleWord {
    let n0 = rng.gen_range(0..=max_strands.min(4));
    let degs: Vec<i64> = (0..n0).map(|_| rng.gen_range(-1..=1)).collect();
    let mut w = TangleWord::identity(GradedPointSet::new(m, degs));
    let len = rng.gen_range(0..=max_len);
    for _ in 0..len {
        let right = w.right().clone();
        let n = right.len();
        let mut options = Vec::new();
        if n + 2 <= max_strands {
            for i in 1..=n + 1 {
                options.push(Letter::LeftCusp { i, upper: rng.gen_range(-1..=1) });
            }
        }
        for i in 1..n {
            if right.can_pair(i, i + 1) {
                options.push(Letter::RightCusp { i });
            }
            options.push(Letter::Crossing { k: i });
            options.push(Letter::Crossing { k: i });
        }
        let Some(&letter) = options.choose(rng) else { break };
        w.push(letter).expect("options are valid by construction");
    }
    w
}

/// Like [`random_word`] but closed: starts empty and caps off with right cusps where possible.
pub fn random_closed_word<R: Rng>(rng: &mut R, m: u32, max_len: usize, max_strands: usize) -> Option<TangleWord> {
    let mut w = TangleWord::identity(GradedPointSet::empty(m));
    let mut budget = max_len;
    while budget > 0 {
        let right = w.right().clone();
        let n = right.len();
        let mut options = Vec::new();
        if n + 2 <= max_strands {
            options.push(Letter::LeftCusp { i: rng.gen_range(1..=n + 1), upper: rng.gen_range(-1..=1) });
        }
        for i in 1..n {
            if right.can_pair(i, i + 1) {
                options.push(Letter::RightCusp { i });
            }
            options.push(Letter::Crossing { k: i });
        }
        let &letter = options.choose(rng)?;
        w.push(letter).expect("valid by construction");
        budget -= 1;
        if w.right().is_empty() && rng.gen_bool(0.3) {
            break;
        }
    }
    while !w.right().is_empty() {
        let right = w.right().clone();
        let i = (1..right.len()).find(|&i| right.can_pair(i, i + 1))?;
        w.push(Letter::RightCusp { i }).ok()?;
    }
    Some(w)
}

/// A closed plat-like word: left cusps up to `strands` strands, up to `crossings` crossings,
/// then right cusps. `None` if the crossings leave no way to cap off.
pub fn random_plat_word<R: Rng>(rng: &mut R, m: u32, strands: usize, crossings: usize) -> Option<TangleWord> {
    let mut w = TangleWord::identity(GradedPointSet::empty(m));
    while w.right().len() < strands {
        let n = w.right().len();
        w.push(Letter::LeftCusp { i: rng.gen_range(1..=n + 1), upper: rng.gen_range(-1..=1) }).ok()?;
    }
    for _ in 0..rng.gen_range(0..=crossings) {
        let n = w.right().len();
        if n < 2 {
            break;
        }
        w.push(Letter::Crossing { k: rng.gen_range(1..n) }).ok()?;
    }
    while !w.right().is_empty() {
        let right = w.right().clone();
        let i = (1..right.len()).find(|&i| right.can_pair(i, i + 1))?;
        w.push(Letter::RightCusp { i }).ok()?;
    }
    Some(w)
}
