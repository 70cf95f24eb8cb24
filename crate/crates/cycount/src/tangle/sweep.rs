//! Direct enumeration of tangle rulings by sweeping the front from left to right.
//!
//! Each ruling is tracked individually as the sequence of its slice matchings, without the
//! merging that the transfer-matrix product performs, so the two routes check each other.

use super::transfer::TransferMatrix;
use super::word::{Letter, TangleWord};
use crate::complex::points::{enumerate_set_rulings, Ruling};
use crate::error::{CyError, Result};
use crate::exact::LaurentPoly;

/// Upper bound on the number of rulings a single sweep may produce.
pub const MAX_SWEEP_RULINGS: usize = 1 << 20;

/// One ruling of a word: its restriction to every slice and its switch count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleRuling {
    /// Slice matchings, `slices[0]` on the left boundary and one more per letter.
    pub slices: Vec<Ruling>,
    pub switches: usize,
}

impl TangleRuling {
    pub fn left(&self) -> &Ruling {
        &self.slices[0]
    }

    pub fn right(&self) -> &Ruling {
        self.slices.last().expect("at least one slice")
    }
}

/// All rulings of `w`, grouped by left boundary ruling in sorted order.
pub fn enumerate_tangle_rulings(w: &TangleWord) -> Result<Vec<TangleRuling>> {
    let mut out = Vec::new();
    for start in enumerate_set_rulings(&w.left) {
        let mut path = vec![start];
        walk(w, 0, &mut path, 0, &mut out)?;
    }
    Ok(out)
}

fn walk(w: &TangleWord, pos: usize, path: &mut Vec<Ruling>, sw: usize, out: &mut Vec<TangleRuling>) -> Result<()> {
    let Some(t) = w.letters.get(pos) else {
        if out.len() >= MAX_SWEEP_RULINGS {
            return Err(CyError::Resource { what: "tangle rulings".into(), needed: out.len() + 1, cap: MAX_SWEEP_RULINGS });
        }
        out.push(TangleRuling { slices: path.clone(), switches: sw });
        return Ok(());
    };
    let cur = path.last().expect("nonempty").clone();
    let mut step = |next: Ruling, sw: usize, path: &mut Vec<Ruling>| -> Result<()> {
        path.push(next);
        let r = walk(w, pos + 1, path, sw, out);
        path.pop();
        r
    };
    match t.kind {
        Letter::LeftCusp { i, .. } => step(cur.insert_adjacent_pair(i), sw, path)?,
        Letter::RightCusp { i } => {
            if let Some(next) = cur.remove_adjacent_pair(i) {
                step(next, sw, path)?;
            }
        }
        Letter::Crossing { k } => {
            // the two strands through a crossing must belong to different ruling disks
            if cur.pairs_together(k, k + 1) {
                return Ok(());
            }
            // follow both strands through the crossing
            step(cur.transpose(k), sw, path)?;
            // or jump branches, allowed between equal degrees when the disks do not interlace
            if t.left.deg(k) == t.left.deg(k + 1) && cur.normal_at(k) {
                step(cur.clone(), sw + 1, path)?;
            }
        }
    }
    Ok(())
}

/// The ruling functor assembled from the enumeration: entry `(∂0ρ, ∂1ρ)` collects `z^{sw - rc}`.
pub fn sweep_transfer(w: &TangleWord) -> Result<TransferMatrix<LaurentPoly>> {
    let rc = w.right_cusps() as i64;
    let mut m = TransferMatrix::zeros(enumerate_set_rulings(&w.left), enumerate_set_rulings(w.right()));
    for r in enumerate_tangle_rulings(w)? {
        m.accumulate_by(r.left(), r.right(), LaurentPoly::monomial(r.switches as i64 - rc, 1));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::parse_tangle;

    #[test]
    fn unknot_has_one_ruling() {
        let w = parse_tangle("mod 0\nleft:\nL 1 -1\nR 1\n").unwrap();
        let r = enumerate_tangle_rulings(&w).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].switches, 0);
    }

    #[test]
    fn hopf_k0_switch_counts() {
        let w = parse_tangle("mod 0\nleft:\nL 1 0\nL 3 -1\nX 2\nX 2\nR 3\nR 1\n").unwrap();
        let mut sw: Vec<usize> = enumerate_tangle_rulings(&w).unwrap().iter().map(|r| r.switches).collect();
        sw.sort();
        assert_eq!(sw, vec![0, 2]);
    }
}
