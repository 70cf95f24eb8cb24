//! Ruling-indexed transfer matrices and the ruling functor on words.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::word::{BasicTangle, Letter, TangleWord};
use crate::complex::points::{enumerate_set_rulings, Ruling};
use crate::exact::{LaurentPoly, QuadExt};

/// Entries a transfer matrix can carry.
pub trait Entry: Clone + PartialEq + std::fmt::Debug {
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn to_json(&self) -> Value;
}

impl Entry for LaurentPoly {
    fn add(&self, o: &Self) -> Self {
        LaurentPoly::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        LaurentPoly::mul(self, o)
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn to_json(&self) -> Value {
        LaurentPoly::to_json(self)
    }
}

impl Entry for QuadExt {
    fn add(&self, o: &Self) -> Self {
        QuadExt::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        QuadExt::mul(self, o)
    }
    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
    fn to_json(&self) -> Value {
        QuadExt::to_json(self)
    }
}

/// Sparse matrix with rows indexed by rulings of the left boundary and columns by rulings of
/// the right boundary. Both index lists are sorted.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferMatrix<T> {
    pub rows: Vec<Ruling>,
    pub cols: Vec<Ruling>,
    entries: BTreeMap<(usize, usize), T>,
}

impl<T: Entry> TransferMatrix<T> {
    pub fn zeros(rows: Vec<Ruling>, cols: Vec<Ruling>) -> Self {
        TransferMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(index: Vec<Ruling>, one: T) -> Self {
        let mut m = Self::zeros(index.clone(), index);
        for i in 0..m.rows.len() {
            m.entries.insert((i, i), one.clone());
        }
        m
    }

    pub fn row_of(&self, r: &Ruling) -> Option<usize> {
        self.rows.binary_search(r).ok()
    }

    pub fn col_of(&self, r: &Ruling) -> Option<usize> {
        self.cols.binary_search(r).ok()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&T> {
        self.entries.get(&(i, j))
    }

    pub fn get_by(&self, r0: &Ruling, r1: &Ruling) -> Option<&T> {
        self.get(self.row_of(r0)?, self.col_of(r1)?)
    }

    /// Adds `v` to the entry at `(i, j)`.
    pub fn accumulate(&mut self, i: usize, j: usize, v: T) {
        let merged = match self.entries.remove(&(i, j)) {
            Some(old) => old.add(&v),
            None => v,
        };
        if !merged.is_zero() {
            self.entries.insert((i, j), merged);
        }
    }

    /// Adds `v` at the entry indexed by a pair of rulings; panics if either is not an index.
    pub fn accumulate_by(&mut self, r0: &Ruling, r1: &Ruling, v: T) {
        let i = self.row_of(r0).unwrap_or_else(|| panic!("{r0} is not a row index"));
        let j = self.col_of(r1).unwrap_or_else(|| panic!("{r1} is not a column index"));
        self.accumulate(i, j, v);
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &T)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Matrix product; panics if the inner indices differ.
    pub fn compose(&self, o: &TransferMatrix<T>) -> TransferMatrix<T> {
        assert_eq!(self.cols, o.rows, "inner ruling indices differ");
        let mut by_row: BTreeMap<usize, Vec<(usize, &T)>> = BTreeMap::new();
        for (&(k, j), v) in &o.entries {
            by_row.entry(k).or_default().push((j, v));
        }
        let mut out = TransferMatrix::zeros(self.rows.clone(), o.cols.clone());
        for (&(i, k), a) in &self.entries {
            if let Some(list) = by_row.get(&k) {
                for &(j, b) in list {
                    out.accumulate(i, j, a.mul(b));
                }
            }
        }
        out
    }

    pub fn map<U: Entry>(&self, mut f: impl FnMut(&T) -> U) -> TransferMatrix<U> {
        let mut out = TransferMatrix::zeros(self.rows.clone(), self.cols.clone());
        for (&(i, j), v) in &self.entries {
            out.accumulate(i, j, f(v));
        }
        out
    }

    /// The single entry of a matrix between empty boundaries (zero is `None`).
    pub fn scalar(&self) -> Option<&T> {
        if self.rows.len() == 1 && self.cols.len() == 1 {
            self.get(0, 0)
        } else {
            None
        }
    }

    pub fn to_json(&self, zero: &T) -> Value {
        let ruling = |r: &Ruling| Value::from(r.pairs().iter().map(|&(s, t)| json!([s, t])).collect::<Vec<_>>());
        let entries: Vec<Value> = (0..self.rows.len())
            .map(|i| Value::from((0..self.cols.len()).map(|j| self.get(i, j).unwrap_or(zero).to_json()).collect::<Vec<_>>()))
            .collect();
        json!({
            "rows": self.rows.iter().map(ruling).collect::<Vec<_>>(),
            "cols": self.cols.iter().map(ruling).collect::<Vec<_>>(),
            "entries": entries,
        })
    }
}

/// The transfer matrix of a single letter.
pub fn letter_transfer(t: &BasicTangle) -> TransferMatrix<LaurentPoly> {
    let rows = enumerate_set_rulings(&t.left);
    let cols = enumerate_set_rulings(&t.right);
    let mut m = TransferMatrix::zeros(rows, cols.clone());
    for rho in &cols {
        match t.kind {
            Letter::LeftCusp { i, .. } => {
                if let Some(r0) = rho.remove_adjacent_pair(i) {
                    m.accumulate_by(&r0, rho, LaurentPoly::one());
                }
            }
            Letter::RightCusp { i } => {
                m.accumulate_by(&rho.insert_adjacent_pair(i), rho, LaurentPoly::monomial(-1, 1));
            }
            Letter::Crossing { k } => {
                // strands that are paired with each other cannot cross
                if rho.pairs_together(k, k + 1) {
                    continue;
                }
                let l = t.crossing_gap().expect("crossing");
                m.accumulate_by(&rho.transpose(k), rho, LaurentPoly::one());
                if l == 0 && rho.normal_at(k) {
                    m.accumulate_by(rho, rho, LaurentPoly::monomial(1, 1));
                }
            }
        }
    }
    m
}

/// `R(w)`: the product of the letter matrices, left to right.
pub fn ruling_transfer(w: &TangleWord) -> TransferMatrix<LaurentPoly> {
    let start = TransferMatrix::identity(enumerate_set_rulings(&w.left), LaurentPoly::one());
    w.letters.iter().fold(start, |acc, t| acc.compose(&letter_transfer(t)))
}

/// The ruling polynomial of a closed word.
pub fn ruling_polynomial(w: &TangleWord) -> Option<LaurentPoly> {
    if !w.is_closed() {
        return None;
    }
    Some(ruling_transfer(w).scalar().cloned().unwrap_or_else(LaurentPoly::zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::parse_tangle;

    #[test]
    fn unknot() {
        let w = parse_tangle("mod 0\nleft:\nL 1 -1\nR 1\n").unwrap();
        assert_eq!(ruling_polynomial(&w).unwrap(), LaurentPoly::monomial(-1, 1));
    }

    #[test]
    fn hopf() {
        for (m, k) in [(0, 0), (0, 3), (1, 1), (2, 2), (3, 1)] {
            let src = format!("mod {}\nleft:\nL 1 {k}\nL 3 -1\nX 2\nX 2\nR 3\nR 1\n", 2 * m);
            let w = parse_tangle(&src).unwrap();
            let want = if k == 0 {
                LaurentPoly::from_terms([(-2, 1), (0, 1)])
            } else {
                LaurentPoly::monomial(-2, 1)
            };
            assert_eq!(ruling_polynomial(&w).unwrap(), want, "m={m} k={k}");
        }
    }

    #[test]
    fn identity_word() {
        let w = parse_tangle("mod 0\nleft: 1 0 1 0\n").unwrap();
        let r = ruling_transfer(&w);
        assert_eq!(r, TransferMatrix::identity(r.rows.clone(), LaurentPoly::one()));
    }
}
