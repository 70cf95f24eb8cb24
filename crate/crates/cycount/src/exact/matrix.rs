//! Dense matrices over F_q and Gauss-Jordan reduction.

use std::fmt;

use super::fq::Field;
use crate::error::{CyError, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FqMatrix {}x{} over F_{}", self.rows, self.cols, self.field.q())?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FqMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        FqMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(CyError::Shape("ragged rows".into()));
        }
        let data = rows.iter().flat_map(|row| row.iter().map(|&v| field.elem(v))).collect();
        Ok(FqMatrix { field, rows: r, cols: c, data })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            debug_assert_eq!(v.len(), rows);
            for (i, &x) in v.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, o: &FqMatrix) -> Result<FqMatrix> {
        if self.cols != o.rows {
            return Err(CyError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let f = self.field;
        let q = f.q();
        let mut out = Self::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j) as u64;
                    if b != 0 {
                        let idx = i * out.cols + j;
                        out.data[idx] = ((out.data[idx] as u64 + a * b) % q) as u32;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        debug_assert_eq!(v.len(), self.cols);
        let q = self.field.q();
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (j, &x) in v.iter().enumerate() {
                    acc += self.get(i, j) as u64 * x as u64;
                }
                (acc % q) as u32
            })
            .collect()
    }

    pub fn add(&self, o: &FqMatrix) -> Result<FqMatrix> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(CyError::Shape("cannot add matrices of different shape".into()));
        }
        let f = self.field;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(FqMatrix { field: f, rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: u32) -> FqMatrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        FqMatrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    /// Stack `self` on top of `o`.
    pub fn vstack(&self, o: &FqMatrix) -> Result<FqMatrix> {
        if self.cols != o.cols {
            return Err(CyError::Shape("vstack with different column counts".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Ok(FqMatrix { field: self.field, rows: self.rows + o.rows, cols: self.cols, data })
    }

    /// Put `o` to the right of `self`.
    pub fn hstack(&self, o: &FqMatrix) -> Result<FqMatrix> {
        if self.rows != o.rows {
            return Err(CyError::Shape("hstack with different row counts".into()));
        }
        let mut m = Self::zeros(self.field, self.rows, self.cols + o.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
            for c in 0..o.cols {
                m.set(r, self.cols + c, o.get(r, c));
            }
        }
        Ok(m)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> FqMatrix {
        let mut m = Self::zeros(self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c));
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        ff_reduce(self).rank
    }
}

/// Result of Gauss-Jordan elimination: `transform * m = rref`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows of the reduced form.
    pub pivots: Vec<usize>,
    /// Columns form a basis of the right kernel.
    pub kernel_basis: FqMatrix,
    /// Columns form a basis of the column space (pivot columns of the input).
    pub image_basis: FqMatrix,
    transform: FqMatrix,
    cols: usize,
}

impl Reduction {
    /// A preimage `x` with `m x = b`, or `None` when `b` is outside the image.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        let y = self.transform.mul_vec(b);
        if y[self.rank..].iter().any(|&v| v != 0) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (i, &p) in self.pivots.iter().enumerate() {
            x[p] = y[i];
        }
        Some(x)
    }

    pub fn in_image(&self, b: &[u32]) -> bool {
        let y = self.transform.mul_vec(b);
        y[self.rank..].iter().all(|&v| v == 0)
    }

    /// Row functionals (as a matrix) vanishing exactly on the column space.
    pub fn cokernel_functionals(&self) -> FqMatrix {
        let rows: Vec<usize> = (self.rank..self.transform.rows).collect();
        let all: Vec<usize> = (0..self.transform.cols).collect();
        self.transform.submatrix(&rows, &all)
    }
}

pub fn ff_reduce(m: &FqMatrix) -> Reduction {
    let f = m.field;
    let (nr, nc) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut t = FqMatrix::identity(f, nr);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..nc {
        if row == nr {
            break;
        }
        let Some(p) = (row..nr).find(|&r| a.get(r, col) != 0) else {
            continue;
        };
        if p != row {
            swap_rows(&mut a, p, row);
            swap_rows(&mut t, p, row);
        }
        let inv = f.inv(a.get(row, col)).expect("pivot is nonzero");
        scale_row(&mut a, row, inv);
        scale_row(&mut t, row, inv);
        for r in 0..nr {
            if r != row {
                let c = a.get(r, col);
                if c != 0 {
                    let neg = f.neg(c);
                    axpy_row(&mut a, r, row, neg);
                    axpy_row(&mut t, r, row, neg);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let rank = pivots.len();
    let free: Vec<usize> = (0..nc).filter(|c| !pivots.contains(c)).collect();
    let mut kernel = FqMatrix::zeros(f, nc, free.len());
    for (k, &fc) in free.iter().enumerate() {
        kernel.set(fc, k, 1);
        for (i, &p) in pivots.iter().enumerate() {
            kernel.set(p, k, f.neg(a.get(i, fc)));
        }
    }
    let all_rows: Vec<usize> = (0..nr).collect();
    let image = m.submatrix(&all_rows, &pivots);
    Reduction { rank, pivots, kernel_basis: kernel, image_basis: image, transform: t, cols: nc }
}

fn swap_rows(m: &mut FqMatrix, a: usize, b: usize) {
    for c in 0..m.cols {
        let (x, y) = (m.get(a, c), m.get(b, c));
        m.set(a, c, y);
        m.set(b, c, x);
    }
}

fn scale_row(m: &mut FqMatrix, r: usize, s: u32) {
    let f = m.field;
    for c in 0..m.cols {
        let v = m.get(r, c);
        m.set(r, c, f.mul(v, s));
    }
}

// row[dst] += s * row[src]
fn axpy_row(m: &mut FqMatrix, dst: usize, src: usize, s: u32) {
    let f = m.field;
    for c in 0..m.cols {
        let v = m.get(src, c);
        if v != 0 {
            let w = m.get(dst, c);
            m.set(dst, c, f.add(w, f.mul(s, v)));
        }
    }
}

/// Coordinates with respect to a basis of a subspace, given as matrix columns.
/// Returns `None` when the vector is not in the span.
pub fn coordinates(basis: &FqMatrix, v: &[u32]) -> Option<Vec<u32>> {
    ff_reduce(basis).solve(v)
}

/// Columns extending the (independent) columns of `sub` to a basis of the span of `sub | sup`,
/// chosen among the columns of `sup`.
pub fn complement_columns(sub: &FqMatrix, sup: &FqMatrix) -> Result<FqMatrix> {
    let joined = sub.hstack(sup)?;
    let red = ff_reduce(&joined);
    let picks: Vec<usize> = red.pivots.iter().filter(|&&p| p >= sub.cols).map(|&p| p - sub.cols).collect();
    let all_rows: Vec<usize> = (0..sup.rows).collect();
    Ok(sup.submatrix(&all_rows, &picks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_zero() {
        let f2 = Field::new(2).unwrap();
        let r = ff_reduce(&FqMatrix::identity(f2, 2));
        assert_eq!(r.rank, 2);
        assert_eq!(r.kernel_basis.cols, 0);
        let f3 = Field::new(3).unwrap();
        let r = ff_reduce(&FqMatrix::zeros(f3, 2, 2));
        assert_eq!(r.rank, 0);
        assert_eq!(r.kernel_basis.cols, 2);
    }

    #[test]
    fn rank_one_over_f5() {
        let f5 = Field::new(5).unwrap();
        let m = FqMatrix::from_rows(f5, &[vec![1, 2], vec![2, 4]]).unwrap();
        let r = ff_reduce(&m);
        assert_eq!(r.rank, 1);
        // kernel spanned by (-2, 1) = (3, 1)
        assert_eq!(r.kernel_basis.column(0), vec![3, 1]);
        assert_eq!(r.solve(&[1, 2]).map(|x| m.mul_vec(&x)), Some(vec![1, 2]));
        assert_eq!(r.solve(&[1, 0]), None);
    }
}
