//! Finite cochain complexes presented inside an ambient coordinate space, and their cohomology.

use super::points::reduce_deg;
use crate::exact::matrix::{ff_reduce, Reduction};
use crate::exact::{Field, FqMatrix};

/// A cohomology group presented as cycles modulo boundaries inside the ambient space.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: i64,
    /// Representatives of a basis.
    pub reps: Vec<Vec<u32>>,
    boundary_count: usize,
    ambient: usize,
    red: Reduction,
}

impl Cohomology {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of a cycle; `None` if the vector is not a cycle.
    pub fn coords(&self, cycle: &[u32]) -> Option<Vec<u32>> {
        let sol = self.red.solve(cycle)?;
        Some(sol[self.boundary_count..].to_vec())
    }

    /// A cycle representing the class with the given coordinates.
    pub fn combine(&self, field: Field, c: &[u32]) -> Vec<u32> {
        let mut v = vec![0u32; self.ambient];
        for (ci, r) in c.iter().zip(&self.reps) {
            if *ci != 0 {
                for (a, &b) in v.iter_mut().zip(r) {
                    *a = field.add(*a, field.mul(*ci, b));
                }
            }
        }
        v
    }
}

/// A cochain complex with a basis of each degree embedded in a common ambient space.
pub trait Cochains {
    fn field(&self) -> Field;
    /// Half the grading modulus; zero for a `Z`-grading.
    fn modulus(&self) -> u32;
    fn ambient(&self) -> usize;
    fn basis(&self, k: i64) -> Vec<Vec<u32>>;
    fn differential(&self, k: i64, v: &[u32]) -> Vec<u32>;

    fn reduce(&self, k: i64) -> i64 {
        reduce_deg(self.modulus(), k)
    }

    /// Cycles of degree `k`.
    fn cycles(&self, k: i64) -> Vec<Vec<u32>> {
        let f = self.field();
        let basis = self.basis(k);
        if basis.is_empty() {
            return vec![];
        }
        let images: Vec<Vec<u32>> = basis.iter().map(|b| self.differential(k, b)).collect();
        let ker = ff_reduce(&FqMatrix::from_columns(f, self.ambient(), &images)).kernel_basis;
        ker.columns()
            .into_iter()
            .map(|c| {
                let mut v = vec![0u32; self.ambient()];
                for (t, b) in basis.iter().enumerate() {
                    if c[t] != 0 {
                        for (vi, &bi) in v.iter_mut().zip(b) {
                            *vi = f.add(*vi, f.mul(c[t], bi));
                        }
                    }
                }
                v
            })
            .collect()
    }

    /// An independent spanning set of the image of `D` from degree `k - 1`.
    fn boundaries(&self, k: i64) -> Vec<Vec<u32>> {
        let prev = self.reduce(k - 1);
        let images: Vec<Vec<u32>> = self.basis(prev).iter().map(|b| self.differential(prev, b)).collect();
        if images.is_empty() {
            return vec![];
        }
        let red = ff_reduce(&FqMatrix::from_columns(self.field(), self.ambient(), &images));
        red.pivots.iter().map(|&p| images[p].clone()).collect()
    }

    fn cohomology(&self, k: i64) -> Cohomology {
        let k = self.reduce(k);
        let f = self.field();
        let bnd = self.boundaries(k);
        let mut cols = bnd.clone();
        cols.extend(self.cycles(k));
        let red = ff_reduce(&FqMatrix::from_columns(f, self.ambient(), &cols));
        let reps: Vec<Vec<u32>> = red.pivots.iter().filter(|&&p| p >= bnd.len()).map(|&p| cols[p].clone()).collect();
        let mut basis = bnd.clone();
        basis.extend(reps.iter().cloned());
        let red = ff_reduce(&FqMatrix::from_columns(f, self.ambient(), &basis));
        Cohomology { degree: k, reps, boundary_count: bnd.len(), ambient: self.ambient(), red }
    }

    fn cohomology_dim(&self, k: i64) -> usize {
        self.cycles(k).len() - self.boundaries(k).len()
    }
}

/// Number of units of a finite algebra with basis `0..h`, given the coordinates
/// `table[i][j]` of the product of basis elements `i` and `j`.
pub fn count_units(field: Field, table: &[Vec<Vec<u32>>]) -> u64 {
    let h = table.len();
    let mut count = 0;
    for c in all_vectors(field, h) {
        let mut m = FqMatrix::zeros(field, h, h);
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            for j in 0..h {
                for (r, &t) in table[i][j].iter().enumerate() {
                    let v = m.get(r, j);
                    m.set(r, j, field.add(v, field.mul(ci, t)));
                }
            }
        }
        if m.rank() == h {
            count += 1;
        }
    }
    count
}

/// Every vector of `F_q^n` in lexicographic order.
pub fn all_vectors(field: Field, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let q = field.q();
    let total = q.pow(n as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0u32; n];
        for slot in v.iter_mut() {
            *slot = (idx % q) as u32;
            idx /= q;
        }
        v
    })
}
