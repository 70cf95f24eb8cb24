//! Hom complexes between objects of a homotopy limit of letter categories.
//!
//! An object is a chain of letter objects glued along their shared slices. Here every letter
//! and slice of an object lives on one underlying complex with flags `0..=N`; letter `j` carries
//! flags `j` and `j + 1`. A morphism of degree `k` is a letter map `f_j` of degree `k` for every
//! letter together with a slice homotopy `h_s` of degree `k - 1` for every interior slice, and
//!
//! `D(f, h) = (D f_j, f_s - f_{s+1} - D h_s)`
//!
//! where `f_s` and `f_{s+1}` are the letters on either side of slice `s`.

use super::cochains::{all_vectors, Cochains};
use super::flagged::{Flag, FlaggedComplex};
use super::hom::{unflatten, HomComplex};
use crate::config;
use crate::error::{CyError, Result};
use crate::exact::{Field, FqMatrix};

#[derive(Clone, Debug)]
pub struct HomLimit {
    field: Field,
    m: u32,
    src_dim: usize,
    dst_dim: usize,
    letters: Vec<HomComplex>,
    slices: Vec<HomComplex>,
}

impl HomLimit {
    pub fn new(x: &FlaggedComplex, y: &FlaggedComplex) -> Result<HomLimit> {
        if x.flags.len() != y.flags.len() || x.flags.len() < 2 {
            return Err(CyError::Shape("limit Hom needs two objects with the same number (at least two) of slices".into()));
        }
        let n = x.flags.len() - 1;
        let letters = (0..n)
            .map(|j| HomComplex::new(&x.with_flags(&[j, j + 1]), &y.with_flags(&[j, j + 1])))
            .collect::<Result<Vec<_>>>()?;
        let slices =
            (1..n).map(|s| HomComplex::new(&x.with_flags(&[s]), &y.with_flags(&[s]))).collect::<Result<Vec<_>>>()?;
        Ok(HomLimit { field: x.field, m: x.m, src_dim: x.dim(), dst_dim: y.dim(), letters, slices })
    }

    fn block(&self) -> usize {
        self.src_dim * self.dst_dim
    }

    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    /// The letter map `f_j` of a flattened limit cochain.
    pub fn letter_component(&self, j: usize, v: &[u32]) -> FqMatrix {
        let b = self.block();
        unflatten(self.field, self.dst_dim, self.src_dim, &v[j * b..(j + 1) * b])
    }
}

impl Cochains for HomLimit {
    fn field(&self) -> Field {
        self.field
    }

    fn modulus(&self) -> u32 {
        self.m
    }

    fn ambient(&self) -> usize {
        self.block() * (self.letters.len() + self.slices.len())
    }

    fn basis(&self, k: i64) -> Vec<Vec<u32>> {
        let (b, amb) = (self.block(), self.ambient());
        let embed = |slot: usize, v: &[u32]| {
            let mut w = vec![0; amb];
            w[slot * b..(slot + 1) * b].copy_from_slice(v);
            w
        };
        let mut out = Vec::new();
        for (j, h) in self.letters.iter().enumerate() {
            out.extend(h.basis_ref(k).iter().map(|v| embed(j, v)));
        }
        let nl = self.letters.len();
        for (s, h) in self.slices.iter().enumerate() {
            out.extend(h.basis_ref(k - 1).iter().map(|v| embed(nl + s, v)));
        }
        out
    }

    fn differential(&self, k: i64, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let b = self.block();
        let nl = self.letters.len();
        let mut out = Vec::with_capacity(self.ambient());
        for (j, h) in self.letters.iter().enumerate() {
            out.extend(h.differential(k, &v[j * b..(j + 1) * b]));
        }
        for (s, h) in self.slices.iter().enumerate() {
            let dh = h.differential(k - 1, &v[(nl + s) * b..(nl + s + 1) * b]);
            let (left, right) = (&v[s * b..(s + 1) * b], &v[(s + 1) * b..(s + 2) * b]);
            out.extend((0..b).map(|i| f.sub(f.sub(left[i], right[i]), dh[i])));
        }
        out
    }
}

/// The mapping cone of a degree-zero chain map, with every flag carried along.
fn cone(x: &FlaggedComplex, y: &FlaggedComplex, f: &FqMatrix) -> FlaggedComplex {
    let field = x.field;
    let (nx, ny) = (x.dim(), y.dim());
    let n = nx + ny;
    let mut d = FqMatrix::zeros(field, n, n);
    for i in 0..nx {
        for j in 0..nx {
            d.set(i, j, field.neg(x.d.get(i, j)));
        }
    }
    for i in 0..ny {
        for j in 0..nx {
            d.set(nx + i, j, f.get(i, j));
        }
        for j in 0..ny {
            d.set(nx + i, nx + j, y.d.get(i, j));
        }
    }
    let mut degrees: Vec<i64> = x.degrees.iter().map(|&g| x.reduce(g - 1)).collect();
    degrees.extend(&y.degrees);
    let flags = x
        .flags
        .iter()
        .zip(&y.flags)
        .map(|(fx, fy)| {
            let steps = fx
                .steps
                .iter()
                .zip(&fy.steps)
                .map(|(a, b)| {
                    let mut cols: Vec<Vec<u32>> = a.columns().into_iter().map(|mut v| {
                        v.resize(n, 0);
                        v
                    }).collect();
                    cols.extend(b.columns().into_iter().map(|v| {
                        let mut w = vec![0; nx];
                        w.extend(v);
                        w
                    }));
                    FqMatrix::from_columns(field, n, &cols)
                })
                .collect();
            Flag { steps, points: fx.points.clone() }
        })
        .collect();
    FlaggedComplex { field, m: x.m, degrees, d, flags }
}

/// Whether a flag-preserving chain map induces quasi-isomorphisms on every graded piece of
/// every flag, i.e. is an isomorphism in the filtered derived category.
pub fn filtered_quasi_iso(x: &FlaggedComplex, y: &FlaggedComplex, f: &FqMatrix) -> bool {
    let c = cone(x, y, f);
    let zero = FqMatrix::zeros(c.field, c.dim(), 0);
    c.flags.iter().all(|flag| {
        c.total_subquotient_cohomology(&flag.steps[0], &zero) == 0
            && flag.steps.windows(2).all(|w| c.total_subquotient_cohomology(&w[1], &w[0]) == 0)
    })
}

fn letter_pairs(x: &FlaggedComplex, y: &FlaggedComplex) -> Vec<(FlaggedComplex, FlaggedComplex)> {
    (0..x.flags.len() - 1).map(|j| (x.with_flags(&[j, j + 1]), y.with_flags(&[j, j + 1]))).collect()
}

/// Degree-zero classes from `x` to `y` in the limit whose letter components are all
/// isomorphisms. Stops after `limit` hits when given.
fn invertible_classes(x: &FlaggedComplex, y: &FlaggedComplex, limit: Option<u64>) -> Result<u64> {
    let h = HomLimit::new(x, y)?;
    let h0 = h.cohomology(0);
    let cap = config::max_dim();
    if h0.dim() > cap {
        return Err(CyError::Resource { what: "dim H^0 of limit Hom".into(), needed: h0.dim(), cap });
    }
    let pairs = letter_pairs(x, y);
    let mut count = 0;
    for c in all_vectors(h.field, h0.dim()) {
        let v = h0.combine(h.field, &c);
        let ok = pairs.iter().enumerate().all(|(j, (a, b))| filtered_quasi_iso(a, b, &h.letter_component(j, &v)));
        if ok {
            count += 1;
            if limit.is_some_and(|l| count >= l) {
                break;
            }
        }
    }
    Ok(count)
}

/// `|Aut(x)|` in the limit: units of `H^0 End`.
pub fn limit_aut_order(x: &FlaggedComplex) -> Result<u64> {
    invertible_classes(x, x, None)
}

pub fn limit_isomorphic(x: &FlaggedComplex, y: &FlaggedComplex) -> Result<bool> {
    if x.dim() == 0 && y.dim() == 0 {
        return Ok(true);
    }
    Ok(invertible_classes(x, y, Some(1))? > 0)
}

/// `(dim Ext^0, dim Ext^1)` of an object with itself in the limit.
pub fn limit_ext01(x: &FlaggedComplex) -> Result<(usize, usize)> {
    let h = HomLimit::new(x, x)?;
    Ok((h.cohomology_dim(0), h.cohomology_dim(1)))
}
