//! Filtered complexes over F_q with one or more complete flags.

use std::collections::{BTreeMap, BTreeSet};

use super::points::{reduce_deg, GradedPointSet};
use crate::error::{CyError, Result};
use crate::exact::matrix::ff_reduce;
use crate::exact::{Field, FqMatrix};

/// A chain of subcomplexes `F_0 ⊆ F_1 ⊆ ... ⊆ F_s = C`, one step per point.
///
/// `F_0` is usually zero but may be any acyclic subcomplex; each step is stored as a
/// matrix whose columns are homogeneous and independent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flag {
    pub steps: Vec<FqMatrix>,
    pub points: GradedPointSet,
}

impl Flag {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn step(&self, i: usize) -> &FqMatrix {
        &self.steps[i]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlaggedComplex {
    pub field: Field,
    pub m: u32,
    /// Degree of each basis vector.
    pub degrees: Vec<i64>,
    /// Column `j` is `d(e_j)`.
    pub d: FqMatrix,
    pub flags: Vec<Flag>,
}

/// Degree of a homogeneous nonzero vector.
pub fn vector_degree(degrees: &[i64], v: &[u32]) -> Option<i64> {
    let mut deg = None;
    for (i, &x) in v.iter().enumerate() {
        if x != 0 {
            match deg {
                None => deg = Some(degrees[i]),
                Some(d) if d != degrees[i] => return None,
                _ => {}
            }
        }
    }
    deg
}

/// An independent homogeneous basis for the span of homogeneous vectors.
pub fn graded_span(field: Field, degrees: &[i64], vectors: &[Vec<u32>]) -> Result<FqMatrix> {
    let n = degrees.len();
    let mut by_deg: BTreeMap<i64, Vec<Vec<u32>>> = BTreeMap::new();
    for v in vectors {
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let d = vector_degree(degrees, v).ok_or_else(|| CyError::InvalidObject("inhomogeneous vector".into()))?;
        by_deg.entry(d).or_default().push(v.clone());
    }
    let mut cols = Vec::new();
    for vs in by_deg.values() {
        let m = FqMatrix::from_columns(field, n, vs);
        let red = ff_reduce(&m);
        cols.extend(red.pivots.iter().map(|&p| vs[p].clone()));
    }
    Ok(FqMatrix::from_columns(field, n, &cols))
}

/// Columns of `basis` lying in degree `deg`.
pub fn homogeneous_part(degrees: &[i64], basis: &FqMatrix, deg: i64) -> Vec<Vec<u32>> {
    basis.columns().into_iter().filter(|v| vector_degree(degrees, v) == Some(deg)).collect()
}

/// Coordinate subspace spanned by the first `k` basis vectors.
pub fn coordinate_span(field: Field, n: usize, idx: impl IntoIterator<Item = usize>) -> FqMatrix {
    let cols: Vec<Vec<u32>> = idx
        .into_iter()
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    FqMatrix::from_columns(field, n, &cols)
}

impl FlaggedComplex {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    /// Distinct degrees carried by basis vectors.
    pub fn degree_set(&self) -> BTreeSet<i64> {
        self.degrees.iter().copied().collect()
    }

    pub fn reduce(&self, d: i64) -> i64 {
        reduce_deg(self.m, d)
    }

    /// The same complex keeping only the listed flags, in the given order.
    pub fn with_flags(&self, idx: &[usize]) -> FlaggedComplex {
        FlaggedComplex { flags: idx.iter().map(|&i| self.flags[i].clone()).collect(), ..self.clone() }
    }

    pub fn zero(field: Field, m: u32) -> FlaggedComplex {
        FlaggedComplex {
            field,
            m,
            degrees: vec![],
            d: FqMatrix::zeros(field, 0, 0),
            flags: vec![Flag { steps: vec![FqMatrix::zeros(field, 0, 0)], points: GradedPointSet::empty(m) }],
        }
    }

    /// Cohomology dimensions of the subquotient `V/W` for subcomplexes `W ⊆ V`.
    pub fn subquotient_cohomology(&self, v: &FqMatrix, w: &FqMatrix) -> BTreeMap<i64, usize> {
        let f = self.field;
        let n = self.dim();
        let degs = self.degree_set();
        let rank_at = |j: i64| -> usize {
            let vj = homogeneous_part(&self.degrees, v, j);
            let wj1 = homogeneous_part(&self.degrees, w, self.reduce(j + 1));
            let mut cols: Vec<Vec<u32>> = vj.iter().map(|x| self.d.mul_vec(x)).collect();
            cols.extend(wj1.iter().cloned());
            FqMatrix::from_columns(f, n, &cols).rank() - wj1.len()
        };
        let mut out = BTreeMap::new();
        for &j in &degs {
            let dv = homogeneous_part(&self.degrees, v, j).len();
            let dw = homogeneous_part(&self.degrees, w, j).len();
            let h = dv - dw - rank_at(j) - rank_at(self.reduce(j - 1));
            if h > 0 {
                out.insert(j, h);
            }
        }
        out
    }

    pub fn total_subquotient_cohomology(&self, v: &FqMatrix, w: &FqMatrix) -> usize {
        self.subquotient_cohomology(v, w).values().sum()
    }

    /// Checks `d` has degree +1, `d^2 = 0`, every flag step is a subcomplex, and the
    /// total complex is acyclic. Does not check the rank-one condition on graded pieces.
    pub fn validate_complex(&self) -> Result<()> {
        let n = self.dim();
        if self.d.rows != n || self.d.cols != n {
            return Err(CyError::Shape("differential is not square of the right size".into()));
        }
        for j in 0..n {
            let col = self.d.column(j);
            if let Some(dg) = vector_degree(&self.degrees, &col) {
                if dg != self.reduce(self.degrees[j] + 1) {
                    return Err(CyError::InvalidObject(format!("d(e_{}) has the wrong degree", j + 1)));
                }
            } else if col.iter().any(|&x| x != 0) {
                return Err(CyError::InvalidObject(format!("d(e_{}) is inhomogeneous", j + 1)));
            }
        }
        if !self.d.mul(&self.d)?.is_zero() {
            return Err(CyError::InvalidObject("d^2 != 0".into()));
        }
        let full = FqMatrix::identity(self.field, n);
        let zero = FqMatrix::zeros(self.field, n, 0);
        if self.total_subquotient_cohomology(&full, &zero) != 0 {
            return Err(CyError::InvalidObject("complex is not acyclic".into()));
        }
        for (fi, flag) in self.flags.iter().enumerate() {
            if flag.steps.len() != flag.points.len() + 1 {
                return Err(CyError::Shape(format!("flag {fi} has the wrong number of steps")));
            }
            if flag.steps.last().map(|s| s.cols) != Some(n) {
                return Err(CyError::InvalidObject(format!("flag {fi} does not end at the whole complex")));
            }
            for (si, step) in flag.steps.iter().enumerate() {
                for v in step.columns() {
                    if vector_degree(&self.degrees, &v).is_none() {
                        return Err(CyError::InvalidObject(format!("flag {fi} step {si} is not graded")));
                    }
                    if !contains(step, &self.d.mul_vec(&v)) {
                        return Err(CyError::InvalidObject(format!("flag {fi} step {si} is not d-stable")));
                    }
                }
                if si > 0 && !flag.steps[si - 1].columns().iter().all(|v| contains(step, v)) {
                    return Err(CyError::InvalidObject(format!("flag {fi} is not nested at step {si}")));
                }
            }
        }
        Ok(())
    }

    /// Full check for membership in the rank-one category: complex checks, `F_0` acyclic,
    /// and each `Gr_i` has one-dimensional cohomology sitting in degree `deg(s_i)`.
    pub fn validate_rank_one(&self) -> Result<()> {
        self.validate_complex()?;
        for (fi, flag) in self.flags.iter().enumerate() {
            let zero = FqMatrix::zeros(self.field, self.dim(), 0);
            if self.total_subquotient_cohomology(&flag.steps[0], &zero) != 0 {
                return Err(CyError::InvalidObject(format!("flag {fi}: F_0 is not acyclic")));
            }
            for i in 1..=flag.len() {
                let h = self.subquotient_cohomology(&flag.steps[i], &flag.steps[i - 1]);
                let want = flag.points.deg(i);
                if h.len() != 1 || h.get(&want) != Some(&1) {
                    return Err(CyError::InvalidObject(format!(
                        "flag {fi}: graded piece {i} has cohomology {h:?}, expected rank one in degree {want}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Block direct sum; flags are summed stepwise, so both must have matching flag shapes.
    pub fn direct_sum(&self, o: &FlaggedComplex) -> Result<FlaggedComplex> {
        if self.field != o.field || self.m != o.m || self.flags.len() != o.flags.len() {
            return Err(CyError::Shape("direct sum of incompatible complexes".into()));
        }
        let (n1, n2) = (self.dim(), o.dim());
        let n = n1 + n2;
        let mut d = FqMatrix::zeros(self.field, n, n);
        for i in 0..n1 {
            for j in 0..n1 {
                d.set(i, j, self.d.get(i, j));
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                d.set(n1 + i, n1 + j, o.d.get(i, j));
            }
        }
        let mut flags = Vec::new();
        for (fa, fb) in self.flags.iter().zip(&o.flags) {
            if fa.points.len() != fb.points.len() {
                return Err(CyError::Shape("direct sum of flags of different length".into()));
            }
            let steps = fa
                .steps
                .iter()
                .zip(&fb.steps)
                .map(|(a, b)| {
                    let mut cols: Vec<Vec<u32>> = a
                        .columns()
                        .into_iter()
                        .map(|mut v| {
                            v.extend(std::iter::repeat(0).take(n2));
                            v
                        })
                        .collect();
                    cols.extend(b.columns().into_iter().map(|v| {
                        let mut w = vec![0; n1];
                        w.extend(v);
                        w
                    }));
                    FqMatrix::from_columns(self.field, n, &cols)
                })
                .collect();
            flags.push(Flag { steps, points: fa.points.clone() });
        }
        let mut degrees = self.degrees.clone();
        degrees.extend(&o.degrees);
        Ok(FlaggedComplex { field: self.field, m: self.m, degrees, d, flags })
    }
}

/// Whether `v` lies in the column span of `basis`.
pub fn contains(basis: &FqMatrix, v: &[u32]) -> bool {
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    if basis.cols == 0 {
        return false;
    }
    ff_reduce(basis).in_image(v)
}
