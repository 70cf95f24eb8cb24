//! Hom complexes of flag-preserving maps, their cohomology, automorphism counts and
//! isomorphism tests.

use std::collections::BTreeMap;

use super::flagged::FlaggedComplex;
use super::cochains::{all_vectors, count_units, Cochains, Cohomology};
use super::points::parity_sign;
use crate::config;
use crate::error::{CyError, Result};
use crate::exact::matrix::ff_reduce;
use crate::exact::{Field, FqMatrix};

/// Degreewise bases of `Hom^k(x, y)`, stored as flattened `rows(y) x rows(x)` matrices.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub field: Field,
    pub m: u32,
    pub src_dim: usize,
    pub dst_dim: usize,
    src_d: FqMatrix,
    dst_d: FqMatrix,
    spaces: BTreeMap<i64, Vec<Vec<u32>>>,
}

fn check_compatible(x: &FlaggedComplex, y: &FlaggedComplex) -> Result<()> {
    if x.field != y.field || x.m != y.m {
        return Err(CyError::Shape("Hom between complexes over different fields or gradings".into()));
    }
    if x.flags.len() != y.flags.len() {
        return Err(CyError::Shape("Hom between objects with different numbers of flags".into()));
    }
    for (a, b) in x.flags.iter().zip(&y.flags) {
        if a.steps.len() != b.steps.len() {
            return Err(CyError::Shape("Hom between flags of different lengths".into()));
        }
    }
    Ok(())
}

pub fn unflatten(field: Field, rows: usize, cols: usize, v: &[u32]) -> FqMatrix {
    let mut m = FqMatrix::zeros(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, v[i * cols + j]);
        }
    }
    m
}

pub fn flatten(m: &FqMatrix) -> Vec<u32> {
    (0..m.rows).flat_map(|i| (0..m.cols).map(move |j| (i, j))).map(|(i, j)| m.get(i, j)).collect()
}

impl HomComplex {
    pub fn new(x: &FlaggedComplex, y: &FlaggedComplex) -> Result<HomComplex> {
        check_compatible(x, y)?;
        let f = x.field;
        let (nx, ny) = (x.dim(), y.dim());
        let mut by_deg: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
        for i in 0..ny {
            for j in 0..nx {
                by_deg.entry(x.reduce(y.degrees[i] - x.degrees[j])).or_default().push((i, j));
            }
        }
        // Every flag step of x must land in the matching step of y.
        let mut conditions = Vec::new();
        for (fx, fy) in x.flags.iter().zip(&y.flags) {
            for (sx, sy) in fx.steps.iter().zip(&fy.steps) {
                if sx.cols == 0 || sy.cols == ny {
                    continue;
                }
                let ann = if sy.cols == 0 {
                    FqMatrix::identity(f, ny)
                } else {
                    ff_reduce(sy).cokernel_functionals()
                };
                conditions.push((ann, sx.clone()));
            }
        }
        let mut spaces = BTreeMap::new();
        for (k, pos) in by_deg {
            let mut rows: Vec<Vec<u32>> = Vec::new();
            for (ann, sx) in &conditions {
                for r in 0..ann.rows {
                    for c in 0..sx.cols {
                        let row: Vec<u32> =
                            pos.iter().map(|&(i, j)| f.mul(ann.get(r, i), sx.get(j, c))).collect();
                        if row.iter().any(|&v| v != 0) {
                            rows.push(row);
                        }
                    }
                }
            }
            let kernel = if rows.is_empty() {
                FqMatrix::identity(f, pos.len())
            } else {
                let cm = FqMatrix::from_columns(f, pos.len(), &rows).transpose();
                ff_reduce(&cm).kernel_basis
            };
            let basis: Vec<Vec<u32>> = kernel
                .columns()
                .into_iter()
                .map(|kv| {
                    let mut v = vec![0; ny * nx];
                    for (t, &(i, j)) in pos.iter().enumerate() {
                        v[i * nx + j] = kv[t];
                    }
                    v
                })
                .collect();
            if !basis.is_empty() {
                spaces.insert(k, basis);
            }
        }
        Ok(HomComplex {
            field: f,
            m: x.m,
            src_dim: nx,
            dst_dim: ny,
            src_d: x.d.clone(),
            dst_d: y.d.clone(),
            spaces,
        })
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.spaces.keys().copied().collect()
    }

    pub fn basis_ref(&self, k: i64) -> &[Vec<u32>] {
        self.spaces.get(&self.reduce(k)).map_or(&[], |v| v.as_slice())
    }

    pub fn as_matrix(&self, v: &[u32]) -> FqMatrix {
        unflatten(self.field, self.dst_dim, self.src_dim, v)
    }
}

impl Cochains for HomComplex {
    fn field(&self) -> Field {
        self.field
    }

    fn modulus(&self) -> u32 {
        self.m
    }

    fn ambient(&self) -> usize {
        self.src_dim * self.dst_dim
    }

    fn basis(&self, k: i64) -> Vec<Vec<u32>> {
        self.basis_ref(k).to_vec()
    }

    /// `D f = d_y f - (-1)^k f d_x` on a flattened degree-`k` map.
    fn differential(&self, k: i64, v: &[u32]) -> Vec<u32> {
        let fm = self.as_matrix(v);
        let a = self.dst_d.mul(&fm).expect("shapes agree");
        let b = fm.mul(&self.src_d).expect("shapes agree");
        let s = if parity_sign(k) == 1 { self.field.neg(1) } else { 1 };
        flatten(&a.add(&b.scale(s)).expect("shapes agree"))
    }
}

/// `H^0 End(x)` with its multiplication.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub field: Field,
    pub h0: Cohomology,
    pub dim_x: usize,
    /// `table[i][j]` = coordinates of `reps[i] * reps[j]`.
    table: Vec<Vec<Vec<u32>>>,
}

impl EndAlgebra {
    pub fn new(x: &FlaggedComplex) -> Result<EndAlgebra> {
        let hom = HomComplex::new(x, x)?;
        let h0 = hom.cohomology(0);
        let mats: Vec<FqMatrix> = h0.reps.iter().map(|r| hom.as_matrix(r)).collect();
        let mut table = Vec::new();
        for a in &mats {
            let mut row = Vec::new();
            for b in &mats {
                let prod = flatten(&a.mul(b)?);
                row.push(h0.coords(&prod).ok_or_else(|| CyError::Internal("product of cycles is not a cycle".into()))?);
            }
            table.push(row);
        }
        Ok(EndAlgebra { field: x.field, h0, dim_x: x.dim(), table })
    }

    pub fn dim(&self) -> usize {
        self.h0.dim()
    }

    /// Number of units of the algebra, by exhausting all `q^dim` elements.
    pub fn unit_count(&self) -> Result<u64> {
        let h = self.dim();
        let cap = config::max_dim();
        if h > cap {
            return Err(CyError::Resource { what: "dim H^0 End".into(), needed: h, cap });
        }
        Ok(count_units(self.field, &self.table))
    }
}

/// `|Aut(x)|`: the number of units of `H^0 End(x)`.
pub fn aut_order(x: &FlaggedComplex) -> Result<u64> {
    EndAlgebra::new(x)?.unit_count()
}

/// A closed degree-0 map `x -> y` that is invertible in `H^0`, if one exists.
pub fn find_isomorphism(x: &FlaggedComplex, y: &FlaggedComplex) -> Result<Option<FqMatrix>> {
    let hxy = HomComplex::new(x, y)?;
    let hyx = HomComplex::new(y, x)?;
    let fwd = hxy.cohomology(0);
    let back = hyx.cohomology(0);
    let ex = HomComplex::new(x, x)?.cohomology(0);
    let ey = HomComplex::new(y, y)?.cohomology(0);
    let cap = config::max_dim();
    if fwd.dim() > cap {
        return Err(CyError::Resource { what: "dim H^0 Hom".into(), needed: fwd.dim(), cap });
    }
    let f = x.field;
    let id_x = ex.coords(&flatten(&FqMatrix::identity(f, x.dim()))).ok_or_else(|| CyError::Internal("identity is not a cycle".into()))?;
    let id_y = ey.coords(&flatten(&FqMatrix::identity(f, y.dim()))).ok_or_else(|| CyError::Internal("identity is not a cycle".into()))?;
    let target: Vec<u32> = id_x.iter().chain(&id_y).copied().collect();
    if target.is_empty() {
        // both endomorphism algebras vanish: both objects are zero in H^0
        return Ok(Some(FqMatrix::zeros(f, y.dim(), x.dim())));
    }
    let gmats: Vec<FqMatrix> = back.reps.iter().map(|r| hyx.as_matrix(r)).collect();
    for c in all_vectors(f, fwd.dim()) {
        if c.iter().all(|&v| v == 0) {
            continue;
        }
        let mut fv = vec![0u32; hxy.src_dim * hxy.dst_dim];
        for (ci, r) in c.iter().zip(&fwd.reps) {
            for (a, &b) in fv.iter_mut().zip(r) {
                *a = f.add(*a, f.mul(*ci, b));
            }
        }
        let fm = hxy.as_matrix(&fv);
        let mut cols = Vec::new();
        for g in &gmats {
            let gf = ex.coords(&flatten(&g.mul(&fm)?)).ok_or_else(|| CyError::Internal("gf not a cycle".into()))?;
            let fg = ey.coords(&flatten(&fm.mul(g)?)).ok_or_else(|| CyError::Internal("fg not a cycle".into()))?;
            cols.push(gf.into_iter().chain(fg).collect::<Vec<u32>>());
        }
        let sys = FqMatrix::from_columns(f, target.len(), &cols);
        if ff_reduce(&sys).in_image(&target) {
            return Ok(Some(fm));
        }
    }
    Ok(None)
}

pub fn is_isomorphic(x: &FlaggedComplex, y: &FlaggedComplex) -> Result<bool> {
    Ok(find_isomorphism(x, y)?.is_some())
}

/// Rank of `H^0 End(x) -> ⊕ H^0 End(y)` over targets `y` carrying the same underlying complex,
/// each map sending a cycle to itself.
pub fn restriction_rank(x: &FlaggedComplex, targets: &[FlaggedComplex]) -> Result<usize> {
    let h0 = HomComplex::new(x, x)?.cohomology(0);
    let tgt: Vec<Cohomology> = targets
        .iter()
        .map(|y| {
            if y.d != x.d || y.degrees != x.degrees {
                return Err(CyError::Shape("restriction target has a different underlying complex".into()));
            }
            Ok(HomComplex::new(y, y)?.cohomology(0))
        })
        .collect::<Result<_>>()?;
    let mut cols = Vec::new();
    for r in &h0.reps {
        let mut v = Vec::new();
        for t in &tgt {
            v.extend(t.coords(r).ok_or_else(|| CyError::Internal("restricted cycle is not a cycle".into()))?);
        }
        cols.push(v);
    }
    let len = tgt.iter().map(|t| t.dim()).sum();
    Ok(FqMatrix::from_columns(x.field, len, &cols).rank())
}

/// `(dim Ext^0(x,x), dim Ext^1(x,x))`.
pub fn ext01(x: &FlaggedComplex) -> Result<(usize, usize)> {
    let h = HomComplex::new(x, x)?;
    Ok((h.cohomology_dim(0), h.cohomology_dim(1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::barannikov::barannikov_form;
    use crate::complex::ext::ext_profile;
    use crate::complex::points::{GradedPointSet, Ruling};

    fn unknot_object(q: u64, m: u32) -> FlaggedComplex {
        let f = Field::new(q).unwrap();
        let s = GradedPointSet::new(m, vec![0, -1]);
        barannikov_form(f, &Ruling::from_pairs([(1, 2)]), &s).unwrap()
    }

    #[test]
    fn unknot_ext_and_aut() {
        for q in [2, 3, 5] {
            for m in [0, 1, 2, 3] {
                let x = unknot_object(q, m);
                let p = ext_profile(&x, &x).unwrap();
                assert_eq!(p.dims.into_iter().collect::<Vec<_>>(), vec![(0, 1)], "q={q} m={m}");
                assert_eq!(aut_order(&x).unwrap(), q - 1);
            }
        }
    }

    #[test]
    fn zero_object() {
        let f = Field::new(3).unwrap();
        let z = FlaggedComplex::zero(f, 0);
        assert_eq!(aut_order(&z).unwrap(), 1);
        assert!(is_isomorphic(&z, &z).unwrap());
        let x = unknot_object(3, 0);
        assert_eq!(ext_profile(&x.with_flags(&[]), &FlaggedComplex::zero(f, 0).with_flags(&[])).unwrap().total(), 0);
    }

    #[test]
    fn differential_squares_to_zero() {
        let x = unknot_object(3, 1);
        let y = x.direct_sum(&x).unwrap();
        let h = HomComplex::new(&y, &y).unwrap();
        for k in h.degrees() {
            for b in h.basis(k) {
                let db = h.differential(k, &b);
                assert!(h.differential(k + 1, &db).iter().all(|&v| v == 0));
            }
        }
    }
}
