//! The root category `D_2(Nil)` of nilpotent representations of the Jordan quiver, a 1-CY
//! category whose objects are pairs of partitions `(H^0, H^1)`.
//!
//! Morphisms of degree `p` from `Z` to `X` have components `Z_a → X_b` for `a, b ∈ Z/2`, each
//! a heart `Hom` when `b + p - a` is even and a heart `Ext^1` otherwise. Composition is the
//! componentwise Yoneda product, which is plain matrix multiplication on representatives
//! (`Ext^1 ∘ Ext^1` lands in `Ext^2 = 0`).

use std::fmt;

use super::jordan::{
    aut_order_from_blocks, count_submodules, ext_basis, ext_coords, hom_basis, hom_coords, hom_dim, nilpotent_matrix,
    subquotient_type, Partition,
};
use super::{CategoryModel, ExtRecord};
use crate::complex::cochains::all_vectors;
use crate::config;
use crate::error::{CyError, Result};
use crate::exact::matrix::ff_reduce;
use crate::exact::{Field, FqMatrix};

/// Largest total dimension `|H^0| + |H^1|` accepted as an input object.
pub const MAX_NIL_SIZE: usize = 12;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NilClass {
    pub h0: Partition,
    pub h1: Partition,
}

impl NilClass {
    pub fn new(h0: Partition, h1: Partition) -> Self {
        NilClass { h0, h1 }
    }

    /// `M[0]` for a heart module `M`.
    pub fn stalk0(p: Partition) -> Self {
        NilClass { h0: p, h1: Partition::empty() }
    }

    /// `M[1]`.
    pub fn stalk1(p: Partition) -> Self {
        NilClass { h0: Partition::empty(), h1: p }
    }

    pub fn part(&self, a: usize) -> &Partition {
        if a == 0 {
            &self.h0
        } else {
            &self.h1
        }
    }

    pub fn size(&self) -> usize {
        self.h0.size() + self.h1.size()
    }

    pub fn shift(&self) -> Self {
        NilClass { h0: self.h1.clone(), h1: self.h0.clone() }
    }
}

impl fmt::Display for NilClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.h0, self.h1)
    }
}

/// Components `(e, f, g, e')` of an element of `Ext^1(Z, X)`:
/// `e ∈ Ext^1(Z_0, X_0)`, `f ∈ Hom(Z_0, X_1)`, `g ∈ Hom(Z_1, X_0)`, `e' ∈ Ext^1(Z_1, X_1)`,
/// the two extension classes given by representatives `ψ` as in [`super::jordan::ext_rep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadruple {
    pub e: FqMatrix,
    pub f: FqMatrix,
    pub g: FqMatrix,
    pub e2: FqMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilExt {
    pub z: NilClass,
    pub x: NilClass,
    pub coords: Vec<u32>,
}

#[derive(Clone, Debug)]
struct Block {
    a: usize,
    b: usize,
    ext: bool,
    src: Partition,
    dst: Partition,
    basis: Vec<FqMatrix>,
    /// Nonzero entries `(row, col, value)` of each basis matrix.
    entries: Vec<Vec<(usize, usize, u32)>>,
}

/// Degree-`p` morphism space between two objects, with its component blocks in the order
/// `(0,0), (0,1), (1,0), (1,1)`.
#[derive(Clone, Debug)]
struct GradedSpace {
    field: Field,
    degree: i64,
    blocks: Vec<Block>,
}

type Components = [[FqMatrix; 2]; 2];

impl GradedSpace {
    fn new(field: Field, p: i64, z: &NilClass, x: &NilClass) -> Self {
        let mut blocks = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                let ext = (b as i64 + p - a as i64).rem_euclid(2) == 1;
                let (src, dst) = (z.part(a).clone(), x.part(b).clone());
                let basis = if ext { ext_basis(field, &src, &dst) } else { hom_basis(field, &src, &dst) };
                let entries = basis.iter().map(nonzero_entries).collect();
                blocks.push(Block { a, b, ext, src, dst, basis, entries });
            }
        }
        GradedSpace { field, degree: p, blocks }
    }

    fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.basis.len()).sum()
    }

    fn is_ext(&self, a: usize, b: usize) -> bool {
        self.blocks[2 * a + b].ext
    }

    fn element(&self, coords: &[u32]) -> Components {
        let f = self.field;
        let mut comps: Vec<FqMatrix> = Vec::with_capacity(4);
        let mut k = 0;
        for blk in &self.blocks {
            let mut m = FqMatrix::zeros(f, blk.dst.size(), blk.src.size());
            for entries in &blk.entries {
                let c = coords[k];
                k += 1;
                if c == 0 {
                    continue;
                }
                for &(r, col, v) in entries {
                    m.set(r, col, f.add(m.get(r, col), f.mul(c, v)));
                }
            }
            comps.push(m);
        }
        let mut it = comps.into_iter();
        let (c00, c01, c10, c11) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
        [[c00, c01], [c10, c11]]
    }

    fn basis_elements(&self) -> Vec<Components> {
        let d = self.dim();
        (0..d)
            .map(|k| {
                let mut v = vec![0; d];
                v[k] = 1;
                self.element(&v)
            })
            .collect()
    }

    fn coords(&self, comps: &Components) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.dim());
        for blk in &self.blocks {
            let m = &comps[blk.a][blk.b];
            if blk.ext {
                out.extend(ext_coords(self.field, m, &blk.src, &blk.dst));
            } else {
                out.extend(hom_coords(m, &blk.src, &blk.dst));
            }
        }
        out
    }
}

fn nonzero_entries(m: &FqMatrix) -> Vec<(usize, usize, u32)> {
    let mut out = Vec::new();
    for r in 0..m.rows {
        for c in 0..m.cols {
            if m.get(r, c) != 0 {
                out.push((r, c, m.get(r, c)));
            }
        }
    }
    out
}

/// `β ∘ α` for `α: Z → X` in `left` and `β: X → Y` in `right`; component `(a, c)` is
/// `Σ_b β_{bc} α_{ab}`, dropping products of two extension classes.
fn compose(field: Field, right: &GradedSpace, beta: &Components, left: &GradedSpace, alpha: &Components, z: &NilClass, y: &NilClass) -> Components {
    let mut out: Vec<FqMatrix> = Vec::with_capacity(4);
    for a in 0..2 {
        for c in 0..2 {
            let mut acc = FqMatrix::zeros(field, y.part(c).size(), z.part(a).size());
            for b in 0..2 {
                if left.is_ext(a, b) && right.is_ext(b, c) {
                    continue;
                }
                let mut prod = beta[b][c].mul(&alpha[a][b]).expect("composable");
                // Pulling an extension back along a Hom component of odd degree picks up a sign,
                // as it does for chain maps between the periodic free resolutions.
                if right.is_ext(b, c) && left.degree.rem_euclid(2) == 1 {
                    prod = prod.scale(field.neg(1));
                }
                acc = acc.add(&prod).expect("same shape");
            }
            out.push(acc);
        }
    }
    let mut it = out.into_iter();
    let (c00, c01, c10, c11) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
    [[c00, c01], [c10, c11]]
}

#[derive(Clone, Debug)]
pub struct RootNilpotent {
    field: Field,
    size_bound: usize,
}

pub fn build_root_nilpotent(q: u64, size_bound: usize) -> Result<RootNilpotent> {
    if size_bound > MAX_NIL_SIZE {
        return Err(CyError::Resource { what: "root category size bound".into(), needed: size_bound, cap: MAX_NIL_SIZE });
    }
    Ok(RootNilpotent { field: Field::new(q)?, size_bound })
}

impl RootNilpotent {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn size_bound(&self) -> usize {
        self.size_bound
    }

    fn check(&self, x: &NilClass) -> Result<()> {
        if x.size() > self.size_bound {
            return Err(CyError::Resource { what: format!("object {x}"), needed: x.size(), cap: self.size_bound });
        }
        Ok(())
    }

    /// Every class with both cohomologies fitting inside `bound`.
    pub fn classes_within(&self, bound: &Partition) -> Vec<NilClass> {
        let subs = bound.sub_partitions();
        let mut out = Vec::new();
        for a in &subs {
            for b in &subs {
                out.push(NilClass::new(a.clone(), b.clone()));
            }
        }
        out
    }

    fn space(&self, p: i64, z: &NilClass, x: &NilClass) -> GradedSpace {
        GradedSpace::new(self.field, p, z, x)
    }

    /// Quadruples of the basis of `Ext^1(z, x)`, aligned with the coordinates of [`NilExt`].
    pub fn ext1_basis(&self, z: &NilClass, x: &NilClass) -> Vec<Quadruple> {
        self.space(1, z, x)
            .basis_elements()
            .into_iter()
            .map(|[[e, f], [g, e2]]| Quadruple { e, f, g, e2 })
            .collect()
    }

    /// Every element of `Ext^1(z, x)` lazily, ignoring the enumeration cap. Exhaustive
    /// sweeps use this on purpose; everything else goes through the capped enumeration.
    pub fn ext1_iter(&self, z: &NilClass, x: &NilClass) -> Result<impl Iterator<Item = NilExt>> {
        self.check(z)?;
        self.check(x)?;
        let d = self.space(1, z, x).dim();
        let (z, x) = (z.clone(), x.clone());
        Ok(all_vectors(self.field, d).map(move |coords| NilExt { z: z.clone(), x: x.clone(), coords }))
    }

    pub fn quadruple(&self, delta: &NilExt) -> Quadruple {
        let sp = self.space(1, &delta.z, &delta.x);
        let [[e, f], [g, e2]] = sp.element(&delta.coords);
        Quadruple { e, f, g, e2 }
    }

    /// Cone of `δ: Z → X[1]`, i.e. the middle term `Y` of `X → Y → Z → X[1]`.
    ///
    /// `Y` is the 2-periodic complex with `Y^0 = X_0 ⊕ Z_0` (module structure twisted by `e`),
    /// `Y^1 = X_1 ⊕ Z_1` (twisted by `e'`) and differentials `f: Z_0 → X_1`, `g: Z_1 → X_0`,
    /// so `H^0 = (X_0 ⊕ ker f)/im g` and `H^1 = (X_1 ⊕ ker g)/im f`.
    pub fn cone_of_quadruple(&self, z: &NilClass, x: &NilClass, d: &Quadruple) -> Result<NilClass> {
        let h0 = twisted_homology(self.field, &x.h0, &z.h0, &d.e, &d.f, &d.g)?;
        let h1 = twisted_homology(self.field, &x.h1, &z.h1, &d.e2, &d.g, &d.f)?;
        Ok(NilClass::new(h0, h1))
    }

    /// Cone as a function of the coordinates of `δ ∈ Ext^1(z, x)`, with the component bases
    /// built once.
    pub fn cone_map(&self, z: &NilClass, x: &NilClass) -> impl Fn(&[u32]) -> Result<NilClass> + '_ {
        let sp = self.space(1, z, x);
        let (z, x) = (z.clone(), x.clone());
        move |coords| {
            let [[e, f], [g, e2]] = sp.element(coords);
            self.cone_of_quadruple(&z, &x, &Quadruple { e, f, g, e2 })
        }
    }

    fn rank_tensor(&self, i: i64, z: &NilClass, x: &NilClass) -> (Vec<Vec<Vec<u32>>>, usize) {
        let f = self.field;
        let p = (i - 1).rem_euclid(2);
        let d_space = self.space(1, z, x);
        let target = self.space(i, z, x);
        let zz = self.space(p, z, z);
        let xx = self.space(p, x, x);
        let deltas = d_space.basis_elements();
        let sign = if p == 0 { 1 } else { f.neg(1) };
        let mut cols = Vec::new();
        for a in zz.basis_elements() {
            cols.push(deltas.iter().map(|d| target.coords(&compose(f, &d_space, d, &zz, &a, z, x))).collect());
        }
        for b in xx.basis_elements() {
            cols.push(
                deltas
                    .iter()
                    .map(|d| {
                        let c = compose(f, &xx, &b, &d_space, d, z, x);
                        let c = c.map(|row| row.map(|m| m.scale(sign)));
                        target.coords(&c)
                    })
                    .collect(),
            );
        }
        (cols, target.dim())
    }

    fn enumeration_guard(&self, d: usize) -> Result<()> {
        let cap = config::max_dim();
        if d > cap {
            return Err(CyError::Resource { what: "Ext^1 enumeration".into(), needed: d, cap });
        }
        Ok(())
    }

    /// Heart classes `y` with `|y| = |z| + |x|` and their classical Hall numbers `F^y_{z,x}`.
    pub fn classical_expansion(&self, z: &NilClass, x: &NilClass) -> Result<Vec<(NilClass, u64)>> {
        if !z.h1.is_empty() || !x.h1.is_empty() {
            return Err(CyError::InvalidObject("classical Hall numbers need degree-0 stalks".into()));
        }
        let n = z.size() + x.size();
        let mut out = Vec::new();
        for y in Partition::of_size(n) {
            let c = classical_hall_numbers(self.q(), &z.h0, &x.h0, &y)?;
            if c > 0 {
                out.push((NilClass::stalk0(y), c));
            }
        }
        Ok(out)
    }
}

fn rank_from_tensor(field: Field, tensor: &[Vec<Vec<u32>>], coords: &[u32], rows: usize) -> usize {
    let cols: Vec<Vec<u32>> = tensor
        .iter()
        .map(|per_basis| {
            let mut v = vec![0u32; rows];
            for (c, img) in coords.iter().zip(per_basis) {
                if *c != 0 {
                    for (a, b) in v.iter_mut().zip(img) {
                        *a = field.add(*a, field.mul(*c, *b));
                    }
                }
            }
            v
        })
        .collect();
    FqMatrix::from_columns(field, rows, &cols).rank()
}

/// `(X ⊕ ker out) / im inn` inside the extension `[[t_X, ψ], [0, t_Z]]`, where
/// `out: Z → X'` and `inn: Z' → X`.
fn twisted_homology(field: Field, x: &Partition, z: &Partition, psi: &FqMatrix, out: &FqMatrix, inn: &FqMatrix) -> Result<Partition> {
    let (nx, nz) = (x.size(), z.size());
    let n = nx + nz;
    let mut t = FqMatrix::zeros(field, n, n);
    let (tx, tz) = (nilpotent_matrix(field, x), nilpotent_matrix(field, z));
    for r in 0..nx {
        for c in 0..nx {
            t.set(r, c, tx.get(r, c));
        }
        for c in 0..nz {
            t.set(r, nx + c, psi.get(r, c));
        }
    }
    for r in 0..nz {
        for c in 0..nz {
            t.set(nx + r, nx + c, tz.get(r, c));
        }
    }
    let mut sub: Vec<Vec<u32>> = (0..nx)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let ker = if out.rows == 0 { FqMatrix::identity(field, nz) } else { ff_reduce(out).kernel_basis };
    for k in ker.columns() {
        let mut v = vec![0; nx];
        v.extend(k);
        sub.push(v);
    }
    let quo: Vec<Vec<u32>> = inn
        .columns()
        .into_iter()
        .map(|mut c| {
            c.resize(n, 0);
            c
        })
        .collect();
    subquotient_type(&t, &sub, &quo)
}

/// Number of submodules `x' ⊆ y` with `x' ≅ x` and `y/x' ≅ z`, by exhausting `t`-stable
/// subspaces of the Jordan-form module `y`.
pub fn classical_hall_numbers(q: u64, z: &Partition, x: &Partition, y: &Partition) -> Result<u64> {
    if y.size() > MAX_NIL_SIZE {
        return Err(CyError::Resource { what: "classical Hall number".into(), needed: y.size(), cap: MAX_NIL_SIZE });
    }
    count_submodules(Field::new(q)?, z, x, y)
}

impl CategoryModel for RootNilpotent {
    type Class = NilClass;
    type Ext1 = NilExt;

    fn name(&self) -> String {
        format!("root category D2(Nil) over F_{}", self.field.q())
    }

    fn q(&self) -> u64 {
        self.field.q()
    }

    fn cy_dim(&self) -> i64 {
        1
    }

    fn grading_modulus(&self) -> u32 {
        1
    }

    fn zero(&self) -> NilClass {
        NilClass::default()
    }

    /// Stalks of single Jordan blocks `(k)[0]` and `(k)[1]`, `k ≤ 2`.
    fn indecomposables(&self) -> Vec<NilClass> {
        let mut out = Vec::new();
        for k in 1..=2usize.min(self.size_bound) {
            out.push(NilClass::stalk0(Partition::new(vec![k])));
            out.push(NilClass::stalk1(Partition::new(vec![k])));
        }
        out
    }

    fn direct_sum(&self, x: &NilClass, y: &NilClass) -> NilClass {
        NilClass::new(x.h0.union(&y.h0), x.h1.union(&y.h1))
    }

    fn ext_dim(&self, _i: i64, x: &NilClass, y: &NilClass) -> Result<usize> {
        // heart Hom and Ext^1 have equal dimension, so every component counts the same
        let mut d = 0;
        for a in 0..2 {
            for b in 0..2 {
                d += hom_dim(x.part(a), y.part(b));
            }
        }
        Ok(d)
    }

    fn ext1_elements(&self, z: &NilClass, x: &NilClass) -> Result<Vec<NilExt>> {
        self.check(z)?;
        self.check(x)?;
        let d = self.space(1, z, x).dim();
        self.enumeration_guard(d)?;
        Ok(all_vectors(self.field, d).map(|coords| NilExt { z: z.clone(), x: x.clone(), coords }).collect())
    }

    fn cone(&self, delta: &NilExt) -> Result<NilClass> {
        self.cone_of_quadruple(&delta.z, &delta.x, &self.quadruple(delta))
    }

    fn r_rank(&self, i: i64, delta: &NilExt) -> Result<usize> {
        let (tensor, rows) = self.rank_tensor(i, &delta.z, &delta.x);
        Ok(rank_from_tensor(self.field, &tensor, &delta.coords, rows))
    }

    fn aut_order(&self, x: &NilClass) -> Result<u64> {
        let dim_end = self.ext_dim(0, x, x)?;
        let mults = x.h0.multiplicities().into_values().chain(x.h1.multiplicities().into_values());
        aut_order_from_blocks(self.q(), dim_end, mults)
    }

    fn extension_records(&self, z: &NilClass, x: &NilClass) -> Result<Vec<ExtRecord<NilClass>>> {
        let elems = self.ext1_elements(z, x)?;
        let tensors: Vec<_> = (0..2).map(|i| self.rank_tensor(i, z, x)).collect();
        let cone_of = self.cone_map(z, x);
        elems
            .iter()
            .map(|d| {
                let cone = cone_of(&d.coords)?;
                let ranks: Vec<usize> = tensors.iter().map(|(t, rows)| rank_from_tensor(self.field, t, &d.coords, *rows)).collect();
                Ok(ExtRecord { cone, ranks })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stalk(parts: &[usize]) -> NilClass {
        NilClass::stalk0(Partition::new(parts.to_vec()))
    }

    #[test]
    fn simple_stalk_extensions() {
        let model = build_root_nilpotent(2, 6).unwrap();
        let k = stalk(&[1]);
        assert_eq!(model.ext_dim(0, &k, &k).unwrap(), 1);
        assert_eq!(model.ext_dim(1, &k, &k).unwrap(), 1);
        let cones: Vec<NilClass> = model.ext1_elements(&k, &k).unwrap().iter().map(|d| model.cone(d).unwrap()).collect();
        assert_eq!(cones, vec![stalk(&[1, 1]), stalk(&[2])]);
    }

    #[test]
    fn invertible_hom_component_kills_both() {
        let model = build_root_nilpotent(3, 6).unwrap();
        let z = stalk(&[1]);
        let x = NilClass::stalk1(Partition::new(vec![1]));
        for d in model.ext1_elements(&z, &x).unwrap() {
            let c = model.cone(&d).unwrap();
            if d.coords.iter().any(|&v| v != 0) {
                assert_eq!(c, NilClass::default());
            } else {
                assert_eq!(c, NilClass::new(Partition::new(vec![1]), Partition::new(vec![1])));
            }
        }
    }
}
