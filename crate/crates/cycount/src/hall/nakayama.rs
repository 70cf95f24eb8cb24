//! The stable module category of `F_q[x]/(x^m)`, a (-1)-CY category with `Ω² = id`.
//!
//! Objects are multisets of uniserials `M_i = A/x^i`, `1 ≤ i < m`, stored as partitions in
//! Jordan form. A module map `M → N` is determined by where the generators go; the maps
//! `g_i ↦ x^l g_j` with `l ≥ m - s_i` factor through the projective cover of `N`, and the
//! remaining monomials form a basis of the stable `Hom`.

use std::fmt;

use super::jordan::{
    aut_order_from_blocks, generator_coefficient, hom_monomials, monomial_map, nilpotent_matrix, subquotient_type,
    Partition,
};
use super::{CategoryModel, ExtRecord};
use crate::complex::cochains::all_vectors;
use crate::config;
use crate::error::{CyError, Result};
use crate::exact::{Field, FqMatrix};

pub const MAX_NAKAYAMA_M: u32 = 6;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NakayamaClass(pub Partition);

impl NakayamaClass {
    pub fn new(parts: Vec<usize>) -> Self {
        NakayamaClass(Partition::new(parts))
    }
}

impl fmt::Display for NakayamaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.parts().iter().map(|p| format!("M{p}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// An element of `Ext^1(z, x) = \underline{Hom}(Ωz, x)` in the stable monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NakayamaExt {
    pub z: NakayamaClass,
    pub x: NakayamaClass,
    pub coords: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct StableNakayama {
    field: Field,
    m: usize,
}

pub fn build_stable_nakayama(q: u64, m: u32) -> Result<StableNakayama> {
    if !(2..=MAX_NAKAYAMA_M).contains(&m) {
        return Err(CyError::Resource { what: "Nakayama parameter m".into(), needed: m as usize, cap: MAX_NAKAYAMA_M as usize });
    }
    Ok(StableNakayama { field: Field::new(q)?, m: m as usize })
}

impl StableNakayama {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn uniserial(&self, i: usize) -> NakayamaClass {
        NakayamaClass::new(vec![i])
    }

    /// Every class with at most `k` summands.
    pub fn classes_up_to(&self, k: usize) -> Vec<NakayamaClass> {
        fn go(m: usize, k: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<NakayamaClass>) {
            out.push(NakayamaClass::new(cur.clone()));
            if cur.len() == k {
                return;
            }
            for p in 1..=cap.min(m - 1) {
                cur.push(p);
                go(m, k, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(self.m, k, self.m - 1, &mut vec![], &mut out);
        out.sort();
        out
    }

    fn check(&self, x: &NakayamaClass) -> Result<()> {
        if x.0.parts().iter().any(|&p| p >= self.m) {
            return Err(CyError::InvalidObject(format!("{x} has a summand that is projective or too large")));
        }
        Ok(())
    }

    /// `Ω` on objects: `M_i ↦ M_{m-i}`. Block `i` of `p` becomes block `len-1-i` of `Ω p`.
    pub fn omega(&self, p: &Partition) -> Partition {
        Partition::new(p.parts().iter().map(|&s| self.m - s).collect())
    }

    fn omega_pow(&self, p: &Partition, k: i64) -> Partition {
        if k.rem_euclid(2) == 1 {
            self.omega(p)
        } else {
            p.clone()
        }
    }

    /// Monomials `(i, j, l)` of the stable `Hom(src, dst)`.
    pub fn stable_monomials(&self, src: &Partition, dst: &Partition) -> Vec<(usize, usize, usize)> {
        hom_monomials(src, dst).into_iter().filter(|&(i, _, l)| l + src.parts()[i] < self.m).collect()
    }

    pub fn stable_coords(&self, f: &FqMatrix, src: &Partition, dst: &Partition) -> Vec<u32> {
        self.stable_monomials(src, dst)
            .into_iter()
            .map(|(i, j, l)| generator_coefficient(f, src, dst, i, j, l))
            .collect()
    }

    pub fn stable_map(&self, coords: &[u32], src: &Partition, dst: &Partition) -> FqMatrix {
        let f = self.field;
        let mut out = FqMatrix::zeros(f, dst.size(), src.size());
        for (&c, (i, j, l)) in coords.iter().zip(self.stable_monomials(src, dst)) {
            if c != 0 {
                out = out.add(&monomial_map(f, src, dst, i, j, l).scale(c)).expect("same shape");
            }
        }
        out
    }

    pub fn stable_basis(&self, src: &Partition, dst: &Partition) -> Vec<FqMatrix> {
        let f = self.field;
        self.stable_monomials(src, dst).into_iter().map(|(i, j, l)| monomial_map(f, src, dst, i, j, l)).collect()
    }

    /// `Ω` on a module map, by lifting to projective covers and restricting to syzygies.
    pub fn omega_map(&self, fmap: &FqMatrix, src: &Partition, dst: &Partition) -> FqMatrix {
        let (osrc, odst) = (self.omega(src), self.omega(dst));
        let (ks, kd) = (src.len(), dst.len());
        let mut out = FqMatrix::zeros(self.field, odst.size(), osrc.size());
        for (i, j, l) in hom_monomials(src, dst) {
            let c = generator_coefficient(fmap, src, dst, i, j, l);
            let (si, sj) = (src.parts()[i], dst.parts()[j]);
            if c == 0 || l + si >= self.m {
                continue;
            }
            let mono = monomial_map(self.field, &osrc, &odst, ks - 1 - i, kd - 1 - j, l + si - sj);
            out = out.add(&mono.scale(c)).expect("same shape");
        }
        out
    }

    /// Yoneda product of `beta ∈ Ext^j(y, w)` and `alpha ∈ Ext^i(x, y)`: `β ∘ Ω^j(α)`.
    fn yoneda(&self, beta: &FqMatrix, j: i64, alpha: &FqMatrix, i: i64, x: &Partition, y: &Partition) -> FqMatrix {
        let a = if j.rem_euclid(2) == 1 {
            self.omega_map(alpha, &self.omega_pow(x, i), y)
        } else {
            alpha.clone()
        };
        beta.mul(&a).expect("composable")
    }

    /// Middle term of the triangle `x → C → z → Ω^{-1}x` for `δ: Ωz → x`: the pushout of the
    /// projective cover sequence `0 → Ωz → P(z) → z → 0` along `δ`, projective summands dropped.
    pub fn cone_of_map(&self, z: &Partition, x: &Partition, delta: &FqMatrix) -> Result<NakayamaClass> {
        let f = self.field;
        let m = self.m;
        let oz = self.omega(z);
        let k = z.len();
        let nx = x.size();
        let n = nx + k * m;
        let cover = Partition::new(vec![m; k]);
        let mut t = FqMatrix::zeros(f, n, n);
        let tx = nilpotent_matrix(f, x);
        let tp = nilpotent_matrix(f, &cover);
        for r in 0..nx {
            for c in 0..nx {
                t.set(r, c, tx.get(r, c));
            }
        }
        for r in 0..k * m {
            for c in 0..k * m {
                t.set(nx + r, nx + c, tp.get(r, c));
            }
        }
        let offs = oz.offsets();
        let mut rels = Vec::new();
        for (i, &si) in z.parts().iter().enumerate() {
            let b = k - 1 - i;
            for l in 0..oz.parts()[b] {
                let w = offs[b] + l;
                let mut v = delta.column(w);
                v.resize(n, 0);
                v[nx + i * m + si + l] = f.neg(1);
                rels.push(v);
            }
        }
        let all: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let e = subquotient_type(&t, &all, &rels)?;
        Ok(NakayamaClass::new(e.parts().iter().copied().filter(|&p| p != m).collect()))
    }

    fn ext_basis_maps(&self, z: &Partition, x: &Partition) -> Vec<FqMatrix> {
        self.stable_basis(&self.omega(z), x)
    }

    /// Images of `(a, b) ↦ δa + (-1)^{i-1} bδ` for the basis elements `a` and `b`, as linear
    /// functions of `δ`: entry `[col][k]` is the image for `δ = k`-th basis vector.
    fn rank_tensor(&self, i: i64, z: &Partition, x: &Partition) -> Vec<Vec<Vec<u32>>> {
        let f = self.field;
        let p = (i - 1).rem_euclid(2);
        let target_src = self.omega_pow(z, i);
        let deltas = self.ext_basis_maps(z, x);
        let sign = if p == 0 { 1 } else { f.neg(1) };
        let mut cols = Vec::new();
        for a in self.stable_basis(&self.omega_pow(z, p), z) {
            cols.push(
                deltas
                    .iter()
                    .map(|d| self.stable_coords(&self.yoneda(d, 1, &a, p, z, z), &target_src, x))
                    .collect(),
            );
        }
        for b in self.stable_basis(&self.omega_pow(x, p), x) {
            cols.push(
                deltas
                    .iter()
                    .map(|d| {
                        let img = self.yoneda(&b, p, d, 1, z, x).scale(sign);
                        self.stable_coords(&img, &target_src, x)
                    })
                    .collect(),
            );
        }
        cols
    }

    fn rank_from_tensor(&self, tensor: &[Vec<Vec<u32>>], coords: &[u32], rows: usize) -> usize {
        let f = self.field;
        let cols: Vec<Vec<u32>> = tensor
            .iter()
            .map(|per_basis| {
                let mut v = vec![0u32; rows];
                for (c, img) in coords.iter().zip(per_basis) {
                    if *c != 0 {
                        for (a, b) in v.iter_mut().zip(img) {
                            *a = f.add(*a, f.mul(*c, *b));
                        }
                    }
                }
                v
            })
            .collect();
        FqMatrix::from_columns(f, rows, &cols).rank()
    }

    fn ext1_dim(&self, z: &NakayamaClass, x: &NakayamaClass) -> usize {
        self.stable_monomials(&self.omega(&z.0), &x.0).len()
    }

    fn enumeration_guard(&self, d: usize) -> Result<()> {
        let cap = config::max_dim();
        if d > cap {
            return Err(CyError::Resource { what: "Ext^1 enumeration".into(), needed: d, cap });
        }
        Ok(())
    }
}

impl CategoryModel for StableNakayama {
    type Class = NakayamaClass;
    type Ext1 = NakayamaExt;

    fn name(&self) -> String {
        format!("stable Nakayama F_{}[x]/x^{}", self.field.q(), self.m)
    }

    fn q(&self) -> u64 {
        self.field.q()
    }

    fn cy_dim(&self) -> i64 {
        -1
    }

    fn grading_modulus(&self) -> u32 {
        1
    }

    fn zero(&self) -> NakayamaClass {
        NakayamaClass::default()
    }

    fn indecomposables(&self) -> Vec<NakayamaClass> {
        (1..self.m).map(|i| self.uniserial(i)).collect()
    }

    fn direct_sum(&self, x: &NakayamaClass, y: &NakayamaClass) -> NakayamaClass {
        NakayamaClass(x.0.union(&y.0))
    }

    fn ext_dim(&self, i: i64, x: &NakayamaClass, y: &NakayamaClass) -> Result<usize> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.stable_monomials(&self.omega_pow(&x.0, i), &y.0).len())
    }

    fn ext1_elements(&self, z: &NakayamaClass, x: &NakayamaClass) -> Result<Vec<NakayamaExt>> {
        self.check(z)?;
        self.check(x)?;
        let d = self.ext1_dim(z, x);
        self.enumeration_guard(d)?;
        Ok(all_vectors(self.field, d)
            .map(|coords| NakayamaExt { z: z.clone(), x: x.clone(), coords })
            .collect())
    }

    fn cone(&self, delta: &NakayamaExt) -> Result<NakayamaClass> {
        let map = self.stable_map(&delta.coords, &self.omega(&delta.z.0), &delta.x.0);
        self.cone_of_map(&delta.z.0, &delta.x.0, &map)
    }

    fn r_rank(&self, i: i64, delta: &NakayamaExt) -> Result<usize> {
        let (z, x) = (&delta.z.0, &delta.x.0);
        let tensor = self.rank_tensor(i, z, x);
        let rows = self.stable_monomials(&self.omega_pow(z, i), x).len();
        Ok(self.rank_from_tensor(&tensor, &delta.coords, rows))
    }

    fn aut_order(&self, x: &NakayamaClass) -> Result<u64> {
        self.check(x)?;
        let dim_end = self.ext_dim(0, x, x)?;
        aut_order_from_blocks(self.q(), dim_end, x.0.multiplicities().into_values())
    }

    fn extension_records(&self, z: &NakayamaClass, x: &NakayamaClass) -> Result<Vec<ExtRecord<NakayamaClass>>> {
        let elems = self.ext1_elements(z, x)?;
        let tensors: Vec<_> = (0..2).map(|i| self.rank_tensor(i, &z.0, &x.0)).collect();
        let rows: Vec<usize> = (0..2).map(|i| self.stable_monomials(&self.omega_pow(&z.0, i), &x.0).len()).collect();
        let oz = self.omega(&z.0);
        elems
            .iter()
            .map(|d| {
                let map = self.stable_map(&d.coords, &oz, &x.0);
                let cone = self.cone_of_map(&z.0, &x.0, &map)?;
                let ranks = (0..2).map(|i| self.rank_from_tensor(&tensors[i], &d.coords, rows[i])).collect();
                Ok(ExtRecord { cone, ranks })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_hom_dimensions() {
        let model = build_stable_nakayama(2, 5).unwrap();
        for a in 1..5 {
            for b in 1..5 {
                let d = model.ext_dim(0, &model.uniserial(a), &model.uniserial(b)).unwrap();
                assert_eq!(d, a.min(b).min(5 - a).min(5 - b), "M{a} M{b}");
            }
        }
    }

    #[test]
    fn omega_is_an_involution_on_maps() {
        let model = build_stable_nakayama(3, 4).unwrap();
        let (x, y) = (Partition::new(vec![3, 1]), Partition::new(vec![2, 1]));
        for b in model.stable_basis(&x, &y) {
            let once = model.omega_map(&b, &x, &y);
            let twice = model.omega_map(&once, &model.omega(&x), &model.omega(&y));
            assert_eq!(model.stable_coords(&twice, &x, &y), model.stable_coords(&b, &x, &y));
        }
    }

    #[test]
    fn split_cone() {
        let model = build_stable_nakayama(2, 4).unwrap();
        let (z, x) = (model.uniserial(1), NakayamaClass::new(vec![3, 2]));
        let zero = NakayamaExt { z: z.clone(), x: x.clone(), coords: vec![0; model.ext1_dim(&z, &x)] };
        assert_eq!(model.cone(&zero).unwrap(), NakayamaClass::new(vec![3, 2, 1]));
    }
}
