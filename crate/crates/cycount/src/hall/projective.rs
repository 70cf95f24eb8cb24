//! Independent cone and `Ext` computations for the root category via free complexes over
//! `R = F_q[[t]]`.
//!
//! An object `(H^0, H^1) = (λ, μ)` is modelled by the 2-periodic complex with
//! `P^0 = G_0 ⊕ Q_1`, `P^1 = Q_0 ⊕ G_1`, where `d: Q_0 → G_0` is `diag t^λ` and
//! `d: Q_1 → G_1` is `diag t^μ`. All homology is torsion, so it can be read off the Smith
//! invariant factors of the differentials, which only needs power series modulo `t^N` once
//! `N` exceeds every invariant factor.

use super::jordan::{relation_image, Partition};
use super::checks::CheckReport;
use super::nilpotent::{NilClass, Quadruple, RootNilpotent};
use super::CategoryModel;
use crate::error::{CyError, Result};
use crate::exact::{Field, FqMatrix};

/// Truncation order that is safe for objects `z` and `x`: the homology of a cone has
/// exponent at most the sum of the exponents of its ends.
pub fn default_truncation(z: &NilClass, x: &NilClass) -> usize {
    let exp = |c: &NilClass| c.h0.largest().max(c.h1.largest());
    exp(z) + exp(x) + 2
}

/// Matrix over `R / t^N`, entry `(r, c)` stored as the coefficients `data[(r*cols + c)*N ..][..N]`.
#[derive(Clone, Debug)]
struct SeriesMatrix {
    field: Field,
    n: usize,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl SeriesMatrix {
    fn zeros(field: Field, n: usize, rows: usize, cols: usize) -> Self {
        SeriesMatrix { field, n, rows, cols, data: vec![0; rows * cols * n] }
    }

    fn at(&self, r: usize, c: usize) -> &[u32] {
        let k = (r * self.cols + c) * self.n;
        &self.data[k..k + self.n]
    }

    fn at_mut(&mut self, r: usize, c: usize) -> &mut [u32] {
        let k = (r * self.cols + c) * self.n;
        &mut self.data[k..k + self.n]
    }

    fn diag_powers(field: Field, n: usize, exps: &[usize]) -> Self {
        let mut m = Self::zeros(field, n, exps.len(), exps.len());
        for (i, &e) in exps.iter().enumerate() {
            if e < n {
                m.at_mut(i, i)[e] = 1;
            }
        }
        m
    }

    fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn mul(&self, o: &SeriesMatrix) -> SeriesMatrix {
        assert_eq!(self.cols, o.rows, "series matrix shapes");
        let f = self.field;
        let mut out = Self::zeros(f, self.n, self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.iter().all(|&v| v == 0) {
                    continue;
                }
                for c in 0..o.cols {
                    let prod = series_mul(f, a, o.at(k, c));
                    let slot = out.at_mut(r, c);
                    for (s, p) in slot.iter_mut().zip(prod) {
                        *s = f.add(*s, p);
                    }
                }
            }
        }
        out
    }

    fn neg(&self) -> SeriesMatrix {
        let f = self.field;
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v = f.neg(*v);
        }
        out
    }

    /// Left division by `diag t^exps`; every row `i` must be divisible by `t^{exps[i]}`.
    fn shift_rows_down(&self, exps: &[usize]) -> Result<SeriesMatrix> {
        let mut out = Self::zeros(self.field, self.n, self.rows, self.cols);
        for (r, &e) in exps.iter().enumerate().take(self.rows) {
            for c in 0..self.cols {
                let src = self.at(r, c).to_vec();
                if src[..e.min(self.n)].iter().any(|&v| v != 0) {
                    return Err(CyError::Internal("lift is not divisible by the relation".into()));
                }
                let dst = out.at_mut(r, c);
                for k in e..self.n {
                    dst[k - e] = src[k];
                }
            }
        }
        Ok(out)
    }

    /// Block matrix from a grid of blocks with consistent row and column sizes.
    fn blocks(field: Field, n: usize, grid: &[Vec<&SeriesMatrix>]) -> SeriesMatrix {
        let rows: usize = grid.iter().map(|row| row[0].rows).sum();
        let cols: usize = grid[0].iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, n, rows, cols);
        let mut r0 = 0;
        for row in grid {
            let mut c0 = 0;
            for b in row {
                for r in 0..b.rows {
                    for c in 0..b.cols {
                        out.at_mut(r0 + r, c0 + c).copy_from_slice(b.at(r, c));
                    }
                }
                c0 += b.cols;
            }
            r0 += row[0].rows;
        }
        out
    }

    /// Valuations of the invariant factors below `N`; the number returned is the rank.
    ///
    /// Pivots on an entry of least valuation and clears its column by row operations. The
    /// rest of the pivot row could then be cleared by column operations touching nothing
    /// else, so pivot row and column are simply dropped.
    fn invariant_valuations(mut self) -> Result<Vec<usize>> {
        let f = self.field;
        let n = self.n;
        let mut live_rows: Vec<usize> = (0..self.rows).collect();
        let mut live_cols: Vec<usize> = (0..self.cols).collect();
        let mut prow = vec![0u32; self.cols * n];
        let mut factor = vec![0u32; n];
        let mut out = Vec::new();
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            'search: for &r in &live_rows {
                for &c in &live_cols {
                    let v = valuation(self.at(r, c));
                    if v < n && best.map_or(true, |(bv, _, _)| v < bv) {
                        best = Some((v, r, c));
                        if v == 0 {
                            break 'search;
                        }
                    }
                }
            }
            let Some((v, pr, pc)) = best else { break };
            let unit_inv = series_inverse(f, &self.at(pr, pc)[v..])?;
            for &c in &live_cols {
                prow[c * n..(c + 1) * n].copy_from_slice(self.at(pr, c));
            }
            for &r in &live_rows {
                if r == pr {
                    continue;
                }
                let a = self.at(r, pc);
                if valuation(a) >= n {
                    continue;
                }
                // factor = (a / t^v) * unit^{-1}, exact because v is the least valuation
                factor.iter_mut().for_each(|x| *x = 0);
                for (i, &ai) in a[v..].iter().enumerate() {
                    if ai == 0 {
                        continue;
                    }
                    for (j, &u) in unit_inv.iter().enumerate().take(n - v - i) {
                        factor[i + j] = f.add(factor[i + j], f.mul(ai, u));
                    }
                }
                for &c in &live_cols {
                    let p = &prow[c * n..(c + 1) * n];
                    let slot = self.at_mut(r, c);
                    for (i, &fi) in factor.iter().enumerate() {
                        if fi == 0 {
                            continue;
                        }
                        for (j, &pj) in p.iter().enumerate().take(n - i) {
                            slot[i + j] = f.sub(slot[i + j], f.mul(fi, pj));
                        }
                    }
                }
            }
            out.push(v);
            live_rows.retain(|&r| r != pr);
            live_cols.retain(|&c| c != pc);
        }
        Ok(out)
    }
}

fn valuation(a: &[u32]) -> usize {
    a.iter().position(|&v| v != 0).unwrap_or(a.len())
}

fn series_mul(f: Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().min(b.len());
    let mut out = vec![0u32; n];
    for (i, &x) in a.iter().enumerate().take(n) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n - i) {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

fn series_inverse(f: Field, a: &[u32]) -> Result<Vec<u32>> {
    let n = a.len();
    let a0 = f.inv(a[0])?;
    let mut inv = vec![0u32; n];
    inv[0] = a0;
    for k in 1..n {
        let mut s = 0;
        for j in 1..=k {
            s = f.add(s, f.mul(a[j], inv[k - j]));
        }
        inv[k] = f.mul(f.neg(s), a0);
    }
    Ok(inv)
}

/// Polynomial lift of a map of Jordan-form modules given column by column at the block
/// generators of `src`: entry `(j, i)` is `Σ_l v_i[e_{j,l}] t^l`.
fn lift_columns(field: Field, n: usize, cols: &[Vec<u32>], dst: &Partition) -> SeriesMatrix {
    let mut m = SeriesMatrix::zeros(field, n, dst.len(), cols.len());
    let offs = dst.offsets();
    for (i, v) in cols.iter().enumerate() {
        for (j, (&s, &o)) in dst.parts().iter().zip(&offs).enumerate() {
            for l in 0..s.min(n) {
                m.at_mut(j, i)[l] = v[o + l];
            }
        }
    }
    m
}

fn lift_hom(field: Field, n: usize, f: &FqMatrix, src: &Partition, dst: &Partition) -> SeriesMatrix {
    let cols: Vec<Vec<u32>> = src.offsets().into_iter().map(|o| f.column(o)).collect();
    lift_columns(field, n, &cols, dst)
}

fn lift_ext(field: Field, n: usize, psi: &FqMatrix, src: &Partition, dst: &Partition) -> SeriesMatrix {
    let cols: Vec<Vec<u32>> = (0..src.len()).map(|i| relation_image(field, psi, src, dst, i)).collect();
    lift_columns(field, n, &cols, dst)
}

/// The free model of one object: sizes and differential blocks.
struct FreeModel {
    lam: Vec<usize>,
    mu: Vec<usize>,
    d0: SeriesMatrix,
    d1: SeriesMatrix,
}

impl FreeModel {
    fn new(field: Field, n: usize, x: &NilClass) -> Self {
        let (lam, mu) = (x.h0.parts().to_vec(), x.h1.parts().to_vec());
        FreeModel {
            d0: SeriesMatrix::diag_powers(field, n, &lam),
            d1: SeriesMatrix::diag_powers(field, n, &mu),
            lam,
            mu,
        }
    }

    /// `d^0: P^0 = G_0 ⊕ Q_1 → P^1 = Q_0 ⊕ G_1`.
    fn diff0(&self, field: Field, n: usize) -> SeriesMatrix {
        let (a, b) = (self.lam.len(), self.mu.len());
        let z_aa = SeriesMatrix::zeros(field, n, a, a);
        let z_ab = SeriesMatrix::zeros(field, n, a, b);
        let z_ba = SeriesMatrix::zeros(field, n, b, a);
        SeriesMatrix::blocks(field, n, &[vec![&z_aa, &z_ab], vec![&z_ba, &self.d1]])
    }

    /// `d^1: P^1 = Q_0 ⊕ G_1 → P^0 = G_0 ⊕ Q_1`.
    fn diff1(&self, field: Field, n: usize) -> SeriesMatrix {
        let (a, b) = (self.lam.len(), self.mu.len());
        let z_ab = SeriesMatrix::zeros(field, n, a, b);
        let z_ba = SeriesMatrix::zeros(field, n, b, a);
        let z_bb = SeriesMatrix::zeros(field, n, b, b);
        SeriesMatrix::blocks(field, n, &[vec![&self.d0, &z_ab], vec![&z_ba, &z_bb]])
    }

    fn rank(&self) -> usize {
        self.lam.len() + self.mu.len()
    }
}

fn partition_of(vals: Vec<usize>) -> Partition {
    Partition::new(vals.into_iter().filter(|&v| v > 0).collect())
}

fn check_truncation(n: usize, z: &NilClass, x: &NilClass) -> Result<()> {
    if n < default_truncation(z, x) {
        return Err(CyError::Unsupported(format!("truncation order {n} is too small for {z} and {x}")));
    }
    Ok(())
}

/// Sparse nonzero entries `(index, value)` of a flat coefficient array.
fn sparse(m: &SeriesMatrix) -> Vec<(usize, u32)> {
    m.data.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i, v)).collect()
}

/// Cocone differentials `d_K` of lifted chain maps `φ: P_Z → P_X[1]` for a fixed pair, as a
/// constant part plus a linear combination of the lifts of given basis quadruples.
///
/// `K^i = P_X^i ⊕ P_Z^i` with `d_K = [[d_X, -φ], [0, d_Z]]`, so `H^*(K)` is the cone `Y` of the
/// triangle `X → Y → Z → X[1]`.
pub struct CoconeFamily {
    field: Field,
    base: [SeriesMatrix; 2],
    terms: Vec<[Vec<(usize, u32)>; 2]>,
    rank: usize,
}

impl CoconeFamily {
    pub fn new(q: u64, n: usize, z: &NilClass, x: &NilClass, basis: &[Quadruple]) -> Result<Self> {
        let field = Field::new(q)?;
        check_truncation(n, z, x)?;
        let (pz, px) = (FreeModel::new(field, n, z), FreeModel::new(field, n, x));
        let (dx0, dx1, dz0, dz1) = (px.diff0(field, n), px.diff1(field, n), pz.diff0(field, n), pz.diff1(field, n));
        let zero_xz = SeriesMatrix::zeros(field, n, px.rank(), pz.rank());
        let zero_zx = SeriesMatrix::zeros(field, n, pz.rank(), px.rank());
        let base = [
            SeriesMatrix::blocks(field, n, &[vec![&dx0, &zero_xz], vec![&zero_zx, &dz0]]),
            SeriesMatrix::blocks(field, n, &[vec![&dx1, &zero_xz], vec![&zero_zx, &dz1]]),
        ];
        let (zl, zm, xl, xm) = (z.h0.len(), z.h1.len(), x.h0.len(), x.h1.len());
        let mut terms = Vec::with_capacity(basis.len());
        for d in basis {
            let f = lift_hom(field, n, &d.f, &z.h0, &x.h1).neg();
            let gm = lift_hom(field, n, &d.g, &z.h1, &x.h0).neg();
            let e = lift_ext(field, n, &d.e, &z.h0, &x.h0);
            let e2 = lift_ext(field, n, &d.e2, &z.h1, &x.h1);
            // the remaining two components are forced by the chain map condition
            let a2 = gm.mul(&pz.d1).shift_rows_down(&px.lam)?.neg();
            let b1 = f.mul(&pz.d0).shift_rows_down(&px.mu)?.neg();
            // φ^0: G0_Z ⊕ Q1_Z → Q0_X ⊕ G1_X and φ^1: Q0_Z ⊕ G1_Z → G0_X ⊕ Q1_X
            let zero_0 = SeriesMatrix::zeros(field, n, xl, zl);
            let phi0 = SeriesMatrix::blocks(field, n, &[vec![&zero_0, &a2], vec![&f, &e2]]);
            let zero_1 = SeriesMatrix::zeros(field, n, xm, zm);
            let phi1 = SeriesMatrix::blocks(field, n, &[vec![&e, &gm], vec![&b1, &zero_1]]);
            let zx = SeriesMatrix::zeros(field, n, px.rank(), px.rank());
            let zz = SeriesMatrix::zeros(field, n, pz.rank(), pz.rank());
            let l0 = SeriesMatrix::blocks(field, n, &[vec![&zx, &phi0.neg()], vec![&zero_zx, &zz]]);
            let l1 = SeriesMatrix::blocks(field, n, &[vec![&zx, &phi1.neg()], vec![&zero_zx, &zz]]);
            // d_K^2 is linear in the lift since the upper-right blocks square to zero
            let mut sq = base[1].mul(&l0);
            let other = l1.mul(&base[0]);
            for (a, b) in sq.data.iter_mut().zip(&other.data) {
                *a = field.add(*a, *b);
            }
            if !sq.is_zero() {
                return Err(CyError::Internal("lifted map is not a chain map".into()));
            }
            terms.push([sparse(&l0), sparse(&l1)]);
        }
        Ok(CoconeFamily { field, base, terms, rank: px.rank() + pz.rank() })
    }

    fn differentials(&self, coords: &[u32]) -> [SeriesMatrix; 2] {
        let f = self.field;
        let mut d = [self.base[0].clone(), self.base[1].clone()];
        for (&c, term) in coords.iter().zip(&self.terms) {
            if c == 0 {
                continue;
            }
            for (m, entries) in d.iter_mut().zip(term) {
                for &(i, v) in entries {
                    m.data[i] = f.add(m.data[i], f.mul(c, v));
                }
            }
        }
        d
    }

    /// Homology `(H^0, H^1)` of the cocone of `Σ coords_k · basis_k`.
    pub fn cone(&self, coords: &[u32]) -> Result<NilClass> {
        let [d0, d1] = self.differentials(coords);
        let v1 = d1.invariant_valuations()?;
        let v0 = d0.invariant_valuations()?;
        if v0.len() + v1.len() != self.rank {
            return Err(CyError::Internal("cocone homology is not torsion at this truncation".into()));
        }
        // H^0 = ker d^0 / im d^1 is the torsion of coker d^1, and likewise for H^1
        Ok(NilClass::new(partition_of(v1), partition_of(v0)))
    }
}

/// Cone of `δ = (e, f, g, e')` computed from the cocone of the lifted chain map
/// `φ: P_Z → P_X[1]`. Independent of the subquotient construction used by the model.
pub fn cone_oracle_projective_model(q: u64, n: usize, z: &NilClass, x: &NilClass, d: &Quadruple) -> Result<NilClass> {
    CoconeFamily::new(q, n, z, x, std::slice::from_ref(d))?.cone(&[1])
}

/// Differential `D(φ)^i = d_T^{i+k} φ^i - (-1)^k φ^{i+1} d_S^i` on `Hom^k(S, T)`, with
/// `φ` vectorised as `coord(i, r, c) = i·|T|·|S| + c·|T| + r`.
fn hom_differential(field: Field, n: usize, ds: &[SeriesMatrix; 2], dt: &[SeriesMatrix; 2], k: usize) -> SeriesMatrix {
    let (rs, rt) = (ds[0].rows, dt[0].rows);
    let coord = |i: usize, r: usize, c: usize| i * rt * rs + c * rt + r;
    let dim = 2 * rt * rs;
    let mut m = SeriesMatrix::zeros(field, n, dim, dim);
    let sign = if k % 2 == 0 { field.neg(1) } else { 1 };
    for i in 0..2 {
        let dti = &dt[(i + k) % 2];
        let dsi = &ds[i];
        for r in 0..rt {
            for c in 0..rs {
                let out = coord(i, r, c);
                for s in 0..rt {
                    let a = dti.at(r, s).to_vec();
                    let slot = m.at_mut(out, coord(i, s, c));
                    for (x, y) in slot.iter_mut().zip(a) {
                        *x = field.add(*x, y);
                    }
                }
                for s in 0..rs {
                    let a = dsi.at(s, c).to_vec();
                    let slot = m.at_mut(out, coord((i + 1) % 2, r, s));
                    for (x, y) in slot.iter_mut().zip(a) {
                        *x = field.add(*x, field.mul(sign, y));
                    }
                }
            }
        }
    }
    m
}

/// `dim Ext^p(z, x)` from the Hom complex between the free models.
pub fn ext_dim_projective_model(q: u64, n: usize, p: i64, z: &NilClass, x: &NilClass) -> Result<usize> {
    let field = Field::new(q)?;
    check_truncation(n, z, x)?;
    let (pz, px) = (FreeModel::new(field, n, z), FreeModel::new(field, n, x));
    let dz = [pz.diff0(field, n), pz.diff1(field, n)];
    let dx = [px.diff0(field, n), px.diff1(field, n)];
    let dim = 2 * pz.rank() * px.rank();
    let k = p.rem_euclid(2) as usize;
    let vp = hom_differential(field, n, &dz, &dx, (k + 1) % 2).invariant_valuations()?;
    let vc = hom_differential(field, n, &dz, &dx, k).invariant_valuations()?;
    if vp.len() + vc.len() != dim {
        return Err(CyError::Internal("Hom complex homology is not torsion at this truncation".into()));
    }
    Ok(vp.into_iter().sum())
}

/// Compares the model's `Ext` dimensions and cones with the free-complex computations on
/// every pair of classes within `bound` (per degree) and every `δ ∈ Ext^1(z, x)`.
pub fn cone_oracle_sweep(model: &RootNilpotent, bound: &Partition) -> Result<CheckReport> {
    let q = model.q();
    let classes = model.classes_within(bound);
    let mut rep = CheckReport::named("cone oracle");
    for z in &classes {
        for x in &classes {
            let n = default_truncation(z, x);
            for p in 0..2 {
                let (a, b) = (model.ext_dim(p, z, x)?, ext_dim_projective_model(q, n, p, z, x)?);
                if a != b {
                    rep.failures.push(format!("dim Ext^{p}({z}, {x}): model {a}, free complexes {b}"));
                }
            }
            if !rep.failures.is_empty() {
                return Ok(rep);
            }
            let family = CoconeFamily::new(q, n, z, x, &model.ext1_basis(z, x))?;
            let cone_of = model.cone_map(z, x);
            for d in model.ext1_iter(z, x)? {
                let (a, b) = (cone_of(&d.coords)?, family.cone(&d.coords)?);
                rep.cases += 1;
                if a != b {
                    rep.failures.push(format!("cone of {:?} in Ext^1({z}, {x}): model {a}, free complexes {b}", d.coords));
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_inverse_roundtrip() {
        let f = Field::new(3).unwrap();
        let a = vec![2, 1, 0, 2, 1];
        let inv = series_inverse(f, &a).unwrap();
        assert_eq!(series_mul(f, &a, &inv), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn smith_valuations() {
        let f = Field::new(2).unwrap();
        let m = SeriesMatrix::diag_powers(f, 6, &[2, 0, 3]);
        let mut v = m.invariant_valuations().unwrap();
        v.sort();
        assert_eq!(v, vec![0, 2, 3]);
    }
}
