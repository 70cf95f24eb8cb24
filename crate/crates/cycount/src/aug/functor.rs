//! The counting functor on tangle words and its comparison with the ruling functor.

use serde::Serialize;

use super::basic::{enumerate_basic_objects, BasicObject};
use crate::complex::points::enumerate_set_rulings;
use crate::error::{CyError, Result};
use crate::exact::{laurent_eval_z, QuadExt};
use crate::tangle::{ruling_transfer, BasicTangle, TangleWord, TransferMatrix};

/// `|Aut ∂0x|^{1/2} |Aut ∂1x|^{1/2} / |Aut x| · q^{γ/2}`, before the boundary normalization.
pub fn object_weight(o: &BasicObject, q: u64) -> Result<QuadExt> {
    let num = QuadExt::sqrt_of_int(q, o.aut0)?.mul(&QuadExt::sqrt_of_int(q, o.aut1)?);
    let w = num.div(&QuadExt::from_int(q, o.aut as i64))?;
    Ok(w.mul(&QuadExt::q_half_pow(q, o.gamma)))
}

/// The matrix of one letter: entry `(ρ0, ρ1)` is `q^{-|∂1|/4}` times the summed object weights.
pub fn letter_z_transfer(t: &BasicTangle, q: u64) -> Result<TransferMatrix<QuadExt>> {
    let rows = enumerate_set_rulings(&t.left);
    let cols = enumerate_set_rulings(&t.right);
    let mut m = TransferMatrix::zeros(rows, cols.clone());
    let n1 = t.right.len() as i64;
    if n1 % 2 != 0 || t.left.len() % 2 != 0 {
        return Ok(m);
    }
    let norm = QuadExt::q_half_pow(q, -n1 / 2);
    for rho1 in &cols {
        for o in enumerate_basic_objects(t, rho1, q)? {
            m.accumulate_by(&o.rho0, rho1, object_weight(&o, q)?.mul(&norm));
        }
    }
    Ok(m)
}

/// `Z(w)` over `F_q`: the product of the letter matrices.
pub fn z_transfer(w: &TangleWord, q: u64) -> Result<TransferMatrix<QuadExt>> {
    QuadExt::checked_zero(q)?;
    let start = TransferMatrix::identity(enumerate_set_rulings(&w.left), QuadExt::one(q));
    w.letters.iter().try_fold(start, |acc, t| Ok(acc.compose(&letter_z_transfer(t, q)?)))
}

/// The weighted count of objects of a closed link.
pub fn link_invariant(w: &TangleWord, q: u64) -> Result<QuadExt> {
    if !w.is_closed() {
        return Err(CyError::Unsupported("link invariant needs a closed word".into()));
    }
    Ok(z_transfer(w, q)?.scalar().cloned().unwrap_or_else(|| QuadExt::zero(q)))
}

/// `λ_{∂0}^{-1} R(z) λ_{∂1}` with `λ_S = (q-1)^{-|S|/4}`, i.e. `R(z)` scaled by
/// `(q-1)^{(|∂0| - |∂1|)/4}`.
pub fn predicted_z_transfer(w: &TangleWord, q: u64) -> Result<TransferMatrix<QuadExt>> {
    let r = ruling_transfer(w);
    let diff = w.left.len() as i64 - w.right().len() as i64;
    let scale = if diff % 2 == 0 { QuadExt::q1_half_pow(q, diff / 2) } else { QuadExt::zero(q) };
    let mut err = None;
    let out = r.map(|p| match laurent_eval_z(p, q) {
        Ok(v) => v.mul(&scale),
        Err(e) => {
            err.get_or_insert(e);
            QuadExt::zero(q)
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub row: String,
    pub col: String,
    pub counted: String,
    pub predicted: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub q: u64,
    pub entries: usize,
    pub mismatch: Option<Mismatch>,
    /// For closed words, the link invariant and the evaluated ruling polynomial.
    pub closed: Option<(String, String)>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none() && self.closed.as_ref().map_or(true, |(a, b)| a == b)
    }
}

/// Entrywise comparison of the counted and predicted matrices for each `q`.
pub fn verify_main_theorem(w: &TangleWord, qs: &[u64]) -> Result<Vec<TheoremReport>> {
    let mut out = Vec::new();
    for &q in qs {
        let z = z_transfer(w, q)?;
        let p = predicted_z_transfer(w, q)?;
        let zero = QuadExt::zero(q);
        let mut mismatch = None;
        'scan: for (i, r0) in z.rows.iter().enumerate() {
            for (j, r1) in z.cols.iter().enumerate() {
                let a = z.get(i, j).unwrap_or(&zero);
                let b = p.get(i, j).unwrap_or(&zero);
                if a != b {
                    mismatch = Some(Mismatch {
                        row: r0.to_string(),
                        col: r1.to_string(),
                        counted: a.to_string(),
                        predicted: b.to_string(),
                    });
                    break 'scan;
                }
            }
        }
        let closed = if w.is_closed() {
            let a = z.scalar().cloned().unwrap_or_else(|| zero.clone());
            let b = p.scalar().cloned().unwrap_or_else(|| zero.clone());
            Some((a.to_string(), b.to_string()))
        } else {
            None
        };
        out.push(TheoremReport { q, entries: z.rows.len() * z.cols.len(), mismatch, closed });
    }
    Ok(out)
}
